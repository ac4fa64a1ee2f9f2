#include "alcove/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace alcove {

Poly Poly::constant(int nvars, const Rat& c) {
    Poly p(nvars);
    p.add_term(Expo(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

Poly Poly::var(int nvars, int i) {
    Poly p(nvars);
    Expo e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, Rat(1));
    return p;
}

Poly Poly::monomial(Expo e, const Rat& c) {
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

Poly Poly::homogeneous_part(int d) const {
    Poly p(nvars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == d) p.terms_[e] = c;
    return p;
}

Rat Poly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly p(nvars_);
    for (const auto& [e, c] : terms_) p.terms_[e] = -c;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly p(*this);
    p += o;
    return p;
}

Poly Poly::operator-(const Poly& o) const {
    Poly p(*this);
    p -= o;
    return p;
}

Poly Poly::operator*(const Poly& o) const {
    Poly p(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Expo e(e1);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            p.add_term(e, c1 * c2);
        }
    return p;
}

Poly Poly::operator*(const Rat& c) const {
    Poly p(nvars_);
    if (c == 0) return p;
    for (const auto& [e, k] : terms_) p.terms_[e] = k * c;
    return p;
}

Poly Poly::pow(int k) const {
    Poly r = constant(nvars_, Rat(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    int out_vars = images.empty() ? nvars_ : images[0].nvars();
    // Cache images[i]^k up to the largest exponent in use.
    std::vector<std::vector<Poly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(Poly::constant(out_vars, Rat(1)));
    Poly out(out_vars);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(out_vars, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            while (static_cast<int>(powers[i].size()) <= e[i])
                powers[i].push_back(powers[i].back() * images[i]);
            if (e[i] > 0) term = term * powers[i][static_cast<std::size_t>(e[i])];
        }
        out += term;
    }
    return out;
}

Rat Poly::evaluate(const RatVec& point) const {
    Rat s(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        s += t;
    }
    return s;
}

Poly Poly::extend_vars(int new_nvars) const {
    Poly p(new_nvars);
    for (const auto& [e, c] : terms_) {
        Expo ne(e);
        ne.resize(static_cast<std::size_t>(new_nvars), 0);
        p.terms_[ne] = c;
    }
    return p;
}

Poly Poly::specialize_last(const Rat& value) const {
    Poly p(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Rat f = c;
        for (int k = 0; k < e.back(); ++k) f *= value;
        Expo ne(e.begin(), e.end() - 1);
        p.add_term(ne, f);
    }
    return p;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    // Sort by (total degree, lex) for stable readable output.
    std::vector<const TermMap::value_type*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::stable_sort(ts.begin(), ts.end(), [](const auto* a, const auto* b) {
        int da = std::accumulate(a->first.begin(), a->first.end(), 0);
        int db = std::accumulate(b->first.begin(), b->first.end(), 0);
        return da != db ? da < db : a->first < b->first;
    });
    std::string out;
    bool first = true;
    for (const auto* t : ts) {
        const auto& [e, c] = *t;
        Rat a = c < 0 ? Rat(-c) : c;
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            out += rat_str(a);
        else if (a == 1)
            out += mono;
        else
            out += rat_str(a) + "*" + mono;
    }
    return out;
}

std::vector<std::vector<int>> monomials_exact(int nvars, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == nvars - 1) {
            cur[static_cast<std::size_t>(pos)] = rem;
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= rem; ++k) {
            cur[static_cast<std::size_t>(pos)] = k;
            self(self, pos + 1, rem - k);
        }
    };
    if (nvars == 0) {
        if (degree == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> monomials_upto(int nvars, int degree) {
    std::vector<std::vector<int>> out;
    for (int d = 0; d <= degree; ++d) {
        auto m = monomials_exact(nvars, d);
        out.insert(out.end(), m.begin(), m.end());
    }
    return out;
}

std::vector<std::string> var_names(int r, bool with_h) {
    std::vector<std::string> names;
    for (int i = 1; i <= r; ++i) names.push_back("y" + std::to_string(i));
    if (with_h) names.push_back("h");
    return names;
}

namespace {

struct Lexer {
    std::string s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return s[i];
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& names) {
    int nvars = static_cast<int>(names.size());
    Lexer lx{text};
    auto parse_factor = [&]() -> Poly {
        lx.skip();
        if (lx.i >= lx.s.size()) throw std::invalid_argument("polynomial: unexpected end");
        char c = lx.s[lx.i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = lx.i;
            while (j < lx.s.size() &&
                   (std::isdigit(static_cast<unsigned char>(lx.s[j])) || lx.s[j] == '/'))
                ++j;
            Rat q = rat_parse(lx.s.substr(lx.i, j - lx.i));
            lx.i = j;
            return Poly::constant(nvars, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = lx.i;
            while (j < lx.s.size() && (std::isalnum(static_cast<unsigned char>(lx.s[j])) ||
                                       lx.s[j] == '_'))
                ++j;
            std::string name = lx.s.substr(lx.i, j - lx.i);
            lx.i = j;
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end())
                throw std::invalid_argument("polynomial: unknown variable '" + name + "'");
            int idx = static_cast<int>(it - names.begin());
            int expo = 1;
            lx.skip();
            if (lx.i < lx.s.size() && lx.s[lx.i] == '^') {
                ++lx.i;
                lx.skip();
                std::size_t k = lx.i;
                while (k < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[k]))) ++k;
                if (k == lx.i) throw std::invalid_argument("polynomial: missing exponent");
                expo = std::stoi(lx.s.substr(lx.i, k - lx.i));
                lx.i = k;
            }
            return Poly::var(nvars, idx).pow(expo);
        }
        throw std::invalid_argument(std::string("polynomial: unexpected character '") + c + "'");
    };
    auto parse_term = [&]() -> Poly {
        Poly p = parse_factor();
        while (!lx.eof() && lx.peek() == '*') {
            ++lx.i;
            p = p * parse_factor();
        }
        return p;
    };
    Poly out(nvars);
    bool neg = false;
    if (!lx.eof() && (lx.peek() == '-' || lx.peek() == '+')) {
        neg = lx.peek() == '-';
        ++lx.i;
    }
    out += neg ? -parse_term() : parse_term();
    while (!lx.eof()) {
        char op = lx.peek();
        if (op != '+' && op != '-')
            throw std::invalid_argument(std::string("polynomial: unexpected character '") + op +
                                        "'");
        ++lx.i;
        Poly t = parse_term();
        out += op == '-' ? -t : t;
    }
    return out;
}

}  // namespace alcove
