#include "alcove/affine.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace alcove {

std::string aff_key(const Aff& a) {
    std::string k = std::to_string(a.w) + "|";
    for (const auto& q : a.lambda) k += rat_str(q) + ",";
    return k;
}

Aff aff_identity(const RootDatum& d) {
    return Aff{RatVec(static_cast<std::size_t>(d.rank), Rat(0)), 0};
}

Aff aff_translation(const RootDatum& d, const RatVec& lambda_root) {
    if (!d.in_lattice(lambda_root))
        throw std::invalid_argument("translation is not in the character lattice");
    return Aff{lambda_root, 0};
}

Aff aff_reflection(const RootDatum& d, std::size_t pos_root, const Rat& k) {
    RatVec lambda = vec_scale(k, d.roots[pos_root].root_coords);
    if (!d.in_lattice(lambda))
        throw std::invalid_argument("affine reflection level: k*alpha is not in the lattice");
    int w = -1;
    for (std::size_t wi = 0; wi < d.weyl_order(); ++wi)
        if (d.reflection_root[wi] == static_cast<int>(pos_root)) w = static_cast<int>(wi);
    return Aff{std::move(lambda), w};
}

Aff aff_compose(const RootDatum& d, const Aff& a, const Aff& b) {
    RatVec lambda = vec_add(a.lambda, mat_vec(d.weyl_root[static_cast<std::size_t>(a.w)], b.lambda));
    return Aff{std::move(lambda), d.weyl_mult[static_cast<std::size_t>(a.w)][static_cast<std::size_t>(b.w)]};
}

Aff aff_invert(const RootDatum& d, const Aff& a) {
    int wi = d.weyl_inv[static_cast<std::size_t>(a.w)];
    RatVec lambda = vec_scale(Rat(-1), mat_vec(d.weyl_root[static_cast<std::size_t>(wi)], a.lambda));
    return Aff{std::move(lambda), wi};
}

RatVec aff_act(const RootDatum& d, const Aff& a, const RatVec& x, const Rat& hbar) {
    RatVec out = mat_vec(d.weyl[static_cast<std::size_t>(a.w)], x);
    RatVec fw = d.fw_of_root_coords(a.lambda);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += hbar * fw[i];
    return out;
}

std::pair<RatVec, RatVec> aff_act_complex(const RootDatum& d, const Aff& a, const RatVec& re,
                                          const RatVec& im, const Rat& hbar) {
    return {aff_act(d, a, re, hbar), mat_vec(d.weyl[static_cast<std::size_t>(a.w)], im)};
}

bool in_waff(const RootDatum& d, const Aff& a) { return d.in_root_lattice(a.lambda); }

std::optional<std::pair<std::size_t, Rat>> as_reflection(const RootDatum& d, const Aff& a) {
    int ri = d.reflection_root[static_cast<std::size_t>(a.w)];
    if (ri < 0) return std::nullopt;
    const RatVec& c = d.roots[static_cast<std::size_t>(ri)].root_coords;
    // lambda must be k * c; roots are primitive so k is determined.
    Rat k(0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) {
            k = a.lambda[i] / c[i];
            break;
        }
    if (a.lambda != vec_scale(k, c)) return std::nullopt;
    return std::make_pair(static_cast<std::size_t>(ri), k);
}

long aff_length(const RootDatum& d, const Aff& a) {
    RatVec p = aff_act(d, a, d.p0, Rat(1));
    long len = 0;
    for (auto k : d.positive_roots) {
        Int f = rat_floor(d.pairing(p, k));
        len += std::abs(static_cast<long>(f.get_si()));
    }
    return len;
}

std::vector<int> affine_generator_ids(const RootDatum& d) {
    std::vector<int> ids;
    for (int i = 1; i <= d.rank; ++i) ids.push_back(i);
    for (std::size_t c = 0; c < d.components.size(); ++c)
        ids.push_back(c == 0 ? 0 : d.rank + static_cast<int>(c));
    return ids;
}

Aff affine_generator(const RootDatum& d, int id) {
    if (id >= 1 && id <= d.rank)
        return Aff{RatVec(static_cast<std::size_t>(d.rank), Rat(0)),
                   d.simple_weyl[static_cast<std::size_t>(id - 1)]};
    std::size_t comp = d.components.size();
    if (id == 0)
        comp = 0;
    else if (id > d.rank && id < d.rank + static_cast<int>(d.components.size()))
        comp = static_cast<std::size_t>(id - d.rank);
    if (comp >= d.components.size()) throw std::invalid_argument("unknown generator id");
    return aff_reflection(d, d.highest_short[comp], Rat(1));
}

NonRegularPoint::NonRegularPoint(const RootDatum& d, std::size_t ri, const Rat& lvl)
    : std::runtime_error("non-regular point: lies on the hyperplane <x,alpha^vee> = " +
                         rat_str(lvl) + " for alpha with root coordinates " +
                         [&] {
                             std::string s = "[";
                             const RatVec& c = d.roots[ri].root_coords;
                             for (std::size_t i = 0; i < c.size(); ++i)
                                 s += (i ? "," : "") + rat_str(c[i]);
                             return s + "]";
                         }()),
      root_index(ri),
      level(lvl) {}

Located locate_alcove(const RootDatum& d, const RatVec& x) {
    for (auto k : d.positive_roots) {
        Rat c = d.pairing(x, k);
        if (is_integer(c)) throw NonRegularPoint(d, k, c);
    }
    std::vector<int> order = affine_generator_ids(d);
    RatVec y = x;
    std::vector<int> word;
    Aff gamma = aff_identity(d);
    while (true) {
        int violated = -1;
        for (int id : order) {
            if (id >= 1 && id <= d.rank) {
                if (y[static_cast<std::size_t>(id - 1)] < 0) {
                    violated = id;
                    break;
                }
            } else {
                std::size_t comp = id == 0 ? 0 : static_cast<std::size_t>(id - d.rank);
                if (d.pairing(y, d.highest_short[comp]) > 1) {
                    violated = id;
                    break;
                }
            }
        }
        if (violated < 0) break;
        Aff r = affine_generator(d, violated);
        y = aff_act(d, r, y, Rat(1));
        word.push_back(violated);
        gamma = aff_compose(d, gamma, r);  // gamma = r_1 r_2 ... r_m
    }
    return Located{gamma, word};
}

Factorization factorize(const RootDatum& d, const Aff& a) {
    Located loc = locate_alcove(d, aff_act(d, a, d.p0, Rat(1)));
    Aff omega = aff_compose(d, aff_invert(d, loc.element), a);
    if (aff_length(d, omega) != 0) throw std::logic_error("factorize: non-zero-length remainder");
    Aff waff = aff_compose(d, aff_invert(d, omega), aff_compose(d, loc.element, omega));
    Located wloc = locate_alcove(d, aff_act(d, waff, d.p0, Rat(1)));
    if (wloc.element != waff) throw std::logic_error("factorize: conjugate location mismatch");
    return Factorization{omega, waff, wloc.word};
}

std::vector<Aff> bruhat_interval(const RootDatum& d, const Aff& a) {
    Factorization f = factorize(d, a);
    if (f.word.size() > 20) throw std::invalid_argument("bruhat_interval: word too long");
    std::map<std::string, Aff> seen;
    for (std::size_t mask = 0; mask < (std::size_t(1) << f.word.size()); ++mask) {
        Aff v = aff_identity(d);
        for (std::size_t j = 0; j < f.word.size(); ++j)
            if (mask & (std::size_t(1) << j)) v = aff_compose(d, v, affine_generator(d, f.word[j]));
        Aff el = aff_compose(d, f.omega, v);
        seen.emplace(aff_key(el), el);
    }
    std::vector<Aff> out;
    for (auto& [key, el] : seen) out.push_back(el);
    std::stable_sort(out.begin(), out.end(), [&](const Aff& l, const Aff& r) {
        long ll = aff_length(d, l), lr = aff_length(d, r);
        if (ll != lr) return ll < lr;
        return aff_key(l) < aff_key(r);
    });
    return out;
}

bool is_bruhat_closed(const RootDatum& d, const std::vector<Aff>& set) {
    std::map<std::string, bool> members;
    for (const auto& a : set) members[aff_key(a)] = true;
    for (const auto& a : set) {
        Factorization f = factorize(d, a);
        long la = aff_length(d, a);
        for (std::size_t skip = 0; skip < f.word.size(); ++skip) {
            Aff v = f.omega;
            for (std::size_t j = 0; j < f.word.size(); ++j)
                if (j != skip) v = aff_compose(d, v, affine_generator(d, f.word[j]));
            if (aff_length(d, v) != la - 1) continue;
            if (!members.count(aff_key(v))) return false;
        }
    }
    return true;
}

std::vector<Aff> generate_subgroup(const RootDatum& d, const std::vector<Aff>& gens,
                                   std::size_t budget) {
    std::map<std::string, Aff> closure;
    Aff e = aff_identity(d);
    closure.emplace(aff_key(e), e);
    std::vector<Aff> frontier = {e};
    while (!frontier.empty()) {
        std::vector<Aff> next;
        for (const auto& a : frontier)
            for (const auto& g : gens) {
                Aff b = aff_compose(d, a, g);
                if (closure.emplace(aff_key(b), b).second) next.push_back(b);
                if (closure.size() > budget)
                    throw std::invalid_argument("subgroup closure exceeds budget");
            }
        frontier = std::move(next);
    }
    std::vector<Aff> out;
    for (auto& [k, a] : closure) out.push_back(a);
    return out;
}

namespace {

// Whether x lies in the closure of gamma(A0).
bool in_closed_alcove(const RootDatum& d, const Aff& gamma, const RatVec& x) {
    RatVec y = aff_act(d, aff_invert(d, gamma), x, Rat(1));
    for (int i = 0; i < d.rank; ++i)
        if (y[static_cast<std::size_t>(i)] < 0) return false;
    for (auto hs : d.highest_short)
        if (d.pairing(y, hs) > 1) return false;
    return true;
}

// A regular point close to re inside an alcove whose closure contains re.
RatVec nudge_towards_p0(const RootDatum& d, const RatVec& re) {
    Rat eps(1);
    for (auto k : d.positive_roots) {
        Rat q = d.pairing(d.p0, k);
        if (q < 0) q = -q;
        if (q == 0) continue;
        Rat c = d.pairing(re, k);
        Rat room = is_integer(c) ? Rat(1) : Rat(rat_ceil(c)) - c;
        Rat cand = room / q;
        if (cand < eps) eps = cand;
    }
    eps /= 2;
    return vec_add(re, vec_scale(eps, d.p0));
}

struct Star {
    std::vector<Aff> alcoves;  // BFS order from the seed
    std::map<std::string, std::size_t> index;
};

// All alcoves whose closure contains re, found by crossing walls through re.
Star alcove_star(const RootDatum& d, const Aff& seed, const RatVec& re) {
    Star s;
    s.alcoves.push_back(seed);
    s.index[aff_key(seed)] = 0;
    std::vector<int> ids = affine_generator_ids(d);
    for (std::size_t head = 0; head < s.alcoves.size(); ++head) {
        Aff cur = s.alcoves[head];
        for (int id : ids) {
            Aff rho = aff_compose(d, cur, aff_compose(d, affine_generator(d, id), aff_invert(d, cur)));
            auto refl = as_reflection(d, rho);
            if (!refl) throw std::logic_error("wall conjugate is not a reflection");
            if (d.pairing(re, refl->first) != refl->second) continue;  // wall misses re
            Aff nb = aff_compose(d, rho, cur);
            if (s.index.emplace(aff_key(nb), s.alcoves.size()).second) s.alcoves.push_back(nb);
        }
    }
    return s;
}

}  // namespace

StabilizerCertificate stabilizer(const RootDatum& d, const RatVec& re, const RatVec& im) {
    StabilizerCertificate cert;
    cert.re = re;
    cert.im = im;

    // Brute force over W: gamma = t_{re - w(re)} w fixes re; filter by lattice.
    for (std::size_t w = 0; w < d.weyl_order(); ++w) {
        RatVec diff = vec_sub(re, mat_vec(d.weyl[w], re));
        RatVec lambda = d.root_coords_of_fw(diff);
        bool im_fixed = mat_vec(d.weyl[w], im) == im;
        Aff g{lambda, static_cast<int>(w)};
        if (d.in_root_lattice(lambda)) {
            cert.re_elements.push_back(g);
            if (im_fixed) {
                cert.elements.push_back(g);
                cert.w_image.push_back(static_cast<int>(w));
            }
        }
        if (d.in_lattice(lambda) && im_fixed) cert.ext_elements.push_back(g);
    }

    for (const auto& g : cert.elements)
        if (as_reflection(d, g)) cert.generators.push_back(g);

    for (std::size_t k = 0; k < d.roots.size(); ++k)
        if (is_integer(d.pairing(re, k))) cert.phi_x.push_back(k);

    // Fixed direction space of pi(Gamma^{Re}).
    RatMat stacked;
    for (const auto& g : cert.re_elements) {
        RatMat m = d.weyl[static_cast<std::size_t>(g.w)];
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i][i] -= 1;
            stacked.push_back(m[i]);
        }
    }
    cert.v_x = nullspace(stacked);

    cert.adjacent_alcove = locate_alcove(d, nudge_towards_p0(d, re)).element;
    std::vector<int> ids = affine_generator_ids(d);
    for (int id : ids) {
        const Aff& p = cert.adjacent_alcove;
        Aff rho = aff_compose(d, p, aff_compose(d, affine_generator(d, id), aff_invert(d, p)));
        auto refl = as_reflection(d, rho);
        if (refl && d.pairing(re, refl->first) == refl->second) cert.wall_generators.push_back(rho);
    }

    cert.alcove_count = alcove_star(d, cert.adjacent_alcove, re).alcoves.size();
    return cert;
}

std::vector<Aff> alcove_walk(const RootDatum& d, const Aff& p, const Aff& q, const RatVec& re) {
    if (!in_closed_alcove(d, p, re) || !in_closed_alcove(d, q, re))
        throw std::invalid_argument("alcove_walk: point not in both alcove closures");
    // Breadth-first search from p among alcoves around re gives a shortest walk.
    std::vector<Aff> alcoves = {p};
    std::map<std::string, std::size_t> index{{aff_key(p), 0}};
    std::vector<long> parent = {-1};
    std::vector<Aff> crossing = {aff_identity(d)};
    std::vector<int> ids = affine_generator_ids(d);
    std::size_t found = aff_key(p) == aff_key(q) ? 0 : static_cast<std::size_t>(-1);
    for (std::size_t head = 0; head < alcoves.size() && found == static_cast<std::size_t>(-1);
         ++head) {
        Aff cur = alcoves[head];
        for (int id : ids) {
            Aff rho = aff_compose(d, cur, aff_compose(d, affine_generator(d, id), aff_invert(d, cur)));
            auto refl = as_reflection(d, rho);
            if (!refl || d.pairing(re, refl->first) != refl->second) continue;
            Aff nb = aff_compose(d, rho, cur);
            if (!index.emplace(aff_key(nb), alcoves.size()).second) continue;
            alcoves.push_back(nb);
            parent.push_back(static_cast<long>(head));
            crossing.push_back(rho);
            if (nb == q) {
                found = alcoves.size() - 1;
                break;
            }
        }
    }
    if (found == static_cast<std::size_t>(-1))
        throw std::invalid_argument("alcove_walk: target not reachable around the point");
    std::vector<Aff> walk;
    for (std::size_t at = found; parent[at] >= 0; at = static_cast<std::size_t>(parent[at]))
        walk.push_back(crossing[at]);
    std::reverse(walk.begin(), walk.end());
    return walk;
}

std::string aff_str(const RootDatum& d, const Aff& a) {
    auto coords = d.lattice_coords(a.lambda);
    if (!coords) throw std::invalid_argument("element translation is not in the lattice");
    std::string s = "t[";
    for (std::size_t i = 0; i < coords->size(); ++i) s += (i ? "," : "") + (*coords)[i].get_str();
    s += "] w[";
    const auto& word = d.weyl_word[static_cast<std::size_t>(a.w)];
    for (std::size_t i = 0; i < word.size(); ++i)
        s += (i ? "," : "") + std::to_string(word[i] + 1);
    return s + "]";
}

Aff aff_parse(const RootDatum& d, const std::string& s) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("cannot parse element '" + s + "': " + why);
    };
    std::size_t t0 = s.find("t[");
    std::size_t t1 = s.find(']', t0);
    std::size_t w0 = s.find("w[", t1 == std::string::npos ? 0 : t1);
    std::size_t w1 = s.find(']', w0);
    if (t0 == std::string::npos || t1 == std::string::npos || w0 == std::string::npos ||
        w1 == std::string::npos)
        throw bad("expected \"t[...] w[...]\"");
    auto split_ints = [&](const std::string& body) {
        std::vector<long> out;
        std::size_t start = 0;
        if (body.empty()) return out;
        while (true) {
            std::size_t pos = body.find(',', start);
            std::string tok = body.substr(start, pos == std::string::npos ? pos : pos - start);
            try {
                out.push_back(std::stol(tok));
            } catch (...) {
                throw bad("bad integer '" + tok + "'");
            }
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return out;
    };
    auto tcoords = split_ints(s.substr(t0 + 2, t1 - t0 - 2));
    auto wword = split_ints(s.substr(w0 + 2, w1 - w0 - 2));
    if (tcoords.size() != static_cast<std::size_t>(d.rank)) throw bad("translation arity");
    RatVec lambda(static_cast<std::size_t>(d.rank), Rat(0));
    for (std::size_t i = 0; i < tcoords.size(); ++i)
        for (std::size_t j = 0; j < lambda.size(); ++j)
            lambda[j] += Rat(tcoords[i]) * d.lattice_basis[i][j];
    int w = 0;
    for (long i : wword) {
        if (i < 1 || i > d.rank) throw bad("simple index out of range");
        w = d.weyl_mult[static_cast<std::size_t>(w)]
                       [static_cast<std::size_t>(d.simple_weyl[static_cast<std::size_t>(i - 1)])];
    }
    return Aff{std::move(lambda), w};
}

}  // namespace alcove
