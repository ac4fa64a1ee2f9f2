#include "alcove/rootdata.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace alcove {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

RatMat atom_cartan(const std::string& t) {
    auto q = [](int v) { return Rat(v); };
    if (t == "A1") return {{q(2)}};
    if (t == "A2") return {{q(2), q(-1)}, {q(-1), q(2)}};
    if (t == "B2") return {{q(2), q(-1)}, {q(-2), q(2)}};  // alpha_1 long
    if (t == "C2") return {{q(2), q(-2)}, {q(-1), q(2)}};  // alpha_1 short
    if (t == "G2") return {{q(2), q(-3)}, {q(-1), q(2)}};  // alpha_1 short
    throw std::invalid_argument("unsupported type '" + t + "' (atoms: A1 A2 B2 C2 G2)");
}

std::vector<std::string> root_key(const RatVec& c) {
    std::vector<std::string> k;
    for (const auto& x : c) k.push_back(rat_str(x));
    return k;
}

std::string mat_key(const RatMat& m) {
    std::string k;
    for (const auto& row : m)
        for (const auto& x : row) k += rat_str(x) + ",";
    return k;
}

}  // namespace

RatVec RootDatum::reflect(const RatVec& x, std::size_t root_idx, const Rat& k) const {
    const Root& a = roots[root_idx];
    Rat t = pairing(x, root_idx) - k;
    RatVec out(x);
    for (int i = 0; i < rank; ++i) out[static_cast<std::size_t>(i)] -= t * a.fw[static_cast<std::size_t>(i)];
    return out;
}

std::optional<IntVec> RootDatum::lattice_coords(const RatVec& lambda_root) const {
    RatVec c = mat_vec(transpose(lattice_inv), lambda_root);
    IntVec out;
    for (const auto& q : c) {
        if (!is_integer(q)) return std::nullopt;
        out.push_back(q.get_num());
    }
    return out;
}

bool RootDatum::in_root_lattice(const RatVec& lambda_root) const {
    for (const auto& q : lambda_root)
        if (!is_integer(q)) return false;
    return true;
}

IntVec RootDatum::pi1_class(const RatVec& lambda_root) const {
    auto c = lattice_coords(lambda_root);
    if (!c) throw std::invalid_argument("pi1_class: element is not in the character lattice");
    IntVec cls(static_cast<std::size_t>(rank), Int(0));
    for (std::size_t i = 0; i < cls.size(); ++i) {
        Int s(0);
        for (std::size_t j = 0; j < cls.size(); ++j) s += pi1_u[i][j] * (*c)[j];
        mpz_fdiv_r(cls[i].get_mpz_t(), s.get_mpz_t(), pi1_diag[i].get_mpz_t());
    }
    return cls;
}

std::string RootDatum::pi1_class_str(const IntVec& cls) const {
    std::string s = "(";
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i) s += ",";
        s += cls[i].get_str();
    }
    return s + ")";
}

int RootDatum::weyl_index(const RatMat& m) const {
    auto it = weyl_lookup_.find(mat_key(m));
    return it == weyl_lookup_.end() ? -1 : it->second;
}

std::size_t RootDatum::root_index(const RatVec& c) const {
    auto it = root_lookup_.find(root_key(c));
    if (it == root_lookup_.end()) throw std::invalid_argument("root_index: not a root");
    return it->second;
}

RootDatum build_root_datum(const std::string& type_label, Isogeny isogeny, const RatMat* lattice) {
    RootDatum d;
    d.type_label = type_label;
    d.isogeny = isogeny;

    // Block-diagonal Cartan matrix from the product decomposition.
    std::vector<RatMat> blocks;
    for (const auto& atom : split(type_label, 'x')) blocks.push_back(atom_cartan(atom));
    int r = 0;
    for (const auto& b : blocks) r += static_cast<int>(b.size());
    d.rank = r;
    d.cartan.assign(static_cast<std::size_t>(r), RatVec(static_cast<std::size_t>(r), Rat(0)));
    int off = 0;
    for (const auto& b : blocks) {
        std::vector<int> comp;
        for (std::size_t i = 0; i < b.size(); ++i) {
            comp.push_back(off + static_cast<int>(i));
            for (std::size_t j = 0; j < b.size(); ++j)
                d.cartan[static_cast<std::size_t>(off) + i][static_cast<std::size_t>(off) + j] =
                    b[i][j];
        }
        d.components.push_back(comp);
        off += static_cast<int>(b.size());
    }
    d.cartan_inv = mat_inverse(d.cartan);

    std::size_t ur = static_cast<std::size_t>(r);

    // Character lattice.
    if (isogeny == Isogeny::adjoint) {
        d.lattice_basis = identity_mat(ur);
    } else if (isogeny == Isogeny::simply_connected) {
        d.lattice_basis = transpose(d.cartan_inv);  // rows = fundamental weights
    } else {
        if (!lattice) throw std::invalid_argument("custom isogeny requires a lattice basis");
        d.lattice_basis = *lattice;
        if (d.lattice_basis.size() != ur)
            throw std::invalid_argument("lattice basis must have rank rows");
    }
    d.lattice_inv = mat_inverse(d.lattice_basis);
    if (!mat_is_integral(d.lattice_inv))
        throw std::invalid_argument("lattice does not contain the root lattice Q");
    if (!mat_is_integral(mat_mul(d.lattice_basis, transpose(d.cartan))))
        throw std::invalid_argument("lattice is not contained in the weight lattice P");

    // Close the simple (root, coroot) pairs under simple reflections.
    {
        std::vector<std::pair<RatVec, RatVec>> pairs;
        std::map<std::vector<std::string>, std::size_t> seen;
        for (int i = 0; i < r; ++i) {
            RatVec e(ur, Rat(0));
            e[static_cast<std::size_t>(i)] = 1;
            seen[root_key(e)] = pairs.size();
            pairs.emplace_back(e, e);
        }
        RatMat at = transpose(d.cartan);
        for (std::size_t head = 0; head < pairs.size(); ++head) {
            for (int i = 0; i < r; ++i) {
                auto [c, co] = pairs[head];
                RatVec ac = mat_vec(d.cartan, c), atd = mat_vec(at, co);
                c[static_cast<std::size_t>(i)] -= ac[static_cast<std::size_t>(i)];
                co[static_cast<std::size_t>(i)] -= atd[static_cast<std::size_t>(i)];
                if (!seen.count(root_key(c))) {
                    seen[root_key(c)] = pairs.size();
                    pairs.emplace_back(c, co);
                }
            }
        }
        // Deterministic order: positives sorted by (height, lex), negatives after.
        std::vector<std::pair<RatVec, RatVec>> pos;
        for (auto& [c, co] : pairs) {
            bool p = true;
            for (const auto& x : c) p = p && x >= 0;
            if (p) pos.emplace_back(c, co);
        }
        std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
            Rat ha(0), hb(0);
            for (const auto& x : a.first) ha += x;
            for (const auto& x : b.first) hb += x;
            if (ha != hb) return ha < hb;
            return root_key(a.first) < root_key(b.first);
        });
        for (const auto& [c, co] : pos) {
            Root root;
            root.root_coords = c;
            root.coroot_coords = co;
            root.fw = mat_vec(d.cartan, c);
            root.positive = true;
            d.positive_roots.push_back(d.roots.size());
            d.roots.push_back(root);
        }
        for (const auto& [c, co] : pos) {
            Root root;
            root.root_coords = vec_scale(Rat(-1), c);
            root.coroot_coords = vec_scale(Rat(-1), co);
            root.fw = mat_vec(d.cartan, root.root_coords);
            root.positive = false;
            d.roots.push_back(root);
        }
        for (std::size_t k = 0; k < d.roots.size(); ++k)
            d.root_lookup_[root_key(d.roots[k].root_coords)] = k;
    }

    // Finite Weyl group by breadth-first closure over right multiplication.
    {
        std::vector<RatMat> simple(ur);
        for (std::size_t i = 0; i < ur; ++i) {
            // S_i = I - fw(alpha_i) e_i^T on pairing coordinates.
            RatMat m = identity_mat(ur);
            for (std::size_t j = 0; j < ur; ++j) m[j][i] -= d.cartan[j][i];
            simple[i] = m;
        }
        d.weyl.push_back(identity_mat(ur));
        d.weyl_word.push_back({});
        d.weyl_lookup_[mat_key(d.weyl[0])] = 0;
        for (std::size_t head = 0; head < d.weyl.size(); ++head) {
            for (std::size_t i = 0; i < ur; ++i) {
                RatMat m = mat_mul(d.weyl[head], simple[i]);
                std::string key = mat_key(m);
                if (d.weyl_lookup_.count(key)) continue;
                d.weyl_lookup_[key] = static_cast<int>(d.weyl.size());
                auto word = d.weyl_word[head];
                word.push_back(static_cast<int>(i));
                d.weyl.push_back(std::move(m));
                d.weyl_word.push_back(std::move(word));
                if (d.weyl.size() > 40320) throw std::invalid_argument("Weyl group too large");
            }
        }
        std::size_t n = d.weyl.size();
        d.simple_weyl.assign(ur, 0);
        for (std::size_t i = 0; i < ur; ++i) d.simple_weyl[i] = d.weyl_index(simple[i]);
        d.weyl_mult.assign(n, std::vector<int>(n, 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                d.weyl_mult[a][b] = d.weyl_index(mat_mul(d.weyl[a], d.weyl[b]));
        d.weyl_inv.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (d.weyl_mult[a][b] == 0) d.weyl_inv[a] = static_cast<int>(b);
        d.weyl_root.reserve(n);
        for (std::size_t a = 0; a < n; ++a)
            d.weyl_root.push_back(mat_mul(d.cartan_inv, mat_mul(d.weyl[a], d.cartan)));
        d.root_perm.assign(n, std::vector<int>(d.roots.size(), 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t k = 0; k < d.roots.size(); ++k)
                d.root_perm[a][k] = static_cast<int>(
                    d.root_index(mat_vec(d.weyl_root[a], d.roots[k].root_coords)));
        d.reflection_root.assign(n, -1);
        for (std::size_t pk : d.positive_roots) {
            const Root& a = d.roots[pk];
            RatMat m = identity_mat(ur);
            for (std::size_t i = 0; i < ur; ++i)
                for (std::size_t j = 0; j < ur; ++j) m[i][j] -= a.fw[i] * a.coroot_coords[j];
            int w = d.weyl_index(m);
            if (w < 0) throw std::logic_error("reflection matrix not in Weyl group");
            d.reflection_root[static_cast<std::size_t>(w)] = static_cast<int>(pk);
        }
    }

    // pi1 = L/Q via the Smith normal form of the L-coordinates of the alpha_i.
    {
        RatMat k = transpose(d.lattice_inv);  // column j = L-coords of alpha_j
        IntMat ik(ur, IntVec(ur));
        for (std::size_t i = 0; i < ur; ++i)
            for (std::size_t j = 0; j < ur; ++j) ik[i][j] = k[i][j].get_num();
        SmithResult s = smith_normal_form(ik);
        d.pi1_u = s.u;
        d.pi1_diag.assign(ur, Int(1));
        d.pi1_order = 1;
        for (std::size_t i = 0; i < ur; ++i) {
            d.pi1_diag[i] = s.d[i][i];
            d.pi1_order *= s.d[i][i];
        }
    }

    // Highest short root per component: maximal coroot height.
    for (const auto& comp : d.components) {
        std::size_t best = 0;
        Rat best_h(-1);
        for (std::size_t pk : d.positive_roots) {
            bool in_comp = true;
            for (int i = 0; i < r; ++i) {
                bool member = std::find(comp.begin(), comp.end(), i) != comp.end();
                if (!member && d.roots[pk].root_coords[static_cast<std::size_t>(i)] != 0)
                    in_comp = false;
            }
            if (!in_comp) continue;
            Rat h(0);
            for (const auto& x : d.roots[pk].coroot_coords) h += x;
            if (h > best_h) {
                best_h = h;
                best = pk;
            }
        }
        d.highest_short.push_back(best);
    }

    // Interior point of A0: blockwise 1/(1 + coroot height of the highest coroot).
    d.p0.assign(ur, Rat(0));
    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
        Rat h(1);
        for (const auto& x : d.roots[d.highest_short[ci]].coroot_coords) h += x;
        for (int i : d.components[ci]) d.p0[static_cast<std::size_t>(i)] = Rat(1) / h;
    }

    return d;
}

}  // namespace alcove
