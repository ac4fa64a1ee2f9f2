#include "alcove/descent.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "alcove/linalg.hpp"

namespace alcove {

namespace {

// f(M z) for a linear substitution.
Poly compose_linear(const Poly& f, const RatMat& m) {
    int nv = f.nvars();
    std::vector<Poly> images;
    images.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        Poly p(nv);
        for (int j = 0; j < nv; ++j)
            if (m[i][j] != 0) p += Poly::var(nv, j) * m[i][j];
        images.push_back(std::move(p));
    }
    return f.substitute(images);
}

std::size_t mat_fix_rank(const RatMat& m) {
    RatMat diff = m;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i][i] -= 1;
    return mat_rank(diff);
}

PolyMat pm_identity(std::size_t n, int nvars) {
    PolyMat m(n, std::vector<Poly>(n, Poly(nvars)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly::constant(nvars, Rat(1));
    return m;
}

PolyMat pm_mul(const PolyMat& a, const PolyMat& b) {
    std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    PolyMat out(n, std::vector<Poly>(c, Poly(a.empty() ? 0 : a[0][0].nvars())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

bool pm_eq(const PolyMat& a, const PolyMat& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!(a[i][j] == b[i][j])) return false;
    }
    return true;
}

PolyMat pm_twist(const PolyMat& a, const RatMat& m_inv) {
    PolyMat out = a;
    for (auto& row : out)
        for (auto& p : row)
            if (!p.is_zero()) p = compose_linear(p, m_inv);
    return out;
}

// Substitution images parametrizing the solution set of the given linear
// forms (z = N t for a nullspace basis N); with no forms this is the
// identity, with full rank it is the origin.
std::vector<Poly> subspace_images(const RatMat& forms, int nvars) {
    RatMat n = forms.empty() ? RatMat() : nullspace(forms);
    if (forms.empty()) {
        std::vector<Poly> id;
        for (int i = 0; i < nvars; ++i) id.push_back(Poly::var(nvars, i));
        return id;
    }
    int params = static_cast<int>(n.size());
    int ring = std::max(1, params);
    std::vector<Poly> images(nvars, Poly(ring));
    for (int k = 0; k < params; ++k)
        for (int i = 0; i < nvars; ++i)
            if (n[k][i] != 0) images[i] += Poly::var(ring, k) * n[k][i];
    return images;
}

RatMat fixed_space_forms(const RatMat& m) {
    RatMat diff = m;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i][i] -= 1;
    RatMat forms;
    for (const auto& row : rref(diff).rows) forms.push_back(row);
    return forms;
}

Poly poly_det(std::vector<std::vector<Poly>> m) {
    std::size_t n = m.size();
    if (n == 0) return Poly::constant(1, Rat(1));
    if (n == 1) return m[0][0];
    Poly acc(m[0][0].nvars());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = m[0][j] * poly_det(std::move(minor));
        acc += j % 2 == 0 ? term : -term;
    }
    return acc;
}

}  // namespace

FiniteReflectionGroup::FiniteReflectionGroup(const RootDatum& d, std::vector<int> weyl_indices,
                                             RatVec center)
    : datum_(&d), center_(std::move(center)) {
    std::sort(weyl_indices.begin(), weyl_indices.end());
    weyl_ = std::move(weyl_indices);
    for (std::size_t i = 0; i < weyl_.size(); ++i) {
        if (weyl_[i] < 0 || weyl_[i] >= static_cast<int>(d.weyl_order()))
            throw std::invalid_argument("group element outside W");
        if (!pos_.emplace(weyl_[i], i).second)
            throw std::invalid_argument("duplicate group element");
    }
    if (!pos_.count(0)) throw std::invalid_argument("group does not contain the identity");
    for (int a : weyl_)
        for (int b : weyl_)
            if (!pos_.count(d.weyl_mult[a][b]))
                throw std::invalid_argument("element set is not closed under composition");
    for (std::size_t i = 0; i < weyl_.size(); ++i)
        if (mat_fix_rank(matrix(i)) == 1) refl_.push_back(i);

    std::set<int> closure{0};
    for (std::size_t k : refl_) closure.insert(weyl_[k]);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(closure.begin(), closure.end());
        for (int a : cur)
            for (int b : cur)
                if (closure.insert(d.weyl_mult[a][b]).second) grew = true;
    }
    generated_by_reflections_ = closure.size() == weyl_.size();
}

FiniteReflectionGroup FiniteReflectionGroup::from_certificate(const RootDatum& d,
                                                              const StabilizerCertificate& cert) {
    return FiniteReflectionGroup(d, cert.w_image, cert.re);
}

FiniteReflectionGroup FiniteReflectionGroup::standard(const RootDatum& d) {
    std::vector<int> all(d.weyl_order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return FiniteReflectionGroup(d, std::move(all), RatVec(d.rank, Rat(0)));
}

RatVec FiniteReflectionGroup::reflection_form(std::size_t k) const {
    RatMat forms = fixed_space_forms(matrix(refl_.at(k)));
    if (forms.size() != 1) throw std::logic_error("reflection has a non-hyperplane mirror");
    RatVec f = forms[0];
    Int num_gcd = 0, den_lcm = 1;
    for (const Rat& c : f) {
        num_gcd = gcd(num_gcd, c.get_num());
        den_lcm = lcm(den_lcm, c.get_den());
    }
    if (num_gcd != 0)
        for (Rat& c : f) {
            c *= Rat(den_lcm) / Rat(num_gcd);
            c.canonicalize();
        }
    return f;
}

std::string FiniteReflectionGroup::element_name(std::size_t i) const {
    const auto& word = datum_->weyl_word[weyl_[i]];
    if (word.empty()) return "e";
    std::string s;
    for (int j : word) {
        if (!s.empty()) s += " ";
        s += "s" + std::to_string(j + 1);
    }
    return s;
}

std::vector<long> molien_series(const FiniteReflectionGroup& g, int bound) {
    std::vector<Rat> total(bound + 1, Rat(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const RatMat& m = g.matrix(i);
        int r = static_cast<int>(m.size());
        std::vector<std::vector<Poly>> a(r, std::vector<Poly>(r, Poly(1)));
        for (int p = 0; p < r; ++p)
            for (int q = 0; q < r; ++q) {
                if (p == q) a[p][q] += Poly::constant(1, Rat(1));
                if (m[p][q] != 0) a[p][q] -= Poly::var(1, 0) * m[p][q];
            }
        Poly det = poly_det(std::move(a));
        std::vector<Rat> coeffs(bound + 1, Rat(0));
        for (const auto& [e, c] : det.terms())
            if (e[0] <= bound) coeffs[e[0]] = c;
        if (coeffs[0] != 1) throw std::logic_error("det(1 - t g) must have constant term 1");
        std::vector<Rat> inv(bound + 1, Rat(0));
        inv[0] = 1;
        for (int k = 1; k <= bound; ++k) {
            Rat s(0);
            for (int j = 1; j <= k; ++j) s += coeffs[j] * inv[k - j];
            inv[k] = -s;
        }
        for (int k = 0; k <= bound; ++k) total[k] += inv[k];
    }
    std::vector<long> out(bound + 1);
    Rat order(static_cast<long>(g.size()));
    for (int k = 0; k <= bound; ++k) {
        Rat c = total[k] / order;
        c.canonicalize();
        if (!is_integer(c) || c < 0) throw std::logic_error("Molien coefficient not a nonnegative integer");
        out[k] = static_cast<long>(c.get_num().get_si());
    }
    return out;
}

namespace {

// Basis (as coefficient rows over exact-degree monomials) of the degree-d
// invariants, via Reynolds averaging.
std::vector<Poly> invariant_basis(const FiniteReflectionGroup& g, int degree) {
    int r = g.datum().rank;
    auto monos = monomials_exact(r, degree);
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
    RatSpan span(monos.size());
    std::vector<Poly> basis;
    Rat inv_order = Rat(1) / Rat(static_cast<long>(g.size()));
    for (const auto& e : monos) {
        Poly avg(r);
        for (std::size_t i = 0; i < g.size(); ++i)
            avg += compose_linear(Poly::monomial(e, Rat(1)), g.matrix(g.inverse(i)));
        avg = avg * inv_order;
        if (avg.is_zero()) continue;
        RatVec row(monos.size(), Rat(0));
        for (const auto& [ee, c] : avg.terms()) row[idx.at(ee)] = c;
        if (span.add(row)) basis.push_back(avg);
    }
    return basis;
}

}  // namespace

std::size_t invariant_dim_reynolds(const FiniteReflectionGroup& g, int degree) {
    return invariant_basis(g, degree).size();
}

std::vector<long> free_algebra_series(const std::vector<int>& degrees, int bound) {
    std::vector<long> c(bound + 1, 0);
    c[0] = 1;
    for (int d : degrees)
        for (int k = d; k <= bound; ++k) c[k] += c[k - d];
    return c;
}

InvariantReport cst_check(const FiniteReflectionGroup& g) {
    InvariantReport rep;
    rep.applicable = g.is_reflection_group();
    rep.group_order = g.size();
    rep.reflection_count = g.reflections().size();
    int r = g.datum().rank;
    int top = static_cast<int>(rep.reflection_count) + 1;
    if (top > 40) throw std::runtime_error("cst_check: degree budget exceeded");
    rep.molien = molien_series(g, top);

    std::vector<std::vector<Poly>> inv(top + 1);
    for (int e = 1; e <= top; ++e) inv[e] = invariant_basis(g, e);

    // Coinvariant dimensions: quotient by the ideal of positive-degree
    // invariants, degree by degree.
    for (int d = 0; d <= top; ++d) {
        auto monos = monomials_exact(r, d);
        std::map<std::vector<int>, std::size_t> idx;
        for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
        RatSpan span(monos.size());
        for (int e = 1; e <= d; ++e)
            for (const Poly& b : inv[e])
                for (const auto& mexp : monomials_exact(r, d - e)) {
                    Poly prod = b * Poly::monomial(mexp, Rat(1));
                    RatVec row(monos.size(), Rat(0));
                    for (const auto& [ee, c] : prod.terms()) row[idx.at(ee)] = c;
                    span.add(row);
                }
        rep.coinvariant_dims.push_back(monos.size() - span.dim());
    }
    for (int d = 0; d < top; ++d) rep.coinvariant_total += rep.coinvariant_dims[d];

    // Fundamental degrees: count fresh algebra generators degree by degree.
    std::vector<std::pair<int, Poly>> gens;
    std::vector<std::vector<Poly>> alg(top + 1);
    alg[0] = {Poly::constant(r, Rat(1))};
    for (int e = 1; e <= top; ++e) {
        auto monos = monomials_exact(r, e);
        std::map<std::vector<int>, std::size_t> idx;
        for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
        RatSpan span(monos.size());
        auto to_row = [&](const Poly& p) {
            RatVec row(monos.size(), Rat(0));
            for (const auto& [ee, c] : p.terms()) row[idx.at(ee)] = c;
            return row;
        };
        for (const auto& [a, gpoly] : gens) {
            if (a > e) continue;
            for (const Poly& b : alg[e - a]) {
                Poly prod = gpoly * b;
                if (span.add(to_row(prod))) alg[e].push_back(prod);
            }
        }
        for (const Poly& b : inv[e])
            if (span.add(to_row(b))) {
                gens.emplace_back(e, b);
                alg[e].push_back(b);
                rep.fundamental_degrees.push_back(e);
            }
    }
    return rep;
}

ModuleCheck validate_module(const EquivariantModule& m, const FiniteReflectionGroup& g) {
    int r = g.datum().rank;
    std::size_t n = m.rank();
    if (m.nvars != r) return {false, "module ring has the wrong variable count"};
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto it = m.action.find(g.weyl_index(i));
        if (it == m.action.end())
            return {false, "missing action matrix for " + g.element_name(i)};
        const PolyMat& a = it->second;
        if (a.size() != n) return {false, "action matrix of wrong size"};
        for (const auto& row : a)
            if (row.size() != n) return {false, "action matrix of wrong size"};
    }
    if (!pm_eq(m.action.at(0), pm_identity(n, r))) return {false, "A_e is not the identity"};
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            const PolyMat& lhs = m.action.at(g.weyl_index(g.mult(i, j)));
            PolyMat rhs = pm_mul(m.action.at(g.weyl_index(i)),
                                 pm_twist(m.action.at(g.weyl_index(j)),
                                          g.matrix(g.inverse(i))));
            if (!pm_eq(lhs, rhs))
                return {false, "cocycle fails at (" + g.element_name(i) + ", " +
                                   g.element_name(j) + ")"};
        }
    if (m.resolution) {
        const auto& res = *m.resolution;
        if (res.terms.empty()) return {false, "empty resolution"};
        if (res.diffs.size() + 1 != res.terms.size())
            return {false, "resolution needs one differential per consecutive pair"};
        if (res.terms[0].gen_degrees != m.gen_degrees ||
            !std::equal(res.terms[0].action.begin(), res.terms[0].action.end(),
                        m.action.begin(), m.action.end(),
                        [](const auto& a, const auto& b) {
                            return a.first == b.first && pm_eq(a.second, b.second);
                        }))
            return {false, "quotient presentation must reuse the F0 generators and action"};
        for (const auto& term : res.terms) {
            if (term.resolution) return {false, "resolution terms must be flat"};
            ModuleCheck sub = validate_module(term, g);
            if (!sub.ok) return {false, "resolution term: " + sub.detail};
        }
        for (std::size_t k = 0; k < res.diffs.size(); ++k) {
            const PolyMat& dmat = res.diffs[k];
            std::size_t rows = res.terms[k].rank(), cols = res.terms[k + 1].rank();
            if (dmat.size() != rows) return {false, "differential of wrong size"};
            for (const auto& row : dmat)
                if (row.size() != cols) return {false, "differential of wrong size"};
            for (std::size_t i = 0; i < g.size(); ++i) {
                PolyMat lhs = pm_mul(dmat, res.terms[k + 1].action.at(g.weyl_index(i)));
                PolyMat rhs = pm_mul(res.terms[k].action.at(g.weyl_index(i)),
                                     pm_twist(dmat, g.matrix(g.inverse(i))));
                if (!pm_eq(lhs, rhs))
                    return {false, "differential does not commute with " + g.element_name(i)};
            }
            if (k + 1 < res.diffs.size()) {
                PolyMat comp = pm_mul(dmat, res.diffs[k + 1]);
                for (const auto& row : comp)
                    for (const auto& p : row)
                        if (!p.is_zero()) return {false, "differentials do not compose to zero"};
            }
        }
    }
    return {true, ""};
}

int default_degree_bound(const EquivariantModule& m, const FiniteReflectionGroup& g) {
    int maxgen = 0;
    for (int d : m.gen_degrees) maxgen = std::max(maxgen, d);
    if (m.resolution)
        for (const auto& term : m.resolution->terms)
            for (int d : term.gen_degrees) maxgen = std::max(maxgen, d);
    return static_cast<int>(g.reflections().size()) + maxgen + 2;
}

namespace {

// Entrywise test (A_gamma - id) subset I_fix(gamma) M for a free module.
VerdictWitness flat_isotropy(const EquivariantModule& m, const FiniteReflectionGroup& g) {
    std::size_t n = m.rank();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == g.identity()) continue;
        auto images = subspace_images(fixed_space_forms(g.matrix(i)), m.nvars);
        const PolyMat& a = m.action.at(g.weyl_index(i));
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                Poly entry = a[p][q];
                if (p == q) entry -= Poly::constant(m.nvars, Rat(1));
                if (entry.is_zero()) continue;
                if (!entry.substitute(images).is_zero())
                    return {false, "(A_" + g.element_name(i) +
                                       " - id) entry (" + std::to_string(p) + "," +
                                       std::to_string(q) + ") is not in the fixed ideal"};
            }
    }
    return {true, ""};
}

// Membership of a polynomial vector over the F0 generators in
// I_fix . F0 + im(d1), through the monomial cap.
bool in_ideal_plus_image(const std::vector<Poly>& target, const RatMat& forms,
                         const PolyMat& diff, int nvars, int cap) {
    auto monos = monomials_upto(nvars, cap);
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
    std::size_t n = target.size();
    auto to_row = [&](const std::vector<Poly>& vec) {
        RatVec row(n * monos.size(), Rat(0));
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [e, c] : vec[j].terms()) {
                auto it = idx.find(e);
                if (it == idx.end()) throw std::logic_error("membership cap too small");
                row[j * monos.size() + it->second] = c;
            }
        return row;
    };
    RatSpan span(n * monos.size());
    for (const RatVec& form : forms) {
        Poly lin(nvars);
        for (int v = 0; v < nvars; ++v)
            if (form[v] != 0) lin += Poly::var(nvars, v) * form[v];
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& me : monomials_upto(nvars, cap - 1)) {
                std::vector<Poly> vec(n, Poly(nvars));
                vec[j] = lin * Poly::monomial(me, Rat(1));
                span.add(to_row(vec));
            }
    }
    std::size_t cols = diff.empty() ? 0 : diff[0].size();
    for (std::size_t k = 0; k < cols; ++k) {
        int coldeg = 0;
        for (std::size_t j = 0; j < n; ++j) coldeg = std::max(coldeg, diff[j][k].total_degree());
        for (const auto& me : monomials_upto(nvars, cap - coldeg)) {
            std::vector<Poly> vec(n, Poly(nvars));
            for (std::size_t j = 0; j < n; ++j)
                vec[j] = diff[j][k] * Poly::monomial(me, Rat(1));
            span.add(to_row(vec));
        }
    }
    return span.contains(to_row(target));
}

VerdictWitness quotient_isotropy(const EquivariantModule& m, const FiniteReflectionGroup& g,
                                 int degree) {
    const PolyMat& d1 = m.resolution->diffs[0];
    std::size_t n = m.rank();
    int cap = degree;
    for (const auto& [w, a] : m.action)
        for (const auto& row : a)
            for (const auto& p : row) cap = std::max(cap, p.total_degree());
    for (const auto& row : d1)
        for (const auto& p : row) cap = std::max(cap, p.total_degree());
    cap += 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == g.identity()) continue;
        RatMat forms = fixed_space_forms(g.matrix(i));
        const PolyMat& a = m.action.at(g.weyl_index(i));
        for (std::size_t q = 0; q < n; ++q) {
            std::vector<Poly> col(n, Poly(m.nvars));
            for (std::size_t p = 0; p < n; ++p) {
                col[p] = a[p][q];
                if (p == q) col[p] -= Poly::constant(m.nvars, Rat(1));
            }
            bool zero = true;
            for (const auto& p : col) zero = zero && p.is_zero();
            if (zero) continue;
            if (!in_ideal_plus_image(col, forms, d1, m.nvars, cap))
                return {false, "(A_" + g.element_name(i) + " - id) on generator " +
                                   std::to_string(q) +
                                   " is not in I_fix F0 + im(d1)"};
        }
    }
    return {true, ""};
}

VerdictWitness flat_descends(const EquivariantModule& m, const FiniteReflectionGroup& g) {
    std::size_t n = m.rank();
    for (std::size_t k = 0; k < g.reflections().size(); ++k) {
        std::size_t s = g.reflections()[k];
        RatVec form = g.reflection_form(k);
        auto images = subspace_images({form}, m.nvars);
        for (std::size_t i = 0; i < g.size(); ++i) {
            // comodule components at gamma and gamma s: A_{gamma^{-1}} vs
            // A_{(gamma s)^{-1}}, congruent modulo the mirror of s.
            const PolyMat& a = m.action.at(g.weyl_index(g.inverse(i)));
            const PolyMat& b = m.action.at(g.weyl_index(g.inverse(g.mult(i, s))));
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    Poly diff = b[p][q] - a[p][q];
                    if (diff.is_zero()) continue;
                    if (!diff.substitute(images).is_zero())
                        return {false, "components at " + g.element_name(i) + " and (" +
                                           g.element_name(i) + ")(" + g.element_name(s) +
                                           ") differ off the mirror of " + g.element_name(s) +
                                           " at entry (" + std::to_string(p) + "," +
                                           std::to_string(q) + ")"};
                }
        }
    }
    return {true, ""};
}

}  // namespace

VerdictWitness isotropy_trivial(const EquivariantModule& m, const FiniteReflectionGroup& g,
                                int degree) {
    if (degree < 0) degree = default_degree_bound(m, g);
    if (m.flat()) return flat_isotropy(m, g);
    return quotient_isotropy(m, g, degree);
}

VerdictWitness derived_isotropy(const EquivariantModule& m, const FiniteReflectionGroup& g,
                                int degree) {
    if (degree < 0) degree = default_degree_bound(m, g);
    if (m.flat()) return flat_isotropy(m, g);
    for (std::size_t k = 0; k < m.resolution->terms.size(); ++k) {
        VerdictWitness v = flat_isotropy(m.resolution->terms[k], g);
        if (!v.verdict)
            return {false, "resolution term F" + std::to_string(k) + ": " + v.witness};
    }
    return {true, ""};
}

VerdictWitness descends(const EquivariantModule& m, const FiniteReflectionGroup& g, int degree) {
    if (degree < 0) degree = default_degree_bound(m, g);
    if (m.flat()) return flat_descends(m, g);
    for (std::size_t k = 0; k < m.resolution->terms.size(); ++k) {
        VerdictWitness v = flat_descends(m.resolution->terms[k], g);
        if (!v.verdict)
            return {false, "resolution term F" + std::to_string(k) + ": " + v.witness};
    }
    return {true, ""};
}

EquivalenceReport equivalence_witness(const RootDatum& d, const EquivariantModule& m,
                                      const std::vector<RatVec>& points, int degree) {
    EquivalenceReport rep;
    for (const RatVec& x : points) {
        StabilizerCertificate cert = stabilizer(d, x, RatVec(d.rank, Rat(0)));
        FiniteReflectionGroup grp = FiniteReflectionGroup::from_certificate(d, cert);
        ModuleCheck chk = validate_module(m, grp);
        if (!chk.ok) throw std::invalid_argument("module invalid at a point: " + chk.detail);
        EquivalenceRow row;
        row.point = x;
        row.stabilizer_order = grp.size();
        VerdictWitness naive = isotropy_trivial(m, grp, degree);
        VerdictWitness der = derived_isotropy(m, grp, degree);
        VerdictWitness desc = descends(m, grp, degree);
        row.naive_isotropy = naive.verdict;
        row.derived_isotropy_ok = der.verdict;
        row.descends_ok = desc.verdict;
        row.agree = der.verdict == desc.verdict;
        row.witness = !desc.witness.empty() ? desc.witness
                      : !der.witness.empty() ? der.witness
                                             : naive.witness;
        rep.all_agree = rep.all_agree && row.agree;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::size_t ExtendedModule::class_position(const std::string& cls) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] == cls) return i;
    throw std::invalid_argument("unknown pi1 class " + cls);
}

PolyMat ExtendedModule::action(const Aff& gamma) const {
    const RootDatum& d = *datum;
    std::size_t m = base->rank(), total = rank();
    PolyMat out(total, std::vector<Poly>(total, Poly(base->nvars)));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        std::size_t cp = class_position(
            d.pi1_class_str(d.pi1_class(vec_add(reps[c].lambda, gamma.lambda))));
        Aff delta = aff_compose(d, aff_compose(d, reps[c], gamma), aff_invert(d, reps[cp]));
        const PolyMat& block = base->action.at(delta.w);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) out[c * m + i][cp * m + j] = block[i][j];
    }
    return out;
}

ExtendedModule coinduce_extended(const RootDatum& d, const EquivariantModule& m) {
    for (const auto& [w, a] : m.action)
        for (const auto& row : a)
            for (const auto& p : row)
                if (p.total_degree() > 0)
                    throw std::invalid_argument(
                        "coinduction requires translation-invariant (constant) action entries");
    ExtendedModule out;
    out.datum = &d;
    out.base = &m;

    // All residue classes in lexicographic order; then hunt a length-zero
    // representative for each by factoring small lattice translations.
    std::vector<IntVec> residues{{}};
    for (const Int& dd : d.pi1_diag) {
        std::vector<IntVec> next;
        for (const IntVec& r : residues)
            for (Int v = 0; v < dd; ++v) {
                IntVec rr = r;
                rr.push_back(v);
                next.push_back(std::move(rr));
            }
        residues = std::move(next);
    }
    for (const IntVec& r : residues) out.classes.push_back(d.pi1_class_str(r));
    out.reps.assign(out.classes.size(), aff_identity(d));
    std::set<std::size_t> found{out.class_position(d.pi1_class_str(d.pi1_class(RatVec(d.rank, Rat(0)))))};
    int r = d.rank;
    std::vector<int> coeffs(r, -3);
    while (found.size() < out.classes.size()) {
        RatVec mu(r, Rat(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) mu[j] += Rat(coeffs[i]) * d.lattice_basis[i][j];
        std::size_t cls = out.class_position(d.pi1_class_str(d.pi1_class(mu)));
        if (!found.count(cls)) {
            out.reps[cls] = factorize(d, aff_translation(d, mu)).omega;
            found.insert(cls);
        }
        int k = r - 1;
        while (k >= 0 && coeffs[k] == 3) coeffs[k--] = -3;
        if (k < 0) throw std::logic_error("could not reach every pi1 class");
        ++coeffs[k];
    }
    return out;
}

std::optional<std::map<int, PolyMat>> equivariant_lift(const FiniteReflectionGroup& g,
                                                       const std::map<int, PolyMat>& f0_action,
                                                       const PolyMat& diff,
                                                       const std::vector<int>& f1_degrees,
                                                       const std::vector<int>& f0_degrees) {
    int nv = g.datum().rank;
    std::size_t m0 = f0_degrees.size(), m1 = f1_degrees.size();
    if (diff.size() != m0) return std::nullopt;
    int dmax = 0;
    for (const auto& row : diff)
        for (const auto& p : row) dmax = std::max(dmax, p.total_degree());

    std::map<int, PolyMat> lift;
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
        PolyMat rhs = pm_mul(f0_action.at(g.weyl_index(gi)),
                             pm_twist(diff, g.matrix(g.inverse(gi))));
        PolyMat x(m1, std::vector<Poly>(m1, Poly(nv)));
        for (std::size_t j = 0; j < m1; ++j) {
            // Unknown column j: entries of bounded degree f1[j] - f1[i].
            std::vector<std::vector<std::vector<int>>> entry_monos(m1);
            std::vector<std::size_t> offset(m1 + 1, 0);
            for (std::size_t i = 0; i < m1; ++i) {
                int bound = f1_degrees[j] - f1_degrees[i];
                if (bound >= 0) entry_monos[i] = monomials_upto(nv, bound);
                offset[i + 1] = offset[i] + entry_monos[i].size();
            }
            int outcap = dmax + f1_degrees[j];
            auto out_monos = monomials_upto(nv, outcap);
            std::map<std::vector<int>, std::size_t> oidx;
            for (std::size_t t = 0; t < out_monos.size(); ++t) oidx[out_monos[t]] = t;
            RatMat sys(m0 * out_monos.size(), RatVec(offset[m1], Rat(0)));
            RatVec b(m0 * out_monos.size(), Rat(0));
            for (std::size_t i = 0; i < m1; ++i)
                for (std::size_t t = 0; t < entry_monos[i].size(); ++t) {
                    Poly mono = Poly::monomial(entry_monos[i][t], Rat(1));
                    for (std::size_t a = 0; a < m0; ++a) {
                        Poly prod = diff[a][i] * mono;
                        for (const auto& [e, c] : prod.terms())
                            sys[a * out_monos.size() + oidx.at(e)][offset[i] + t] += c;
                    }
                }
            for (std::size_t a = 0; a < m0; ++a)
                for (const auto& [e, c] : rhs[a][j].terms()) {
                    auto it = oidx.find(e);
                    if (it == oidx.end()) return std::nullopt;
                    b[a * out_monos.size() + it->second] = c;
                }
            auto sol = solve(sys, b);
            if (!sol) return std::nullopt;
            for (std::size_t i = 0; i < m1; ++i)
                for (std::size_t t = 0; t < entry_monos[i].size(); ++t)
                    if ((*sol)[offset[i] + t] != 0)
                        x[i][j].add_term(entry_monos[i][t], (*sol)[offset[i] + t]);
        }
        lift[g.weyl_index(gi)] = std::move(x);
    }

    // Exactness and the cocycle are validated before accepting the lift.
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
        PolyMat rhs = pm_mul(f0_action.at(g.weyl_index(gi)),
                             pm_twist(diff, g.matrix(g.inverse(gi))));
        if (!pm_eq(pm_mul(diff, lift.at(g.weyl_index(gi))), rhs)) return std::nullopt;
    }
    if (!pm_eq(lift.at(0), pm_identity(m1, nv))) return std::nullopt;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            const PolyMat& lhs = lift.at(g.weyl_index(g.mult(i, j)));
            PolyMat rhs = pm_mul(lift.at(g.weyl_index(i)),
                                 pm_twist(lift.at(g.weyl_index(j)), g.matrix(g.inverse(i))));
            if (!pm_eq(lhs, rhs)) return std::nullopt;
        }
    return lift;
}

}  // namespace alcove
