#include "alcove/gkm.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

namespace alcove {

namespace {

std::map<std::vector<int>, std::size_t> index_monomials(const std::vector<std::vector<int>>& monos) {
    std::map<std::vector<int>, std::size_t> idx;
    for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = i;
    return idx;
}

// Images for substituting the lowest-index pivot variable of the edge label
// <y,alpha^vee> - k hbar by the solved expression; vanishing of a polynomial
// after this substitution is equivalent to divisibility by the (degree-one,
// hence prime) label.
std::vector<Poly> label_substitution(const MomentGraph& g, const MomentGraph::Edge& e,
                                     HbarMode mode) {
    const RootDatum& d = *g.datum;
    const RatVec& dv = d.roots[e.root].coroot_coords;
    int nv = g.poly_vars(mode);
    std::size_t pivot = 0;
    while (pivot < dv.size() && dv[pivot] == 0) ++pivot;
    std::vector<Poly> images;
    images.reserve(nv);
    for (int j = 0; j < nv; ++j) images.push_back(Poly::var(nv, j));
    Poly solved = mode == HbarMode::formal ? Poly::var(nv, d.rank) * e.level
                                           : Poly::constant(nv, e.level);
    for (std::size_t j = 0; j < dv.size(); ++j)
        if (j != pivot && dv[j] != 0) solved -= Poly::var(nv, static_cast<int>(j)) * dv[j];
    images[pivot] = solved * (Rat(1) / dv[pivot]);
    return images;
}

RatVec tuple_row(const SectionTuple& t, const std::map<std::vector<int>, std::size_t>& mono_idx,
                 std::size_t mono_count) {
    RatVec row(t.size() * mono_count, Rat(0));
    for (std::size_t v = 0; v < t.size(); ++v)
        for (const auto& [expo, c] : t[v].terms()) {
            auto it = mono_idx.find(expo);
            if (it == mono_idx.end()) throw std::logic_error("tuple degree exceeds the bound");
            row[v * mono_count + it->second] = c;
        }
    return row;
}

}  // namespace

std::size_t MomentGraph::vertex_index(const Aff& g) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == g) return i;
    throw std::invalid_argument("element is not a vertex of the moment graph");
}

Poly MomentGraph::edge_label(const Edge& e, HbarMode mode) const {
    int nv = poly_vars(mode);
    const RatVec& dv = datum->roots[e.root].coroot_coords;
    Poly label(nv);
    for (std::size_t j = 0; j < dv.size(); ++j)
        if (dv[j] != 0) label += Poly::var(nv, static_cast<int>(j)) * dv[j];
    if (mode == HbarMode::formal)
        label -= Poly::var(nv, datum->rank) * e.level;
    else
        label -= Poly::constant(nv, e.level);
    return label;
}

MomentGraph build_moment_graph(const RootDatum& d, const std::vector<Aff>& omega) {
    if (omega.empty()) throw std::invalid_argument("moment graph needs at least one vertex");
    std::set<std::string> keys;
    for (const Aff& a : omega)
        if (!keys.insert(aff_key(a)).second)
            throw std::invalid_argument("duplicate vertex in moment graph");
    if (!is_bruhat_closed(d, omega))
        throw std::invalid_argument("vertex set is not Bruhat closed");

    MomentGraph g;
    g.datum = &d;
    g.vertices = omega;
    std::stable_sort(g.vertices.begin(), g.vertices.end(), [&](const Aff& a, const Aff& b) {
        long la = aff_length(d, a), lb = aff_length(d, b);
        if (la != lb) return la < lb;
        return aff_key(a) < aff_key(b);
    });
    for (const Aff& a : g.vertices) g.lengths.push_back(aff_length(d, a));

    // gamma' = gamma s for an affine reflection s of W^aff; pairs in distinct
    // W^aff-cosets never qualify because their quotient has a length-zero part.
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
            Aff s = aff_compose(d, aff_invert(d, g.vertices[i]), g.vertices[j]);
            auto refl = as_reflection(d, s);
            if (!refl || !is_integer(refl->second)) continue;
            g.edges.push_back({i, j, refl->first, refl->second});
        }
    return g;
}

SectionCheck is_section(const SectionTuple& t, const MomentGraph& g, HbarMode mode) {
    if (t.size() != g.vertices.size())
        throw std::invalid_argument("tuple size does not match the vertex count");
    int nv = g.poly_vars(mode);
    for (const Poly& p : t)
        if (p.nvars() != nv) throw std::invalid_argument("tuple component in the wrong ring");
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        Poly diff = t[g.edges[e].a] - t[g.edges[e].b];
        if (diff.is_zero()) continue;
        if (!diff.substitute(label_substitution(g, g.edges[e], mode)).is_zero())
            return {false, e};
    }
    return {true, std::nullopt};
}

SectionTuple GradedSubspace::tuple_of_row(const MomentGraph& g, const RatVec& row) const {
    if (row.size() != g.vertices.size() * monos.size())
        throw std::invalid_argument("row width does not match the subspace layout");
    SectionTuple t(g.vertices.size(), Poly(nvars));
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (std::size_t m = 0; m < monos.size(); ++m) {
            const Rat& c = row[v * monos.size() + m];
            if (c != 0) t[v].add_term(monos[m], c);
        }
    return t;
}

GradedSubspace section_space(const MomentGraph& g, int degree, HbarMode mode) {
    if (degree < 0) throw std::invalid_argument("degree bound must be nonnegative");
    const std::size_t V = g.vertices.size();
    GradedSubspace out;
    out.mode = mode;
    out.nvars = g.poly_vars(mode);
    out.monos = monomials_upto(out.nvars, degree);
    auto mono_idx = index_monomials(out.monos);
    const std::size_t M = out.monos.size();
    const std::size_t width = V * M;

    std::vector<std::vector<Poly>> images;
    images.reserve(g.edges.size());
    for (const auto& e : g.edges) images.push_back(label_substitution(g, e, mode));

    std::vector<RatVec> cumulative;  // formal mode: graded pieces stack up
    out.bases.resize(degree + 1);
    out.dims.resize(degree + 1, 0);
    out.graded_dims.resize(degree + 1, 0);

    for (int k = 0; k <= degree; ++k) {
        auto block = mode == HbarMode::formal ? monomials_exact(out.nvars, k)
                                              : monomials_upto(out.nvars, k);
        const std::size_t m = block.size();
        // Coefficient rows of the maps xi -> (xi_a - xi_b) o substitution,
        // one row per output monomial per edge.
        std::vector<RatVec> rows;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            std::map<std::vector<int>, RatVec> by_mono;
            for (std::size_t t = 0; t < m; ++t) {
                Poly sub = Poly::monomial(block[t], Rat(1)).substitute(images[e]);
                for (const auto& [expo, c] : sub.terms()) {
                    auto it = by_mono.find(expo);
                    if (it == by_mono.end())
                        it = by_mono.emplace(expo, RatVec(V * m, Rat(0))).first;
                    it->second[g.edges[e].a * m + t] += c;
                    it->second[g.edges[e].b * m + t] -= c;
                }
            }
            for (auto& [expo, row] : by_mono) rows.push_back(std::move(row));
        }

        RatMat null_rows;
        if (rows.empty()) {
            null_rows.assign(V * m, RatVec(V * m, Rat(0)));
            for (std::size_t i = 0; i < V * m; ++i) null_rows[i][i] = 1;
        } else {
            null_rows = nullspace(rows);
        }

        std::vector<RatVec> embedded;
        embedded.reserve(null_rows.size());
        for (const RatVec& nr : null_rows) {
            RatVec full(width, Rat(0));
            for (std::size_t v = 0; v < V; ++v)
                for (std::size_t t = 0; t < m; ++t)
                    if (nr[v * m + t] != 0) full[v * M + mono_idx.at(block[t])] = nr[v * m + t];
            embedded.push_back(std::move(full));
        }

        if (mode == HbarMode::formal) {
            out.graded_dims[k] = embedded.size();
            for (auto& r : embedded) cumulative.push_back(std::move(r));
            out.bases[k] = cumulative;
            out.dims[k] = cumulative.size();
        } else {
            out.dims[k] = embedded.size();
            out.graded_dims[k] = out.dims[k] - (k > 0 ? out.dims[k - 1] : 0);
            out.bases[k] = std::move(embedded);
        }
    }
    return out;
}

GradedSubspace adjacency_subalgebra(const MomentGraph& g, int degree, HbarMode mode) {
    if (degree < 0) throw std::invalid_argument("degree bound must be nonnegative");
    const RootDatum& d = *g.datum;
    const std::size_t V = g.vertices.size();
    const int r = d.rank;
    GradedSubspace out;
    out.mode = mode;
    out.nvars = g.poly_vars(mode);
    out.monos = monomials_upto(out.nvars, degree);
    auto mono_idx = index_monomials(out.monos);
    const std::size_t M = out.monos.size();
    const int nv = out.nvars;

    // Degree-zero generators: one idempotent per component-class of pi1
    // present among the vertices.
    std::map<std::string, std::vector<std::size_t>> classes;
    for (std::size_t v = 0; v < V; ++v)
        classes[d.pi1_class_str(d.pi1_class(g.vertices[v].lambda))].push_back(v);
    std::vector<SectionTuple> deg0;
    for (const auto& [cls, members] : classes) {
        SectionTuple t(V, Poly(nv));
        for (std::size_t v : members) t[v] = Poly::constant(nv, Rat(1));
        deg0.push_back(std::move(t));
    }

    // Degree-one generators: pulled-back coordinates t#(z_i), twisted
    // coordinates s#(z_i) with component z_i(gamma^hbar y), and hbar itself
    // in formal mode.
    std::vector<SectionTuple> deg1;
    for (int i = 0; i < r; ++i) deg1.emplace_back(V, Poly::var(nv, i));
    for (int i = 0; i < r; ++i) {
        SectionTuple t;
        t.reserve(V);
        for (const Aff& gamma : g.vertices) {
            const RatMat& mw = d.weyl[gamma.w];
            RatVec shift = d.fw_of_root_coords(gamma.lambda);
            Poly p(nv);
            for (int j = 0; j < r; ++j)
                if (mw[i][j] != 0) p += Poly::var(nv, j) * mw[i][j];
            if (shift[i] != 0)
                p += mode == HbarMode::formal ? Poly::var(nv, r) * shift[i]
                                              : Poly::constant(nv, shift[i]);
            t.push_back(std::move(p));
        }
        deg1.push_back(std::move(t));
    }
    if (mode == HbarMode::formal) deg1.emplace_back(V, Poly::var(nv, r));

    RatSpan span(V * M);
    std::vector<SectionTuple> frontier;
    out.bases.resize(degree + 1);
    out.dims.resize(degree + 1, 0);
    out.graded_dims.resize(degree + 1, 0);

    for (const auto& t : deg0)
        if (span.add(tuple_row(t, mono_idx, M))) frontier.push_back(t);
    out.bases[0] = span.rows();
    out.dims[0] = span.dim();
    out.graded_dims[0] = span.dim();

    // Every product of generators of total degree <= k is an idempotent times
    // a monomial in the degree-one generators, so multiplying the previous
    // level's new elements by each degree-one generator exhausts level k.
    for (int k = 1; k <= degree; ++k) {
        std::vector<SectionTuple> next;
        for (const auto& gen : deg1)
            for (const auto& t : frontier) {
                SectionTuple prod;
                prod.reserve(V);
                for (std::size_t v = 0; v < V; ++v) prod.push_back(gen[v] * t[v]);
                if (span.add(tuple_row(prod, mono_idx, M))) next.push_back(std::move(prod));
            }
        frontier = std::move(next);
        out.bases[k] = span.rows();
        out.dims[k] = span.dim();
        out.graded_dims[k] = out.dims[k] - out.dims[k - 1];
    }
    return out;
}

KernelEqualityReport kernel_equality_report(const MomentGraph& g, int d_max, HbarMode mode) {
    GradedSubspace ker = section_space(g, d_max, mode);
    GradedSubspace adj = adjacency_subalgebra(g, d_max, mode);
    KernelEqualityReport rep;
    for (int k = 0; k <= d_max; ++k)
        rep.rows.push_back({k, adj.dims[k], ker.dims[k], adj.dims[k] == ker.dims[k]});
    for (const RatVec& row : adj.bases[d_max]) {
        if (!is_section(adj.tuple_of_row(g, row), g, mode).ok) {
            rep.inclusion_ok = false;
            break;
        }
    }
    if (rep.rows.back().equal) {
        int s = d_max;
        while (s > 0 && rep.rows[s - 1].equal) --s;
        rep.saturation_degree = s;
    }
    return rep;
}

namespace {

// f(gamma(y)) at hbar = 1: substitution images of the affine action.
std::vector<Poly> action_images(const RootDatum& d, const Aff& gamma) {
    const int r = d.rank;
    const RatMat& mw = d.weyl[gamma.w];
    RatVec shift = d.fw_of_root_coords(gamma.lambda);
    std::vector<Poly> images;
    images.reserve(r);
    for (int i = 0; i < r; ++i) {
        Poly p(r);
        for (int j = 0; j < r; ++j)
            if (mw[i][j] != 0) p += Poly::var(r, j) * mw[i][j];
        if (shift[i] != 0) p += Poly::constant(r, shift[i]);
        images.push_back(std::move(p));
    }
    return images;
}

Poly random_poly(int nv, int degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Poly p(nv);
    for (const auto& e : monomials_upto(nv, degree)) {
        int c = coeff(rng);
        if (c != 0) p.add_term(e, Rat(c));
    }
    return p;
}

}  // namespace

BetaReport verify_beta_section(const RootDatum& d, const RatVec& x, const MomentGraph& g,
                               int degree, unsigned seed) {
    const int r = d.rank;
    const std::size_t V = g.vertices.size();
    StabilizerCertificate cert = stabilizer(d, x, RatVec(r, Rat(0)));
    std::vector<std::size_t> stab_idx;
    for (const Aff& gamma : cert.ext_elements) {
        bool found = false;
        for (std::size_t v = 0; v < V; ++v)
            if (g.vertices[v] == gamma) {
                stab_idx.push_back(v);
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("stabilizer not contained in Omega");
    }

    BetaReport rep;
    rep.stabilizer_order = stab_idx.size();
    Rat inv_order = Rat(1) / Rat(static_cast<long>(stab_idx.size()));

    auto beta = [&](const SectionTuple& t) {
        Poly sum(r);
        for (std::size_t v : stab_idx) sum += t[v];
        return sum * inv_order;
    };
    auto s_sharp = [&](const Poly& f) {
        SectionTuple t;
        t.reserve(V);
        for (const Aff& gamma : g.vertices) t.push_back(f.substitute(action_images(d, gamma)));
        return t;
    };

    // (a) beta_x . t# is the identity on every monomial up to the bound.
    for (const auto& e : monomials_upto(r, degree)) {
        Poly m = Poly::monomial(e, Rat(1));
        if (!(beta(SectionTuple(V, m)) == m)) rep.retraction_ok = false;
    }

    // (b) beta_x(t#(f) xi) = f beta_x(xi) on random samples.
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 6; ++trial) {
        Poly f = random_poly(r, 2, rng);
        SectionTuple xi;
        xi.reserve(V);
        for (std::size_t v = 0; v < V; ++v) xi.push_back(random_poly(r, 2, rng));
        SectionTuple prod;
        prod.reserve(V);
        for (std::size_t v = 0; v < V; ++v) prod.push_back(f * xi[v]);
        if (!(beta(prod) == f * beta(xi))) rep.linear_ok = false;
    }

    // (c) u = beta_x(s#(f)) is fixed by the whole stabilizer.
    std::vector<Poly> samples;
    for (const auto& e : monomials_upto(r, degree)) samples.push_back(Poly::monomial(e, Rat(1)));
    samples.push_back(random_poly(r, degree, rng));
    for (const Poly& f : samples) {
        Poly u = beta(s_sharp(f));
        for (const Aff& gamma : cert.ext_elements)
            if (!(u.substitute(action_images(d, gamma)) == u)) rep.invariance_ok = false;
    }
    return rep;
}

SeparationResult separates(const RootDatum& d, const Aff& gamma, const Aff& gamma2,
                           const RatVec& y) {
    RatVec p1 = aff_act(d, gamma, y, Rat(1));
    RatVec p2 = aff_act(d, gamma2, y, Rat(1));
    if (p1 != p2)
        throw std::invalid_argument("separates: the two points do not coincide downstairs");

    std::string c1 = d.pi1_class_str(d.pi1_class(gamma.lambda));
    std::string c2 = d.pi1_class_str(d.pi1_class(gamma2.lambda));
    SeparationResult res;
    res.separated = c1 != c2;

    // Cross-validation: evaluate each adjacency generator at the two points.
    // t#(z_i) reads the shared tail y and cannot disagree; s#(z_i) reads the
    // image points, equal by the precondition just checked; the component
    // idempotents disagree exactly when the pi1 classes do.
    bool generators_separate = false;
    for (int i = 0; i < d.rank; ++i)
        if (p1[i] != p2[i]) generators_separate = true;
    std::set<std::string> class_set{c1, c2};
    for (const std::string& cls : class_set) {
        Rat e1 = c1 == cls ? 1 : 0;
        Rat e2 = c2 == cls ? 1 : 0;
        if (e1 != e2) generators_separate = true;
    }
    res.cross_validated = generators_separate == res.separated;
    return res;
}

std::vector<std::vector<Aff>> bruhat_ideals(const RootDatum& d, std::size_t max_size) {
    std::vector<std::vector<Aff>> out;
    if (max_size == 0) return out;
    const long max_len = static_cast<long>(max_size) - 1;

    // Universe: the length <= max_size - 1 ball of W^aff (any ideal of size
    // <= max_size only reaches that far, since lower intervals are chains at
    // least as long as the length).
    std::vector<Aff> ball{aff_identity(d)};
    std::map<std::string, std::size_t> index{{aff_key(ball[0]), 0}};
    std::vector<int> ids = affine_generator_ids(d);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        Aff a = ball[cur];
        long la = aff_length(d, a);
        if (la == max_len) continue;
        for (int id : ids) {
            Aff b = aff_compose(d, a, affine_generator(d, id));
            if (aff_length(d, b) != la + 1) continue;
            auto [it, fresh] = index.emplace(aff_key(b), ball.size());
            if (fresh) {
                ball.push_back(b);
                queue.push_back(it->second);
            }
        }
    }
    std::vector<std::size_t> order(ball.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        long la = aff_length(d, ball[a]), lb = aff_length(d, ball[b]);
        if (la != lb) return la < lb;
        return aff_key(ball[a]) < aff_key(ball[b]);
    });
    std::vector<Aff> elems;
    elems.reserve(ball.size());
    for (std::size_t i : order) elems.push_back(ball[i]);
    index.clear();
    for (std::size_t i = 0; i < elems.size(); ++i) index[aff_key(elems[i])] = i;

    // Lower covers via single-letter deletions from a reduced word.
    std::vector<std::vector<std::size_t>> covers(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        std::vector<int> word = factorize(d, elems[i]).word;
        std::set<std::size_t> below;
        for (std::size_t skip = 0; skip < word.size(); ++skip) {
            Aff v = aff_identity(d);
            for (std::size_t j = 0; j < word.size(); ++j)
                if (j != skip) v = aff_compose(d, v, affine_generator(d, word[j]));
            if (aff_length(d, v) + 1 != static_cast<long>(word.size())) continue;
            auto it = index.find(aff_key(v));
            if (it != index.end()) below.insert(it->second);
        }
        covers[i].assign(below.begin(), below.end());
    }

    // Breadth-first growth: extend each ideal by one element all of whose
    // lower covers are already present.
    std::set<std::vector<std::size_t>> seen;
    std::deque<std::vector<std::size_t>> work;
    std::vector<std::size_t> start{index.at(aff_key(aff_identity(d)))};
    seen.insert(start);
    work.push_back(start);
    while (!work.empty()) {
        std::vector<std::size_t> cur = work.front();
        work.pop_front();
        if (cur.size() == max_size) continue;
        std::vector<bool> in_cur(elems.size(), false);
        for (std::size_t i : cur) in_cur[i] = true;
        for (std::size_t cand = 0; cand < elems.size(); ++cand) {
            if (in_cur[cand]) continue;
            bool ok = true;
            for (std::size_t c : covers[cand])
                if (!in_cur[c]) {
                    ok = false;
                    break;
                }
            if (covers[cand].empty() && aff_length(d, elems[cand]) > 0) ok = false;
            if (!ok) continue;
            std::vector<std::size_t> next = cur;
            next.insert(std::lower_bound(next.begin(), next.end(), cand), cand);
            if (seen.insert(next).second) work.push_back(next);
        }
    }

    for (const auto& idx_set : seen) {
        std::vector<Aff> ideal;
        ideal.reserve(idx_set.size());
        for (std::size_t i : idx_set) ideal.push_back(elems[i]);
        out.push_back(std::move(ideal));
    }
    std::sort(out.begin(), out.end(), [&](const std::vector<Aff>& a, const std::vector<Aff>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string ka = aff_key(a[i]), kb = aff_key(b[i]);
            if (ka != kb) return ka < kb;
        }
        return false;
    });
    return out;
}

}  // namespace alcove
