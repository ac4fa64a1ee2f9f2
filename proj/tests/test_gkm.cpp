#include <doctest.h>

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "alcove/gkm.hpp"

using namespace alcove;

namespace {

Aff word_to_aff(const RootDatum& d, const std::vector<int>& word) {
    Aff a = aff_identity(d);
    for (int id : word) a = aff_compose(d, a, affine_generator(d, id));
    return a;
}

long binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Independent oracle for the freeness identity: the exact-degree-d dimension
// predicted by a free module with one generator in degree l(gamma) per vertex
// over polynomials in rank+1 variables.
long free_module_dim(const MomentGraph& g, int d) {
    long total = 0;
    for (long l : g.lengths)
        if (d >= l) total += binom(d - l + g.datum->rank, g.datum->rank);
    return total;
}

std::set<std::tuple<std::string, std::string, std::string>> edge_set(const RootDatum& d,
                                                                     const MomentGraph& g) {
    std::set<std::tuple<std::string, std::string, std::string>> s;
    for (const auto& e : g.edges) {
        std::string ka = aff_key(g.vertices[e.a]), kb = aff_key(g.vertices[e.b]);
        if (kb < ka) std::swap(ka, kb);
        s.insert({ka, kb, rat_str(e.level)});
    }
    return s;
}

bool rows_contained(const RatMat& small, const RatMat& big) {
    if (big.empty()) return small.empty();
    RatSpan span(big[0].size());
    for (const auto& r : big) span.add(r);
    for (const auto& r : small)
        if (!span.contains(r)) return false;
    return true;
}

}  // namespace

TEST_CASE("A1 interval [e, s0 s1]: vertices, edges and labels") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    Aff s0 = affine_generator(d, 0), s1 = affine_generator(d, 1);
    Aff top = word_to_aff(d, {0, 1});  // = t_alpha
    MomentGraph g = build_moment_graph(d, bruhat_interval(d, top));

    REQUIRE(g.vertices.size() == 4);
    CHECK(g.lengths == std::vector<long>{0, 1, 1, 2});
    CHECK(g.vertices[0] == aff_identity(d));
    CHECK(g.vertices[3] == top);

    // Hand oracle: e-s0 along s_{alpha,1}, e-s1 along s_alpha, s0-top along
    // s_alpha, s1-top along s_{alpha,-1}; the pairs e-top and s0-s1 differ by
    // translations and carry no edge.
    std::set<std::tuple<std::string, std::string, std::string>> expected;
    auto put = [&](const Aff& x, const Aff& y, const char* level) {
        std::string ka = aff_key(x), kb = aff_key(y);
        if (kb < ka) std::swap(ka, kb);
        expected.insert({ka, kb, level});
    };
    put(aff_identity(d), s0, "1");
    put(aff_identity(d), s1, "0");
    put(s0, top, "0");
    put(s1, top, "-1");
    CHECK(edge_set(d, g) == expected);
    for (const auto& e : g.edges) CHECK(e.root == d.positive_roots[0]);

    auto names_f = var_names(1, true);
    auto names_1 = var_names(1, false);
    for (const auto& e : g.edges) {
        if (g.vertices[e.a] == aff_identity(d) && g.vertices[e.b] == s0) {
            CHECK(g.edge_label(e, HbarMode::formal) == parse_poly("y1 - h", names_f));
            CHECK(g.edge_label(e, HbarMode::set_to_1) == parse_poly("y1 - 1", names_1));
        }
    }
}

TEST_CASE("moment graph construction rejects bad vertex sets") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    Aff top = word_to_aff(d, {0, 1});
    CHECK_THROWS_AS(build_moment_graph(d, {aff_identity(d), top}), std::invalid_argument);
    CHECK_THROWS_AS(build_moment_graph(d, {aff_identity(d), aff_identity(d)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_moment_graph(d, {}), std::invalid_argument);
}

TEST_CASE("is_section: frozen examples on the A1 four-vertex graph") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    Aff s0 = affine_generator(d, 0), s1 = affine_generator(d, 1);
    Aff top = word_to_aff(d, {0, 1});
    MomentGraph g = build_moment_graph(d, bruhat_interval(d, top));
    std::size_t ie = g.vertex_index(aff_identity(d)), i0 = g.vertex_index(s0),
                i1 = g.vertex_index(s1), it = g.vertex_index(top);

    auto nf = var_names(1, true);
    SectionTuple consts(4, parse_poly("5/2", nf));
    CHECK(is_section(consts, g, HbarMode::formal).ok);

    // s#(y): component z(gamma^hbar y) per vertex, divisibilities by hand.
    SectionTuple ssharp(4, Poly(2));
    ssharp[ie] = parse_poly("y1", nf);
    ssharp[i0] = parse_poly("2*h - y1", nf);
    ssharp[i1] = parse_poly("-y1", nf);
    ssharp[it] = parse_poly("y1 + 2*h", nf);
    CHECK(is_section(ssharp, g, HbarMode::formal).ok);

    auto n1 = var_names(1, false);
    SectionTuple ssharp1(4, Poly(1));
    ssharp1[ie] = parse_poly("y1", n1);
    ssharp1[i0] = parse_poly("2 - y1", n1);
    ssharp1[i1] = parse_poly("-y1", n1);
    ssharp1[it] = parse_poly("y1 + 2", n1);
    CHECK(is_section(ssharp1, g, HbarMode::set_to_1).ok);

    // (y,0,0,0) survives the e-s1 edge (difference y1, label y1) but fails
    // e-s0, whose label is y1 - h.
    SectionTuple bad(4, Poly(2));
    bad[ie] = parse_poly("y1", nf);
    auto chk = is_section(bad, g, HbarMode::formal);
    CHECK_FALSE(chk.ok);
    REQUIRE(chk.failing_edge.has_value());
    const auto& fe = g.edges[*chk.failing_edge];
    CHECK(((g.vertices[fe.a] == aff_identity(d) && g.vertices[fe.b] == s0) ||
           (g.vertices[fe.b] == aff_identity(d) && g.vertices[fe.a] == s0)));
    CHECK(fe.level == 1);

    CHECK_THROWS_AS(is_section(SectionTuple(3, Poly(2)), g, HbarMode::formal),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_section(SectionTuple(4, Poly(1)), g, HbarMode::formal),
                    std::invalid_argument);
}

TEST_CASE("section_space, formal mode: frozen graded dimensions and freeness") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);

    MomentGraph g2 = build_moment_graph(d, bruhat_interval(d, affine_generator(d, 0)));
    GradedSubspace s2 = section_space(g2, 6, HbarMode::formal);
    CHECK(s2.graded_dims == std::vector<std::size_t>{1, 3, 5, 7, 9, 11, 13});
    CHECK(s2.dims == std::vector<std::size_t>{1, 4, 9, 16, 25, 36, 49});

    MomentGraph g4 = build_moment_graph(d, bruhat_interval(d, word_to_aff(d, {0, 1})));
    GradedSubspace s4 = section_space(g4, 6, HbarMode::formal);
    CHECK(s4.graded_dims == std::vector<std::size_t>{1, 4, 8, 12, 16, 20, 24});

    for (int k = 0; k <= 6; ++k) {
        CHECK(static_cast<long>(s2.graded_dims[k]) == free_module_dim(g2, k));
        CHECK(static_cast<long>(s4.graded_dims[k]) == free_module_dim(g4, k));
    }

    // Bases are independent, nested, and made of sections.
    CHECK(mat_rank(s4.bases[6]) == s4.dims[6]);
    CHECK(rows_contained(s4.bases[3], s4.bases[6]));
    for (const auto& row : s4.bases[6])
        CHECK(is_section(s4.tuple_of_row(g4, row), g4, HbarMode::formal).ok);
}

TEST_CASE("section_space, hbar = 1: frozen filtered dimensions") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    auto dims = [&](const std::vector<Aff>& omega) {
        return section_space(build_moment_graph(d, omega), 6, HbarMode::set_to_1).dims;
    };
    CHECK(dims({aff_identity(d)}) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
    CHECK(dims(bruhat_interval(d, affine_generator(d, 0))) ==
          std::vector<std::size_t>{1, 3, 5, 7, 9, 11, 13});
    CHECK(dims(bruhat_interval(d, affine_generator(d, 1))) ==
          std::vector<std::size_t>{1, 3, 5, 7, 9, 11, 13});
    CHECK(dims(bruhat_interval(d, word_to_aff(d, {0, 1}))) ==
          std::vector<std::size_t>{1, 4, 8, 12, 16, 20, 24});
    CHECK(dims({aff_identity(d), affine_generator(d, 0), affine_generator(d, 1)}) ==
          std::vector<std::size_t>{1, 4, 7, 10, 13, 16, 19});
}

TEST_CASE("section_space freeness on small affine A2 ideals") {
    RootDatum d = build_root_datum("A2", Isogeny::adjoint);
    for (auto word : std::vector<std::vector<int>>{{1, 2}, {0}, {0, 1}}) {
        MomentGraph g = build_moment_graph(d, bruhat_interval(d, word_to_aff(d, word)));
        GradedSubspace s = section_space(g, 4, HbarMode::formal);
        for (int k = 0; k <= 4; ++k)
            CHECK(static_cast<long>(s.graded_dims[k]) == free_module_dim(g, k));
        for (const auto& row : s.bases[4])
            CHECK(is_section(s.tuple_of_row(g, row), g, HbarMode::formal).ok);
    }
}

TEST_CASE("adjacency subalgebra vs kernel: A1 frozen tables") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);

    // Two-vertex interval: the algebra generated by 1, (y,y), (y,2-y) fills
    // the kernel at every degree.
    MomentGraph g2 = build_moment_graph(d, bruhat_interval(d, affine_generator(d, 0)));
    KernelEqualityReport r2 = kernel_equality_report(g2, 6, HbarMode::set_to_1);
    REQUIRE(r2.rows.size() == 7);
    for (const auto& row : r2.rows) {
        CHECK(row.dim_adjacency == static_cast<std::size_t>(2 * row.degree + 1));
        CHECK(row.equal);
    }
    CHECK(r2.inclusion_ok);
    CHECK(r2.saturation_degree == 0);

    // Same interval, formal hbar: products of (y,y), (y,2h-y), h and 1 again
    // exhaust the sections, degreewise (d+1)^2.
    KernelEqualityReport r2f = kernel_equality_report(g2, 6, HbarMode::formal);
    for (const auto& row : r2f.rows) {
        CHECK(row.dim_kernel == static_cast<std::size_t>((row.degree + 1) * (row.degree + 1)));
        CHECK(row.equal);
    }
    CHECK(r2f.saturation_degree == 0);

    // Four-vertex interval [e, s0 s1]: componentwise values of P(u,v) on the
    // four lines v = u, 2-u, -u, u+2, so dim C(d+2,2) minus C(d-2,2) for the
    // quartic vanishing ideal: 1,3,6,10,14,18,22 against kernel 1,4,8,...,24.
    MomentGraph g4 = build_moment_graph(d, bruhat_interval(d, word_to_aff(d, {0, 1})));
    KernelEqualityReport r4 = kernel_equality_report(g4, 6, HbarMode::set_to_1);
    std::vector<std::size_t> adj{1, 3, 6, 10, 14, 18, 22}, ker{1, 4, 8, 12, 16, 20, 24};
    for (int k = 0; k <= 6; ++k) {
        CHECK(r4.rows[k].dim_adjacency == adj[k]);
        CHECK(r4.rows[k].dim_kernel == ker[k]);
        CHECK(r4.rows[k].equal == (k == 0));
    }
    CHECK(r4.inclusion_ok);
    CHECK_FALSE(r4.saturation_degree.has_value());

    // Three-element ideal {e, s0, s1}: cubic vanishing ideal, gap of one.
    MomentGraph g3 = build_moment_graph(
        d, {aff_identity(d), affine_generator(d, 0), affine_generator(d, 1)});
    KernelEqualityReport r3 = kernel_equality_report(g3, 6, HbarMode::set_to_1);
    std::vector<std::size_t> adj3{1, 3, 6, 9, 12, 15, 18}, ker3{1, 4, 7, 10, 13, 16, 19};
    for (int k = 0; k <= 6; ++k) {
        CHECK(r3.rows[k].dim_adjacency == adj3[k]);
        CHECK(r3.rows[k].dim_kernel == ker3[k]);
    }
    CHECK(r3.inclusion_ok);
    CHECK_FALSE(r3.saturation_degree.has_value());
}

TEST_CASE("adjacency basis elements are sections on an A2 ideal") {
    RootDatum d = build_root_datum("A2", Isogeny::adjoint);
    MomentGraph g = build_moment_graph(d, bruhat_interval(d, word_to_aff(d, {1, 2})));
    GradedSubspace a = adjacency_subalgebra(g, 3, HbarMode::set_to_1);
    GradedSubspace k = section_space(g, 3, HbarMode::set_to_1);
    for (const auto& row : a.bases[3])
        CHECK(is_section(a.tuple_of_row(g, row), g, HbarMode::set_to_1).ok);
    for (int t = 0; t <= 3; ++t) CHECK(a.dims[t] <= k.dims[t]);
    CHECK(rows_contained(a.bases[3], k.bases[3]));
}

TEST_CASE("averaging section beta_x") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    MomentGraph g = build_moment_graph(d, bruhat_interval(d, word_to_aff(d, {0, 1})));

    // x = 0: stabilizer {e, s_alpha}; x = 1: stabilizer {e, s_{alpha,1}}.
    BetaReport b0 = verify_beta_section(d, {Rat(0)}, g);
    CHECK(b0.passed());
    CHECK(b0.stabilizer_order == 2);
    BetaReport b1 = verify_beta_section(d, {Rat(1)}, g);
    CHECK(b1.passed());
    CHECK(b1.stabilizer_order == 2);

    // Regular point: trivial stabilizer, everything degenerates gracefully.
    BetaReport breg = verify_beta_section(d, {Rat(1, 3)}, g);
    CHECK(breg.passed());
    CHECK(breg.stabilizer_order == 1);

    // x = 0 against the one-vertex graph: s_alpha is missing.
    MomentGraph ge = build_moment_graph(d, {aff_identity(d)});
    CHECK_THROWS_WITH_AS(verify_beta_section(d, {Rat(0)}, ge),
                         "stabilizer not contained in Omega", std::invalid_argument);

    // Simply connected A1 at the half-integral point: the extended stabilizer
    // is {e, t_varpi s_alpha}, a length-zero element outside W^aff.
    RootDatum dsc = build_root_datum("A1", Isogeny::simply_connected);
    Aff omega_el{{Rat(1, 2)}, dsc.simple_weyl[0]};
    MomentGraph gsc = build_moment_graph(dsc, {aff_identity(dsc), omega_el});
    CHECK(gsc.edges.empty());  // level 1/2 reflection is not in W^aff
    BetaReport bsc = verify_beta_section(dsc, {Rat(1, 2)}, gsc);
    CHECK(bsc.passed());
    CHECK(bsc.stabilizer_order == 2);
}

TEST_CASE("averaging section beta_x on A2 stabilizer graphs") {
    RootDatum d = build_root_datum("A2", Isogeny::adjoint);
    for (RatVec x : {RatVec{Rat(0), Rat(0)}, RatVec{Rat(1), Rat(0)},
                     RatVec{Rat(1, 2), Rat(0)}, RatVec{Rat(1, 2), Rat(1, 2)}}) {
        StabilizerCertificate cert = stabilizer(d, x, RatVec(2, Rat(0)));
        MomentGraph g = build_moment_graph(d, cert.ext_elements);
        BetaReport b = verify_beta_section(d, x, g, 3);
        CHECK(b.passed());
        CHECK(b.stabilizer_order == cert.ext_elements.size());
    }
}

TEST_CASE("separates: pi1 verdicts with generator cross-validation") {
    RootDatum dad = build_root_datum("A1", Isogeny::adjoint);
    Aff s1 = affine_generator(dad, 1);
    SeparationResult r = separates(dad, aff_identity(dad), s1, {Rat(0)});
    CHECK_FALSE(r.separated);
    CHECK(r.cross_validated);
    CHECK_THROWS_AS(separates(dad, aff_identity(dad), s1, {Rat(1, 2)}), std::invalid_argument);

    RootDatum dsc = build_root_datum("A1", Isogeny::simply_connected);
    Aff omega_el{{Rat(1, 2)}, dsc.simple_weyl[0]};
    SeparationResult rsc = separates(dsc, aff_identity(dsc), omega_el, {Rat(1, 2)});
    CHECK(rsc.separated);
    CHECK(rsc.cross_validated);

    RootDatum da2 = build_root_datum("A2", Isogeny::adjoint);
    StabilizerCertificate cert = stabilizer(da2, {Rat(1, 2), Rat(1, 2)}, RatVec(2, Rat(0)));
    REQUIRE(cert.elements.size() == 2);  // {e, s_{theta,1}}
    SeparationResult ra2 =
        separates(da2, cert.elements[0], cert.elements[1], {Rat(1, 2), Rat(1, 2)});
    CHECK_FALSE(ra2.separated);
    CHECK(ra2.cross_validated);
}

TEST_CASE("bruhat_ideals: counts and closure") {
    RootDatum d1 = build_root_datum("A1", Isogeny::adjoint);
    auto ideals1 = bruhat_ideals(d1, 6);
    CHECK(ideals1.size() == 9);
    for (const auto& ideal : ideals1) {
        CHECK(is_bruhat_closed(d1, ideal));
        CHECK(ideal.size() <= 6);
        bool has_e = false;
        for (const auto& a : ideal)
            if (a == aff_identity(d1)) has_e = true;
        CHECK(has_e);
    }

    RootDatum d2 = build_root_datum("A2", Isogeny::adjoint);
    auto ideals2 = bruhat_ideals(d2, 3);
    CHECK(ideals2.size() == 7);  // {e}, three {e,s_i}, three {e,s_i,s_j}
    for (const auto& ideal : ideals2) CHECK(is_bruhat_closed(d2, ideal));
}
