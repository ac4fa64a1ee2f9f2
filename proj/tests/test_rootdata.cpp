#include <doctest.h>

#include <random>
#include <set>

#include "alcove/rootdata.hpp"

using namespace alcove;

namespace {

RatVec rv(std::initializer_list<int> v) {
    RatVec out;
    for (int x : v) out.push_back(Rat(x));
    return out;
}

RatVec random_point(std::mt19937_64& rng, int rank) {
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 5);
    RatVec x(static_cast<std::size_t>(rank));
    for (auto& c : x) {
        c = Rat(num(rng), den(rng));
        c.canonicalize();
    }
    return x;
}

}  // namespace

TEST_CASE("classical root counts and Weyl orders") {
    struct Row {
        const char* type;
        std::size_t nroots, worder;
    };
    for (Row row : {Row{"A1", 2, 2}, Row{"A2", 6, 6}, Row{"B2", 8, 8}, Row{"C2", 8, 8},
                    Row{"G2", 12, 12}, Row{"A1xA1", 4, 4}}) {
        RootDatum d = build_root_datum(row.type, Isogeny::adjoint);
        CHECK(d.roots.size() == row.nroots);
        CHECK(d.weyl_order() == row.worder);
        CHECK(d.positive_roots.size() == row.nroots / 2);
        // Cartan sanity: 2 on diagonal, nonpositive integers off it.
        for (int i = 0; i < d.rank; ++i)
            for (int j = 0; j < d.rank; ++j) {
                Rat a = d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                CHECK(is_integer(a));
                if (i == j)
                    CHECK(a == 2);
                else
                    CHECK(a <= 0);
            }
    }
    CHECK_THROWS(build_root_datum("E8", Isogeny::adjoint));
    CHECK_THROWS(build_root_datum("A1xZ9", Isogeny::adjoint));
}

TEST_CASE("G2 positive roots match the hand-derived list") {
    // Convention: alpha_1 short. Positive roots and their coroots were closed
    // by hand from the simple pairs; frozen here as the oracle.
    RootDatum d = build_root_datum("G2", Isogeny::adjoint);
    std::set<std::vector<std::string>> expect = {
        {"1", "0"}, {"0", "1"}, {"1", "1"}, {"2", "1"}, {"3", "1"}, {"3", "2"}};
    std::set<std::vector<std::string>> got;
    for (auto k : d.positive_roots)
        got.insert({rat_str(d.roots[k].root_coords[0]), rat_str(d.roots[k].root_coords[1])});
    CHECK(got == expect);
    // Coroot of 2a1+a2 (highest short root) is 2a1v+3a2v, the highest coroot.
    std::size_t hs = d.highest_short[0];
    CHECK(d.roots[hs].root_coords == rv({2, 1}));
    CHECK(d.roots[hs].coroot_coords == rv({2, 3}));
    CHECK(d.p0 == RatVec{Rat(1, 6), Rat(1, 6)});
}

TEST_CASE("B2 reflection arithmetic frozen from hand computation") {
    RootDatum d = build_root_datum("B2", Isogeny::adjoint);
    // s2(alpha_1) = alpha_1 + 2 alpha_2 with coroot alpha_1^vee + alpha_2^vee.
    std::size_t a1 = d.root_index(rv({1, 0}));
    int s2 = d.simple_weyl[1];
    std::size_t img = static_cast<std::size_t>(d.root_perm[static_cast<std::size_t>(s2)][a1]);
    CHECK(d.roots[img].root_coords == rv({1, 2}));
    CHECK(d.roots[img].coroot_coords == rv({1, 1}));
    // Highest short root alpha_1 + alpha_2, highest coroot 2a1v + a2v.
    CHECK(d.roots[d.highest_short[0]].root_coords == rv({1, 1}));
    CHECK(d.roots[d.highest_short[0]].coroot_coords == rv({2, 1}));
    CHECK(d.p0 == RatVec{Rat(1, 4), Rat(1, 4)});
}

TEST_CASE("reflect: involution, hyperplane fixing, matrix cross-check") {
    std::mt19937_64 rng(4);
    for (const char* t : {"A1", "A2", "B2", "G2"}) {
        RootDatum d = build_root_datum(t, Isogeny::adjoint);
        for (int trial = 0; trial < 20; ++trial) {
            RatVec x = random_point(rng, d.rank);
            for (auto k : d.positive_roots) {
                Rat lvl(trial % 3 - 1);
                RatVec y = d.reflect(x, k, lvl);
                CHECK(d.pairing(y, k) == Rat(2) * lvl - d.pairing(x, k));
                CHECK(d.reflect(y, k, lvl) == x);
                // Independent form: M_{s_alpha} x + k fw(alpha).
                int w = d.reflection_root[0] == static_cast<int>(k) ? 0 : -1;
                for (std::size_t wi = 0; wi < d.weyl_order(); ++wi)
                    if (d.reflection_root[wi] == static_cast<int>(k)) w = static_cast<int>(wi);
                REQUIRE(w >= 0);
                RatVec z = mat_vec(d.weyl[static_cast<std::size_t>(w)], x);
                for (int i = 0; i < d.rank; ++i)
                    z[static_cast<std::size_t>(i)] += lvl * d.roots[k].fw[static_cast<std::size_t>(i)];
                CHECK(z == y);
            }
        }
    }
}

TEST_CASE("Weyl elements: words, root permutation, pairing invariance") {
    std::mt19937_64 rng(11);
    for (const char* t : {"A2", "B2", "G2", "A1xA1"}) {
        RootDatum d = build_root_datum(t, Isogeny::adjoint);
        for (std::size_t w = 0; w < d.weyl_order(); ++w) {
            // Word product reproduces the matrix.
            RatMat m = identity_mat(static_cast<std::size_t>(d.rank));
            for (int i : d.weyl_word[w])
                m = mat_mul(m, d.weyl[static_cast<std::size_t>(d.simple_weyl[static_cast<std::size_t>(i)])]);
            CHECK(m == d.weyl[w]);
            // Root permutation is a bijection.
            std::set<int> seen(d.root_perm[w].begin(), d.root_perm[w].end());
            CHECK(seen.size() == d.roots.size());
        }
        RatVec x = random_point(rng, d.rank);
        for (std::size_t w = 0; w < d.weyl_order(); ++w)
            for (std::size_t k = 0; k < d.roots.size(); ++k) {
                std::size_t wk = static_cast<std::size_t>(d.root_perm[w][k]);
                CHECK(d.pairing(mat_vec(d.weyl[w], x), wk) == d.pairing(x, k));
            }
        // Group tables.
        for (std::size_t w = 0; w < d.weyl_order(); ++w) {
            CHECK(d.weyl_mult[w][static_cast<std::size_t>(d.weyl_inv[w])] == 0);
            CHECK(d.weyl_mult[0][w] == static_cast<int>(w));
        }
    }
}

TEST_CASE("character lattices and pi1") {
    // Adjoint: trivial quotient.
    RootDatum ad = build_root_datum("A2", Isogeny::adjoint);
    CHECK(ad.pi1_order == 1);
    CHECK(ad.pi1_class(rv({1, 0})) == IntVec{Int(0), Int(0)});

    // Simply connected A2: index 3.
    RootDatum sc = build_root_datum("A2", Isogeny::simply_connected);
    CHECK(sc.pi1_order == 3);
    CHECK(!sc.in_root_lattice(sc.lattice_basis[0]));
    CHECK(sc.in_lattice(sc.lattice_basis[0]));

    // Simply connected A1: weight has order 2.
    RootDatum a1 = build_root_datum("A1", Isogeny::simply_connected);
    CHECK(a1.pi1_order == 2);
    RatVec w = {Rat(1, 2)};  // fundamental weight in root coordinates
    IntVec c = a1.pi1_class(w);
    CHECK(c != IntVec{Int(0)});
    RatVec w2 = vec_add(w, w);
    CHECK(a1.pi1_class(w2) == IntVec{Int(0)});
    CHECK_THROWS(a1.pi1_class({Rat(1, 3)}));

    // Additivity on random lattice elements.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        RatVec l1(2, Rat(0)), l2(2, Rat(0));
        for (std::size_t i = 0; i < 2; ++i) {
            Rat c1(coef(rng)), c2(coef(rng));
            for (std::size_t j = 0; j < 2; ++j) {
                l1[j] += c1 * sc.lattice_basis[i][j];
                l2[j] += c2 * sc.lattice_basis[i][j];
            }
        }
        IntVec s = sc.pi1_class(vec_add(l1, l2));
        IntVec c1 = sc.pi1_class(l1), c2 = sc.pi1_class(l2);
        IntVec expect(2);
        for (std::size_t i = 0; i < 2; ++i) {
            Int t = c1[i] + c2[i];
            mpz_fdiv_r(expect[i].get_mpz_t(), t.get_mpz_t(), sc.pi1_diag[i].get_mpz_t());
        }
        CHECK(s == expect);
    }

    // Custom lattice: L = Q in simply connected clothing must be accepted;
    // a lattice below Q or above P must be rejected.
    RatMat q_basis = identity_mat(2);
    RootDatum custom = build_root_datum("A2", Isogeny::custom, &q_basis);
    CHECK(custom.pi1_order == 1);
    RatMat too_big = {{Rat(1, 3), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK_THROWS(build_root_datum("A2", Isogeny::custom, &too_big));
    RatMat too_small = {{Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK_THROWS(build_root_datum("A2", Isogeny::custom, &too_small));
}
