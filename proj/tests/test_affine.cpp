#include <doctest.h>

#include <random>
#include <set>

#include "alcove/affine.hpp"

using namespace alcove;

namespace {

std::mt19937_64 make_rng(unsigned salt) { return std::mt19937_64(20260815u + salt); }

Aff random_aff(std::mt19937_64& rng, const RootDatum& d, int spread = 3) {
    std::uniform_int_distribution<int> coef(-spread, spread);
    std::uniform_int_distribution<int> widx(0, static_cast<int>(d.weyl_order()) - 1);
    RatVec lambda(static_cast<std::size_t>(d.rank), Rat(0));
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        Rat c(coef(rng));
        for (std::size_t j = 0; j < lambda.size(); ++j) lambda[j] += c * d.lattice_basis[i][j];
    }
    return Aff{lambda, widx(rng)};
}

RatVec random_point(std::mt19937_64& rng, int rank, int maxden = 5) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, maxden);
    RatVec x(static_cast<std::size_t>(rank));
    for (auto& c : x) {
        c = Rat(num(rng), den(rng));
        c.canonicalize();
    }
    return x;
}

std::set<std::string> key_set(const std::vector<Aff>& v) {
    std::set<std::string> s;
    for (const auto& a : v) s.insert(aff_key(a));
    return s;
}

}  // namespace

TEST_CASE("composition law and the hbar-deformed action homomorphism") {
    auto rng = make_rng(1);
    for (const char* t : {"A1", "A2", "B2", "G2"}) {
        for (Isogeny iso : {Isogeny::adjoint, Isogeny::simply_connected}) {
            RootDatum d = build_root_datum(t, iso);
            for (int trial = 0; trial < 1000; ++trial) {
                Aff a = random_aff(rng, d), b = random_aff(rng, d), c = random_aff(rng, d);
                CHECK(aff_compose(d, aff_compose(d, a, b), c) ==
                      aff_compose(d, a, aff_compose(d, b, c)));
                CHECK(aff_compose(d, a, aff_invert(d, a)) == aff_identity(d));
                RatVec x = random_point(rng, d.rank);
                Rat hbar(trial % 5 - 2, 1 + trial % 2);
                hbar.canonicalize();
                CHECK(aff_act(d, aff_compose(d, a, b), x, hbar) ==
                      aff_act(d, a, aff_act(d, b, x, hbar), hbar));
            }
        }
    }
}

TEST_CASE("translations compose additively and act by hbar-scaled shifts") {
    RootDatum d = build_root_datum("A2", Isogeny::adjoint);
    RatVec l1 = {Rat(1), Rat(0)}, l2 = {Rat(2), Rat(-1)};
    Aff t1 = aff_translation(d, l1), t2 = aff_translation(d, l2);
    CHECK(aff_compose(d, t1, t2) == aff_translation(d, vec_add(l1, l2)));
    CHECK(aff_compose(d, t1, t2) == aff_compose(d, t2, t1));
    CHECK(aff_act(d, t1, d.p0, Rat(0)) == d.p0);
    CHECK_THROWS(aff_translation(d, {Rat(1, 3), Rat(0)}));
}

TEST_CASE("A1: s_{a,1} posed against independent evaluations") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    std::size_t alpha = d.positive_roots[0];
    Aff s1 = aff_reflection(d, alpha, Rat(1));
    Aff s0 = aff_reflection(d, alpha, Rat(0));
    // compose(s_{a,1}, s_{a,0}) = t_alpha, checked on sample points.
    Aff prod = aff_compose(d, s1, s0);
    Aff ta = aff_translation(d, d.roots[alpha].root_coords);
    for (int k : {-2, 0, 3}) {
        RatVec x = {Rat(k, 2)};
        CHECK(aff_act(d, prod, x, Rat(1)) == aff_act(d, ta, x, Rat(1)));
    }
    CHECK(prod == ta);
    // Action at hbar = 1 agrees with the root-datum reflect oracle.
    RatVec x = {Rat(3)};
    CHECK(aff_act(d, s1, x, Rat(1)) == d.reflect(x, alpha, Rat(1)));
    CHECK(d.pairing(aff_act(d, s1, x, Rat(1)), alpha) == -1);
    // Involution and fixed hyperplane of the deformed action.
    for (int num = -3; num <= 3; ++num) {
        RatVec y = {Rat(num, 2)};
        y[0].canonicalize();
        Rat hbar(num % 2 ? 3 : 2, 2);
        hbar.canonicalize();
        CHECK(aff_act(d, s1, aff_act(d, s1, y, hbar), hbar) == y);
    }
    RatVec fixed = {Rat(3, 2)};
    CHECK(aff_act(d, s1, fixed, Rat(3, 2)) == fixed);  // <y,a^vee> = k hbar
}

TEST_CASE("length: frozen values, inverse symmetry, folding agreement") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    CHECK(aff_length(d, aff_identity(d)) == 0);
    std::size_t alpha = d.positive_roots[0];
    CHECK(aff_length(d, aff_reflection(d, alpha, Rat(0))) == 1);
    CHECK(aff_length(d, aff_reflection(d, alpha, Rat(1))) == 1);
    CHECK(aff_length(d, aff_translation(d, d.roots[alpha].root_coords)) == 2);

    auto rng = make_rng(2);
    for (const char* t : {"A1", "A2", "B2", "G2", "A1xA1"}) {
        for (Isogeny iso : {Isogeny::adjoint, Isogeny::simply_connected}) {
            RootDatum dt = build_root_datum(t, iso);
            for (int id : affine_generator_ids(dt))
                CHECK(aff_length(dt, affine_generator(dt, id)) == 1);
            for (int trial = 0; trial < 25; ++trial) {
                Aff a = random_aff(rng, dt);
                CHECK(aff_length(dt, a) == aff_length(dt, aff_invert(dt, a)));
                for (int id : affine_generator_ids(dt)) {
                    long diff = aff_length(dt, aff_compose(dt, a, affine_generator(dt, id))) -
                                aff_length(dt, a);
                    CHECK((diff == 1 || diff == -1));
                }
                Factorization f = factorize(dt, a);
                CHECK(aff_length(dt, a) == static_cast<long>(f.word.size()));
                CHECK(aff_length(dt, f.omega) == 0);
                CHECK(in_waff(dt, f.waff));
                CHECK(aff_compose(dt, f.omega, f.waff) == a);
            }
        }
    }
}

TEST_CASE("locate_alcove: frozen folds and the non-regular error") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    std::size_t alpha = d.positive_roots[0];
    CHECK(locate_alcove(d, d.p0).element == aff_identity(d));
    CHECK(locate_alcove(d, {Rat(3, 2)}).element == aff_reflection(d, alpha, Rat(1)));
    CHECK(locate_alcove(d, {Rat(-1, 2)}).element == aff_reflection(d, alpha, Rat(0)));
    try {
        locate_alcove(d, {Rat(2)});
        FAIL("expected NonRegularPoint");
    } catch (const NonRegularPoint& e) {
        CHECK(e.root_index == alpha);
        CHECK(e.level == 2);
        CHECK(std::string(e.what()).find("= 2") != std::string::npos);
    }
    // Located element maps p0 into the same alcove as x: act(el^{-1}, x) in A0.
    auto rng = make_rng(3);
    for (const char* t : {"A2", "B2", "G2"}) {
        RootDatum dt = build_root_datum(t, Isogeny::adjoint);
        int done = 0;
        while (done < 30) {
            RatVec x = random_point(rng, dt.rank);
            try {
                Located loc = locate_alcove(dt, x);
                ++done;
                RatVec y = aff_act(dt, aff_invert(dt, loc.element), x, Rat(1));
                for (int i = 0; i < dt.rank; ++i) CHECK(y[static_cast<std::size_t>(i)] > 0);
                for (auto hs : dt.highest_short) CHECK(dt.pairing(y, hs) < 1);
                // Reduced word multiplies back to the element.
                Aff prod = aff_identity(dt);
                for (int id : loc.word) prod = aff_compose(dt, prod, affine_generator(dt, id));
                CHECK(prod == loc.element);
            } catch (const NonRegularPoint&) {
            }
        }
    }
}

TEST_CASE("simply connected A1: the weight translation factors through Omega") {
    RootDatum d = build_root_datum("A1", Isogeny::simply_connected);
    Aff tw = aff_translation(d, {Rat(1, 2)});
    CHECK(aff_length(d, tw) == 1);
    Factorization f = factorize(d, tw);
    // Hand computation: omega = t_w s_alpha (the nontrivial length-zero
    // element), waff = s_{alpha,0}.
    std::size_t alpha = d.positive_roots[0];
    Aff s = aff_reflection(d, alpha, Rat(0));
    CHECK(f.waff == s);
    CHECK(f.omega == Aff{RatVec{Rat(1, 2)}, s.w});
    // The half-level extended reflection fixes <y,a^vee> = hbar/2.
    Aff half = aff_reflection(d, alpha, Rat(1, 2));
    RatVec y = {Rat(1, 2)};
    CHECK(aff_act(d, half, y, Rat(1)) == y);
    CHECK(in_waff(d, s));
    CHECK(!in_waff(d, half));
}

TEST_CASE("bruhat intervals: frozen small cases") {
    RootDatum d = build_root_datum("A1", Isogeny::adjoint);
    std::size_t alpha = d.positive_roots[0];
    Aff s0 = aff_reflection(d, alpha, Rat(1)), s1 = aff_reflection(d, alpha, Rat(0));

    CHECK(bruhat_interval(d, aff_identity(d)).size() == 1);
    auto i1 = bruhat_interval(d, s0);
    CHECK(key_set(i1) == key_set({aff_identity(d), s0}));
    auto i2 = bruhat_interval(d, aff_compose(d, s0, s1));
    CHECK(key_set(i2) ==
          key_set({aff_identity(d), s0, s1, aff_compose(d, s0, s1)}));
    CHECK(is_bruhat_closed(d, i2));
    CHECK(!is_bruhat_closed(d, {aff_identity(d), s0, aff_compose(d, s0, s1)}));

    // Extended group: interval of t_w is the omega-translate of {e, s}.
    RootDatum sc = build_root_datum("A1", Isogeny::simply_connected);
    Aff tw = aff_translation(sc, {Rat(1, 2)});
    auto iw = bruhat_interval(sc, tw);
    Aff omega{RatVec{Rat(1, 2)}, aff_reflection(sc, alpha, Rat(0)).w};
    CHECK(key_set(iw) == key_set({omega, tw}));

    // Length generating function is symmetric under inversion (sampled).
    auto rng = make_rng(4);
    RootDatum a2 = build_root_datum("A2", Isogeny::adjoint);
    for (int trial = 0; trial < 6; ++trial) {
        Aff a = random_aff(rng, a2, 1);
        if (aff_length(a2, a) > 8) continue;
        auto fwd = bruhat_interval(a2, a);
        auto bwd = bruhat_interval(a2, aff_invert(a2, a));
        std::multiset<long> lf, lb;
        for (const auto& g : fwd) lf.insert(aff_length(a2, g));
        for (const auto& g : bwd) lb.insert(aff_length(a2, g));
        CHECK(lf == lb);
        CHECK(is_bruhat_closed(a2, fwd));
        for (const auto& g : fwd) CHECK(aff_length(a2, g) <= aff_length(a2, a));
    }
}

TEST_CASE("stabilizer certificates: frozen cases") {
    RatVec zero1 = {Rat(0)};
    RootDatum a1 = build_root_datum("A1", Isogeny::adjoint);
    StabilizerCertificate c0 = stabilizer(a1, zero1, zero1);
    CHECK(c0.elements.size() == 2);
    CHECK(c0.alcove_count == 2);
    CHECK(c0.generators.size() == 1);
    CHECK(c0.wall_generators.size() == 1);
    CHECK(c0.v_x.empty());

    RootDatum a2 = build_root_datum("A2", Isogeny::adjoint);
    RatVec zero2 = {Rat(0), Rat(0)};
    StabilizerCertificate cz = stabilizer(a2, zero2, zero2);
    CHECK(cz.elements.size() == 6);
    CHECK(cz.alcove_count == 6);
    CHECK(cz.phi_x.size() == 6);
    // Regular point: trivial.
    StabilizerCertificate cr = stabilizer(a2, a2.p0, zero2);
    CHECK(cr.elements.size() == 1);
    CHECK(cr.alcove_count == 1);
    CHECK(cr.generators.empty());
    // Complex point: regular imaginary part kills everything but e.
    StabilizerCertificate cc = stabilizer(a2, zero2, a2.p0);
    CHECK(cc.elements.size() == 1);
    CHECK(cc.re_elements.size() == 6);

    // G2 at (0,1/3): exactly the short-root coroots pair integrally, giving
    // an A2-type stabilizer of order 6 (hand-checked coroot table).
    RootDatum g2 = build_root_datum("G2", Isogeny::adjoint);
    StabilizerCertificate cg = stabilizer(g2, {Rat(0), Rat(1, 3)}, zero2);
    CHECK(cg.elements.size() == 6);
    CHECK(cg.phi_x.size() == 6);
    std::set<std::vector<std::string>> phi;
    for (auto k : cg.phi_x)
        if (g2.roots[k].positive)
            phi.insert({rat_str(g2.roots[k].root_coords[0]), rat_str(g2.roots[k].root_coords[1])});
    CHECK(phi == std::set<std::vector<std::string>>{{"1", "0"}, {"1", "1"}, {"2", "1"}});

    // Extended stabilizer picks up the half-level reflection for SC A1.
    RootDatum sc = build_root_datum("A1", Isogeny::simply_connected);
    StabilizerCertificate ch = stabilizer(sc, {Rat(1, 2)}, zero1);
    CHECK(ch.elements.size() == 1);
    CHECK(ch.ext_elements.size() == 2);
    std::size_t alpha = sc.positive_roots[0];
    CHECK(key_set(ch.ext_elements).count(aff_key(aff_reflection(sc, alpha, Rat(1, 2)))) == 1);
}

TEST_CASE("stabilizer certificates: invariants on random points") {
    auto rng = make_rng(5);
    for (const char* t : {"A1", "A2", "B2", "G2"}) {
        RootDatum d = build_root_datum(t, Isogeny::adjoint);
        for (int trial = 0; trial < 12; ++trial) {
            RatVec re = random_point(rng, d.rank, 4);
            RatVec im = trial % 3 == 0 ? random_point(rng, d.rank, 3)
                                       : RatVec(static_cast<std::size_t>(d.rank), Rat(0));
            StabilizerCertificate cert = stabilizer(d, re, im);
            // Every element fixes Re at hbar=1 and Im linearly.
            for (const auto& g : cert.elements) {
                CHECK(aff_act(d, g, re, Rat(1)) == re);
                CHECK(mat_vec(d.weyl[static_cast<std::size_t>(g.w)], im) == im);
            }
            // pi injective.
            std::set<int> ws(cert.w_image.begin(), cert.w_image.end());
            CHECK(ws.size() == cert.elements.size());
            // Wall generators generate Gamma^{Re}.
            CHECK(key_set(generate_subgroup(d, cert.wall_generators)) ==
                  key_set(cert.re_elements));
            // Gamma^x is generated by its own reflections through x.
            CHECK(key_set(generate_subgroup(d, cert.generators)) == key_set(cert.elements));
            // Simple transitivity count.
            CHECK(cert.alcove_count == cert.re_elements.size());
            // phi_x closed under negation and its own reflections.
            std::set<std::size_t> phi(cert.phi_x.begin(), cert.phi_x.end());
            for (auto k : cert.phi_x) {
                RatVec neg = vec_scale(Rat(-1), d.roots[k].root_coords);
                CHECK(phi.count(d.root_index(neg)) == 1);
                for (auto b : cert.phi_x) {
                    int w = -1;
                    for (std::size_t wi = 0; wi < d.weyl_order(); ++wi)
                        if (d.reflection_root[wi] >= 0 &&
                            (d.roots[static_cast<std::size_t>(d.reflection_root[wi])].root_coords ==
                                 d.roots[b].root_coords ||
                             d.roots[static_cast<std::size_t>(d.reflection_root[wi])].root_coords ==
                                 vec_scale(Rat(-1), d.roots[b].root_coords)))
                            w = static_cast<int>(wi);
                    REQUIRE(w >= 0);
                    CHECK(phi.count(static_cast<std::size_t>(d.root_perm[static_cast<std::size_t>(w)][k])) == 1);
                }
            }
            // |Gamma^x| = |Phi_x^+ reflections| consistency: generators are the
            // affine reflections whose root lies in phi_x and fixes im.
            for (const auto& g : cert.generators) {
                auto r = as_reflection(d, g);
                REQUIRE(r.has_value());
                CHECK(phi.count(r->first) == 1);
            }
        }
    }
}

TEST_CASE("alcove walks around a point") {
    RootDatum d = build_root_datum("A2", Isogeny::adjoint);
    RatVec origin = {Rat(0), Rat(0)};
    Aff p0_alcove = aff_identity(d);
    CHECK(alcove_walk(d, p0_alcove, p0_alcove, origin).empty());

    // Opposite alcove around the origin: w0 A0.
    RatVec opp = vec_scale(Rat(-1), d.p0);
    Aff q = locate_alcove(d, opp).element;
    auto walk = alcove_walk(d, p0_alcove, q, origin);
    CHECK(walk.size() <= 3);
    Aff acc = p0_alcove;
    for (const auto& rho : walk) {
        auto r = as_reflection(d, rho);
        REQUIRE(r.has_value());
        CHECK(d.pairing(origin, r->first) == r->second);
        acc = aff_compose(d, rho, acc);
        CHECK(in_waff(d, acc));
    }
    CHECK(acc == q);

    // Walls not through the point are rejected.
    CHECK_THROWS(alcove_walk(d, p0_alcove, locate_alcove(d, vec_add(d.p0, RatVec{Rat(1), Rat(0)})).element,
                             origin));

    // Adjacent alcoves across one wall.
    StabilizerCertificate cert = stabilizer(d, origin, origin);
    Aff s1 = affine_generator(d, 1);
    auto one = alcove_walk(d, p0_alcove, s1, origin);
    CHECK(one.size() == 1);
    CHECK(one[0] == s1);
    (void)cert;
}

TEST_CASE("element notation round-trips") {
    for (Isogeny iso : {Isogeny::adjoint, Isogeny::simply_connected}) {
        for (const char* t : {"A1", "A2", "B2", "G2", "A1xA1"}) {
            RootDatum d = build_root_datum(t, iso);
            auto rng = make_rng(6);
            for (int trial = 0; trial < 40; ++trial) {
                Aff a = random_aff(rng, d);
                CHECK(aff_parse(d, aff_str(d, a)) == a);
            }
        }
    }
    RootDatum a1 = build_root_datum("A1", Isogeny::adjoint);
    CHECK(aff_str(a1, aff_identity(a1)) == "t[0] w[]");
    std::size_t alpha = a1.positive_roots[0];
    CHECK(aff_str(a1, aff_reflection(a1, alpha, Rat(1))) == "t[1] w[1]");
    RootDatum sc = build_root_datum("A1", Isogeny::simply_connected);
    CHECK(aff_str(sc, aff_translation(sc, {Rat(1, 2)})) == "t[1] w[]");
    CHECK(aff_parse(sc, "t[1] w[]") == aff_translation(sc, {Rat(1, 2)}));
    CHECK_THROWS(aff_parse(a1, "t[1,2] w[]"));
    CHECK_THROWS(aff_parse(a1, "nonsense"));
}
