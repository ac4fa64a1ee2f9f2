#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "alcove/corpus.hpp"
#include "alcove/gkm.hpp"
#include "alcove/io.hpp"

using namespace alcove;

namespace {

struct CommonOpts {
    std::string type = "A1";
    std::string isogeny = "adjoint";
    std::string lattice_file;
    std::string format = "table";
    std::string hbar = "1";
    std::string module_file;
    std::vector<std::string> points;
    std::string interval;
    int maxdeg = 6;
    unsigned seed = 20260815u;
};

RootDatum make_datum(const CommonOpts& o) {
    if (!o.lattice_file.empty()) {
        RatMat basis = load_lattice_json(o.lattice_file);
        return build_root_datum(o.type, Isogeny::custom, &basis);
    }
    if (o.isogeny == "adjoint") return build_root_datum(o.type, Isogeny::adjoint);
    if (o.isogeny == "simply-connected" || o.isogeny == "sc")
        return build_root_datum(o.type, Isogeny::simply_connected);
    throw IoError("unknown isogeny '" + o.isogeny + "' (expected adjoint or simply-connected)");
}

std::pair<RatVec, RatVec> parse_point(const std::string& s, int rank) {
    auto parse_vec = [&](const std::string& part) {
        RatVec v;
        std::size_t start = 0;
        while (start <= part.size()) {
            std::size_t pos = part.find(',', start);
            std::string tok = part.substr(start, pos == std::string::npos ? pos : pos - start);
            try {
                v.push_back(rat_parse(tok));
            } catch (...) {
                throw IoError("bad rational '" + tok + "' in point '" + s + "'");
            }
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return v;
    };
    std::size_t semi = s.find(';');
    RatVec re = parse_vec(semi == std::string::npos ? s : s.substr(0, semi));
    RatVec im = semi == std::string::npos ? RatVec(static_cast<std::size_t>(rank), Rat(0))
                                          : parse_vec(s.substr(semi + 1));
    if (re.size() != static_cast<std::size_t>(rank) || im.size() != static_cast<std::size_t>(rank))
        throw IoError("point '" + s + "' has arity != rank " + std::to_string(rank));
    return {re, im};
}

std::string point_str(const RatVec& re, const RatVec& im) {
    std::string s;
    for (std::size_t i = 0; i < re.size(); ++i) s += (i ? "," : "") + rat_str(re[i]);
    bool has_im = false;
    for (const auto& c : im) has_im = has_im || c != 0;
    if (has_im) {
        s += ";";
        for (std::size_t i = 0; i < im.size(); ++i) s += (i ? "," : "") + rat_str(im[i]);
    }
    return s;
}

// Interval words use affine generator ids: "s0 s1", or "e".
Aff parse_interval_top(const RootDatum& d, const std::string& word) {
    if (word.empty()) throw IoError("--interval is required (e.g. \"s0 s1\" or \"e\")");
    Aff top = aff_identity(d);
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        if (tok == "e") continue;
        if (tok.size() < 2 || tok[0] != 's')
            throw IoError("bad interval token '" + tok + "' (expected e or sK)");
        int id;
        try {
            id = std::stoi(tok.substr(1));
        } catch (...) {
            throw IoError("bad interval token '" + tok + "'");
        }
        top = aff_compose(d, top, affine_generator(d, id));
    }
    return top;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

long binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Default corpus points: the origin, an interior (regular) point, and a wall
// midpoint of the fundamental alcove.
std::vector<RatVec> default_points(const RootDatum& d) {
    if (d.rank == 1) return {{Rat(0)}, {Rat(1, 2)}, {Rat(1)}};
    std::vector<RatVec> pts{RatVec(static_cast<std::size_t>(d.rank), Rat(0)), d.p0};
    RatVec wall = d.p0;
    wall[0] = Rat(0);
    pts.push_back(wall);
    return pts;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_root_datum(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    Report rep;
    rep.scalars.emplace_back("type", d.type_label);
    rep.scalars.emplace_back("rank", std::to_string(d.rank));
    rep.scalars.emplace_back("weyl_order", std::to_string(d.weyl_order()));
    rep.scalars.emplace_back("positive_roots", std::to_string(d.positive_roots.size()));
    rep.scalars.emplace_back("pi1_order", d.pi1_order.get_str());
    std::string factors;
    for (const auto& f : d.pi1_diag) {
        if (!factors.empty()) factors += ",";
        factors += f.get_str();
    }
    rep.scalars.emplace_back("pi1_invariant_factors", factors);
    std::string basis;
    for (std::size_t i = 0; i < d.lattice_basis.size(); ++i) {
        if (i) basis += " ";
        basis += "[";
        for (std::size_t j = 0; j < d.lattice_basis[i].size(); ++j)
            basis += (j ? "," : "") + rat_str(d.lattice_basis[i][j]);
        basis += "]";
    }
    rep.scalars.emplace_back("lattice_basis", basis);
    rep.columns = {"root", "root_coords", "coroot_coords", "pairing_coords"};
    for (std::size_t i = 0; i < d.positive_roots.size(); ++i) {
        const Root& r = d.roots[d.positive_roots[i]];
        auto vec_str = [](const RatVec& v) {
            std::string s;
            for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + rat_str(v[j]);
            return s;
        };
        rep.rows.push_back({std::to_string(i), vec_str(r.root_coords), vec_str(r.coroot_coords),
                            vec_str(r.fw)});
    }
    std::cout << render_report(rep, parse_format(o.format));
    return 0;
}

int cmd_stabilizer(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    if (o.points.empty()) throw IoError("--point is required");
    auto [re, im] = parse_point(o.points.front(), d.rank);
    StabilizerCertificate cert = stabilizer(d, re, im);

    bool injective = cert.w_image.size() == cert.elements.size();
    bool parabolic =
        generate_subgroup(d, cert.wall_generators).size() == cert.re_elements.size();
    bool generated =
        generate_subgroup(d, cert.generators).size() == cert.re_elements.size();
    bool simply_transitive = cert.alcove_count == cert.re_elements.size();

    Report rep;
    rep.scalars.emplace_back("point", point_str(re, im));
    rep.scalars.emplace_back("order", std::to_string(cert.elements.size()));
    rep.scalars.emplace_back("re_order", std::to_string(cert.re_elements.size()));
    rep.scalars.emplace_back("ext_order", std::to_string(cert.ext_elements.size()));
    rep.scalars.emplace_back("alcove_count", std::to_string(cert.alcove_count));
    rep.scalars.emplace_back("adjacent_alcove", aff_str(d, cert.adjacent_alcove));
    rep.scalars.emplace_back("fixed_space_dim", std::to_string(cert.v_x.size()));
    rep.scalars.emplace_back("reflection_generated", bool_str(generated));
    rep.scalars.emplace_back("parabolic", bool_str(parabolic));
    rep.scalars.emplace_back("pi_injective", bool_str(injective));
    rep.scalars.emplace_back("simply_transitive", bool_str(simply_transitive));
    rep.columns = {"element", "length", "generator", "wall_generator"};
    auto contains = [&](const std::vector<Aff>& v, const Aff& a) {
        for (const auto& b : v)
            if (b == a) return true;
        return false;
    };
    for (const Aff& g : cert.elements)
        rep.rows.push_back({aff_str(d, g), std::to_string(aff_length(d, g)),
                            bool_str(contains(cert.generators, g)),
                            bool_str(contains(cert.wall_generators, g))});
    std::cout << render_report(rep, parse_format(o.format));
    return injective && parabolic && generated && simply_transitive ? 0 : 1;
}

int cmd_walk(const CommonOpts& o, const std::string& from, const std::string& to) {
    RootDatum d = make_datum(o);
    if (o.points.empty()) throw IoError("--point is required");
    auto [re, im] = parse_point(o.points.front(), d.rank);
    Report rep;
    rep.scalars.emplace_back("point", point_str(re, im));
    if (from.empty() != to.empty()) throw IoError("walk needs both FROM and TO, or neither");
    if (from.empty()) {
        Located loc = locate_alcove(d, re);
        rep.scalars.emplace_back("alcove", aff_str(d, loc.element));
        rep.scalars.emplace_back("length", std::to_string(aff_length(d, loc.element)));
        rep.columns = {"step", "generator", "alcove"};
        Aff cur = aff_identity(d);
        for (std::size_t i = 0; i < loc.word.size(); ++i) {
            cur = aff_compose(d, cur, affine_generator(d, loc.word[i]));
            rep.rows.push_back(
                {std::to_string(i + 1), "s" + std::to_string(loc.word[i]), aff_str(d, cur)});
        }
    } else {
        Aff p = aff_parse(d, from), q = aff_parse(d, to);
        std::vector<Aff> refl = alcove_walk(d, p, q, re);
        rep.scalars.emplace_back("from", aff_str(d, p));
        rep.scalars.emplace_back("to", aff_str(d, q));
        rep.scalars.emplace_back("steps", std::to_string(refl.size()));
        rep.columns = {"step", "reflection", "alcove"};
        Aff cur = p;
        for (std::size_t i = 0; i < refl.size(); ++i) {
            cur = aff_compose(d, refl[i], cur);
            rep.rows.push_back({std::to_string(i + 1), aff_str(d, refl[i]), aff_str(d, cur)});
        }
    }
    std::cout << render_report(rep, parse_format(o.format));
    return 0;
}

int cmd_gkm_sections(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    Aff top = parse_interval_top(d, o.interval);
    std::vector<Aff> omega = bruhat_interval(d, top);
    MomentGraph g = build_moment_graph(d, omega);
    HbarMode mode = o.hbar == "formal" ? HbarMode::formal : HbarMode::set_to_1;
    if (o.hbar != "formal" && o.hbar != "1")
        throw IoError("--hbar must be formal or 1");
    GradedSubspace s = section_space(g, o.maxdeg, mode);

    Report rep;
    rep.scalars.emplace_back("interval_top", aff_str(d, top));
    rep.scalars.emplace_back("vertices", std::to_string(g.vertices.size()));
    rep.scalars.emplace_back("edges", std::to_string(g.edges.size()));
    rep.scalars.emplace_back("hbar", o.hbar);
    bool all_free = true;
    if (mode == HbarMode::formal) {
        rep.columns = {"degree", "dim_graded", "dim_free", "equal"};
        for (int k = 0; k <= o.maxdeg; ++k) {
            long expect = 0;
            for (long len : g.lengths) expect += binom(k - len + d.rank, d.rank);
            bool eq = s.graded_dims[static_cast<std::size_t>(k)] ==
                      static_cast<std::size_t>(expect);
            all_free = all_free && eq;
            rep.rows.push_back({std::to_string(k),
                                std::to_string(s.graded_dims[static_cast<std::size_t>(k)]),
                                std::to_string(expect), bool_str(eq)});
        }
        rep.scalars.emplace_back("free_over_full_ring", bool_str(all_free));
    } else {
        rep.columns = {"degree", "dim_filtered"};
        for (int k = 0; k <= o.maxdeg; ++k)
            rep.rows.push_back(
                {std::to_string(k), std::to_string(s.dims[static_cast<std::size_t>(k)])});
    }
    std::cout << render_report(rep, parse_format(o.format));
    return all_free ? 0 : 1;
}

int cmd_adjacency_check(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    if (o.hbar != "1")
        throw IoError("adjacency-check runs at --hbar 1 (generation by s#/t# holds there)");
    Aff top = parse_interval_top(d, o.interval);
    MomentGraph g = build_moment_graph(d, bruhat_interval(d, top));
    KernelEqualityReport ker = kernel_equality_report(g, o.maxdeg, HbarMode::set_to_1);

    Report rep;
    rep.scalars.emplace_back("interval_top", aff_str(d, top));
    rep.scalars.emplace_back("vertices", std::to_string(g.vertices.size()));
    rep.scalars.emplace_back("inclusion_ok", bool_str(ker.inclusion_ok));
    rep.scalars.emplace_back("saturation_degree", ker.saturation_degree
                                                      ? std::to_string(*ker.saturation_degree)
                                                      : std::string("none"));
    rep.columns = {"degree", "dim_adjacency", "dim_kernel", "equal"};
    for (const auto& row : ker.rows)
        rep.rows.push_back({std::to_string(row.degree), std::to_string(row.dim_adjacency),
                            std::to_string(row.dim_kernel), bool_str(row.equal)});
    std::cout << render_report(rep, parse_format(o.format));
    return ker.inclusion_ok ? 0 : 1;
}

int cmd_beta_check(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    if (o.points.empty()) throw IoError("--point is required");
    auto [re, im] = parse_point(o.points.front(), d.rank);
    StabilizerCertificate cert = stabilizer(d, re, RatVec(static_cast<std::size_t>(d.rank)));
    MomentGraph g = build_moment_graph(d, cert.ext_elements);
    BetaReport rep = verify_beta_section(d, re, g, o.maxdeg, o.seed);

    Report out;
    out.scalars.emplace_back("point", point_str(re, im));
    out.scalars.emplace_back("stabilizer_order", std::to_string(rep.stabilizer_order));
    out.scalars.emplace_back("degree", std::to_string(o.maxdeg));
    out.scalars.emplace_back("retraction_ok", bool_str(rep.retraction_ok));
    out.scalars.emplace_back("linear_ok", bool_str(rep.linear_ok));
    out.scalars.emplace_back("invariance_ok", bool_str(rep.invariance_ok));
    out.scalars.emplace_back("passed", bool_str(rep.passed()));
    std::cout << render_report(out, parse_format(o.format));
    return rep.passed() ? 0 : 1;
}

int cmd_separates(const CommonOpts& o, const std::string& g1, const std::string& g2) {
    RootDatum d = make_datum(o);
    if (o.points.empty()) throw IoError("--point is required");
    auto [re, im] = parse_point(o.points.front(), d.rank);
    Aff a = aff_parse(d, g1), b = aff_parse(d, g2);
    SeparationResult res = separates(d, a, b, re);

    Report rep;
    rep.scalars.emplace_back("gamma", aff_str(d, a));
    rep.scalars.emplace_back("gamma2", aff_str(d, b));
    rep.scalars.emplace_back("point", point_str(re, im));
    rep.scalars.emplace_back("separated", bool_str(res.separated));
    rep.scalars.emplace_back("cross_validated", bool_str(res.cross_validated));
    std::cout << render_report(rep, parse_format(o.format));
    return res.cross_validated ? 0 : 1;
}

int cmd_invariants(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    FiniteReflectionGroup grp = [&] {
        if (o.points.empty()) return FiniteReflectionGroup::standard(d);
        auto [re, im] = parse_point(o.points.front(), d.rank);
        return FiniteReflectionGroup::from_certificate(d, stabilizer(d, re, im));
    }();
    InvariantReport rep = cst_check(grp);
    bool identity_ok = !rep.applicable || rep.coinvariant_total == rep.group_order;

    Report out;
    if (!o.points.empty()) out.scalars.emplace_back("point", o.points.front());
    out.scalars.emplace_back("group_order", std::to_string(rep.group_order));
    out.scalars.emplace_back("reflection_count", std::to_string(rep.reflection_count));
    out.scalars.emplace_back("applicable", bool_str(rep.applicable));
    out.scalars.emplace_back("coinvariant_total", std::to_string(rep.coinvariant_total));
    std::string degs;
    for (int dd : rep.fundamental_degrees) {
        if (!degs.empty()) degs += ",";
        degs += std::to_string(dd);
    }
    out.scalars.emplace_back("fundamental_degrees", degs);
    out.scalars.emplace_back("coinvariant_dim_matches_order", bool_str(identity_ok));
    out.columns = {"degree", "molien", "dim_coinvariants"};
    for (std::size_t k = 0; k < rep.molien.size(); ++k)
        out.rows.push_back({std::to_string(k), std::to_string(rep.molien[k]),
                            std::to_string(rep.coinvariant_dims[k])});
    std::cout << render_report(out, parse_format(o.format));
    return identity_ok ? 0 : 1;
}

EquivariantModule load_cli_module(const CommonOpts& o, const RootDatum& d) {
    if (o.module_file.empty()) throw IoError("--module FILE is required");
    return load_module_json(o.module_file, d);
}

int cmd_descent_check(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    EquivariantModule m = load_cli_module(o, d);
    if (o.points.empty()) throw IoError("--point is required");
    auto [re, im] = parse_point(o.points.front(), d.rank);
    FiniteReflectionGroup grp = FiniteReflectionGroup::from_certificate(d, stabilizer(d, re, im));

    Report rep;
    rep.scalars.emplace_back("module", m.name);
    rep.scalars.emplace_back("point", point_str(re, im));
    rep.scalars.emplace_back("stabilizer_order", std::to_string(grp.size()));

    ModuleCheck chk = validate_module(m, grp);
    rep.scalars.emplace_back("valid", bool_str(chk.ok));
    if (!chk.ok) {
        rep.scalars.emplace_back("witness", chk.detail);
        std::cout << render_report(rep, parse_format(o.format));
        return 1;
    }
    int degree = o.maxdeg > 0 ? o.maxdeg : -1;
    VerdictWitness naive = isotropy_trivial(m, grp, degree);
    VerdictWitness der = derived_isotropy(m, grp, degree);
    VerdictWitness desc = descends(m, grp, degree);
    bool agree = der.verdict == desc.verdict;
    rep.scalars.emplace_back("naive_isotropy", bool_str(naive.verdict));
    rep.scalars.emplace_back("derived_isotropy", bool_str(der.verdict));
    rep.scalars.emplace_back("descends", bool_str(desc.verdict));
    rep.scalars.emplace_back("agree", bool_str(agree));
    std::string witness = !desc.witness.empty() ? desc.witness
                          : !der.witness.empty() ? der.witness
                                                 : naive.witness;
    rep.scalars.emplace_back("witness", witness);
    std::cout << render_report(rep, parse_format(o.format));
    return der.verdict && desc.verdict && agree ? 0 : 1;
}

int cmd_equivalence_report(const CommonOpts& o) {
    RootDatum d = make_datum(o);
    EquivariantModule m = load_cli_module(o, d);
    std::vector<RatVec> pts;
    for (const auto& p : o.points) pts.push_back(parse_point(p, d.rank).first);
    if (pts.empty()) pts = default_points(d);
    int degree = o.maxdeg > 0 ? o.maxdeg : -1;
    EquivalenceReport rep = equivalence_witness(d, m, pts, degree);

    Report out;
    out.scalars.emplace_back("module", m.name);
    out.scalars.emplace_back("all_agree", bool_str(rep.all_agree));
    out.columns = {"point",    "stabilizer_order", "naive_isotropy", "derived_isotropy",
                   "descends", "agree",            "witness"};
    for (const auto& row : rep.rows)
        out.rows.push_back({point_str(row.point, RatVec(row.point.size(), Rat(0))),
                            std::to_string(row.stabilizer_order), bool_str(row.naive_isotropy),
                            bool_str(row.derived_isotropy_ok), bool_str(row.descends_ok),
                            bool_str(row.agree), row.witness});
    std::cout << render_report(out, parse_format(o.format));
    return rep.all_agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact alcove, moment-graph and descent computations for affine Weyl groups"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string walk_from, walk_to, sep_g1, sep_g2;
    int rc = 0;

    auto add_common = [&](CLI::App* sub, bool with_point = true) {
        sub->add_option("--type", o.type, "root datum type (A1, A2, B2, C2, G2, A1xA1)");
        sub->add_option("--isogeny", o.isogeny, "adjoint or simply-connected");
        sub->add_option("--lattice", o.lattice_file, "custom lattice basis JSON file");
        sub->add_option("--format", o.format, "table, csv or json");
        sub->add_option("--seed", o.seed, "seed for randomized subchecks");
        if (with_point)
            sub->add_option("--point", o.points,
                            "rational point re1,re2[;im1,im2] (repeatable where meaningful)")
                ->allow_extra_args(false);
    };

    auto* c_root = app.add_subcommand("root-datum", "print the root datum tables");
    add_common(c_root, false);
    c_root->callback([&] { rc = run_guarded([&] { return cmd_root_datum(o); }); });

    auto* c_stab = app.add_subcommand("stabilizer", "certificate of the point stabilizer");
    add_common(c_stab);
    c_stab->callback([&] { rc = run_guarded([&] { return cmd_stabilizer(o); }); });

    auto* c_walk = app.add_subcommand("walk", "locate a regular point, or walk between alcoves");
    add_common(c_walk);
    c_walk->add_option("from", walk_from, "start alcove \"t[..] w[..]\"");
    c_walk->add_option("to", walk_to, "end alcove \"t[..] w[..]\"");
    c_walk->callback([&] { rc = run_guarded([&] { return cmd_walk(o, walk_from, walk_to); }); });

    auto* c_gkm = app.add_subcommand("gkm-sections", "section-space dimensions of an interval");
    add_common(c_gkm, false);
    c_gkm->add_option("--interval", o.interval, "word for the interval top, e.g. \"s0 s1\"");
    c_gkm->add_option("--maxdeg", o.maxdeg, "degree bound");
    o.hbar = "formal";
    c_gkm->add_option("--hbar", o.hbar, "formal or 1");
    c_gkm->callback([&] { rc = run_guarded([&] { return cmd_gkm_sections(o); }); });

    auto* c_adj = app.add_subcommand("adjacency-check",
                                     "adjacency subalgebra vs section space at hbar = 1");
    add_common(c_adj, false);
    c_adj->add_option("--interval", o.interval, "word for the interval top");
    c_adj->add_option("--maxdeg", o.maxdeg, "degree bound");
    c_adj->add_option("--hbar", o.hbar, "must be 1");
    c_adj->callback([&] {
        o.hbar = c_adj->count("--hbar") ? o.hbar : "1";
        rc = run_guarded([&] { return cmd_adjacency_check(o); });
    });

    auto* c_beta = app.add_subcommand("beta-check", "averaging section identities at a point");
    add_common(c_beta);
    c_beta->add_option("--maxdeg", o.maxdeg, "degree bound for the identities");
    c_beta->callback([&] {
        if (!c_beta->count("--maxdeg")) o.maxdeg = 4;
        rc = run_guarded([&] { return cmd_beta_check(o); });
    });

    auto* c_sep = app.add_subcommand("separates",
                                     "test whether adjacency functions separate a coincident pair");
    add_common(c_sep);
    c_sep->add_option("gamma", sep_g1, "first element \"t[..] w[..]\"")->required();
    c_sep->add_option("gamma2", sep_g2, "second element")->required();
    c_sep->callback([&] { rc = run_guarded([&] { return cmd_separates(o, sep_g1, sep_g2); }); });

    auto* c_inv = app.add_subcommand("invariants",
                                     "Molien series and coinvariant algebra of a stabilizer");
    add_common(c_inv);
    c_inv->callback([&] { rc = run_guarded([&] { return cmd_invariants(o); }); });

    auto* c_desc = app.add_subcommand("descent-check",
                                      "isotropy and descent verdicts for a module at a point");
    add_common(c_desc);
    c_desc->add_option("--module", o.module_file, "module JSON file");
    c_desc->add_option("--maxdeg", o.maxdeg, "membership degree bound (default: automatic)");
    c_desc->callback([&] {
        if (!c_desc->count("--maxdeg")) o.maxdeg = -1;
        rc = run_guarded([&] { return cmd_descent_check(o); });
    });

    auto* c_eq = app.add_subcommand("equivalence-report",
                                    "derived isotropy vs descent over a point set");
    add_common(c_eq);
    c_eq->add_option("--module", o.module_file, "module JSON file");
    c_eq->add_option("--maxdeg", o.maxdeg, "membership degree bound (default: automatic)");
    c_eq->callback([&] {
        if (!c_eq->count("--maxdeg")) o.maxdeg = -1;
        rc = run_guarded([&] { return cmd_equivalence_report(o); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return rc;
}
