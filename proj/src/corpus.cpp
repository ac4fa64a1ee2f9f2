#include "alcove/corpus.hpp"

#include <stdexcept>

namespace alcove {

namespace {

Rat det(const RatMat& m) {
    if (m.size() == 1) return m[0][0];
    if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    throw std::invalid_argument("corpus determinants cover rank <= 2 only");
}

PolyMat scalar_mat(int nvars, Rat c) { return {{Poly::constant(nvars, c)}}; }

}  // namespace

EquivariantModule corpus_structure_sheaf(const RootDatum& d) {
    EquivariantModule m;
    m.name = "structure";
    m.nvars = d.rank;
    m.gen_degrees = {0};
    for (std::size_t w = 0; w < d.weyl_order(); ++w)
        m.action[static_cast<int>(w)] = scalar_mat(d.rank, Rat(1));
    return m;
}

EquivariantModule corpus_sign_twist(const RootDatum& d) {
    EquivariantModule m;
    m.name = "sign";
    m.nvars = d.rank;
    m.gen_degrees = {0};
    for (std::size_t w = 0; w < d.weyl_order(); ++w)
        m.action[static_cast<int>(w)] = scalar_mat(d.rank, det(d.weyl[w]));
    return m;
}

EquivariantModule corpus_regular_rep(const RootDatum& d) {
    std::size_t n = d.weyl_order();
    EquivariantModule m;
    m.name = "regular";
    m.nvars = d.rank;
    m.gen_degrees.assign(n, 0);
    for (std::size_t w = 0; w < n; ++w) {
        PolyMat a(n, std::vector<Poly>(n, Poly(d.rank)));
        for (std::size_t j = 0; j < n; ++j)
            a[d.weyl_mult[w][j]][j] = Poly::constant(d.rank, Rat(1));
        m.action[static_cast<int>(w)] = a;
    }
    return m;
}

EquivariantModule corpus_skyscraper(const RootDatum& d, int eps0) {
    if (d.rank != 1) throw std::invalid_argument("skyscraper corpus module needs rank 1");
    EquivariantModule f0;
    f0.name = "skyscraper F0";
    f0.nvars = 1;
    f0.gen_degrees = {0};
    f0.action[0] = scalar_mat(1, Rat(1));
    f0.action[1] = scalar_mat(1, Rat(eps0));
    EquivariantModule f1;
    f1.name = "skyscraper F1";
    f1.nvars = 1;
    f1.gen_degrees = {1};
    f1.action[0] = scalar_mat(1, Rat(1));
    f1.action[1] = scalar_mat(1, Rat(-eps0));
    EquivariantModule m = f0;
    m.name = eps0 > 0 ? "skyscraper+" : "skyscraper-";
    m.resolution = EquivariantModule::Resolution{{f0, f1}, {PolyMat{{Poly::var(1, 0)}}}};
    return m;
}

EquivariantModule corpus_rank2_extension(const RootDatum& d) {
    if (d.rank != 1) throw std::invalid_argument("rank-2 extension corpus module needs rank 1");
    Poly u = Poly::var(1, 0);
    EquivariantModule m;
    m.name = "extension";
    m.nvars = 1;
    m.gen_degrees = {0, 2};
    m.action[0] = {{Poly::constant(1, Rat(1)), Poly(1)},
                   {Poly(1), Poly::constant(1, Rat(1))}};
    m.action[1] = {{Poly::constant(1, Rat(1)), u * u},
                   {Poly(1), Poly::constant(1, Rat(-1))}};
    return m;
}

std::vector<EquivariantModule> module_corpus(const RootDatum& d) {
    std::vector<EquivariantModule> out{corpus_structure_sheaf(d), corpus_sign_twist(d),
                                       corpus_regular_rep(d)};
    if (d.rank == 1) {
        out.push_back(corpus_skyscraper(d, 1));
        out.push_back(corpus_skyscraper(d, -1));
        out.push_back(corpus_rank2_extension(d));
    }
    return out;
}

}  // namespace alcove
