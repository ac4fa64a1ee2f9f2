#ifndef ALCOVE_CORPUS_HPP
#define ALCOVE_CORPUS_HPP

#include "alcove/descent.hpp"

namespace alcove {

// Curated equivariant modules used by the regression suite and the shipped
// JSON fixtures. All are defined over the full finite Weyl group of the
// datum; restriction to a stabilizer subgroup just selects matrices.

// O_V with the tautological action.
EquivariantModule corpus_structure_sheaf(const RootDatum& d);
// Rank one, gamma acts by det(gamma).
EquivariantModule corpus_sign_twist(const RootDatum& d);
// Left translation on the group algebra of W.
EquivariantModule corpus_regular_rep(const RootDatum& d);
// O/(u) on the line with the chosen sign eps0 on the generator; carries the
// resolution O(-1) --u--> O whose F1 sign is forced to -eps0. Rank 1 data.
EquivariantModule corpus_skyscraper(const RootDatum& d, int eps0);
// Flat rank-two module with A_s = [[1, u^2], [0, -1]]. Rank 1 data.
EquivariantModule corpus_rank2_extension(const RootDatum& d);

// The per-type corpus: all five on the line, the constant-matrix three in
// higher rank.
std::vector<EquivariantModule> module_corpus(const RootDatum& d);

}  // namespace alcove

#endif
