#ifndef ALCOVE_GKM_HPP
#define ALCOVE_GKM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcove/affine.hpp"
#include "alcove/polynomial.hpp"

namespace alcove {

enum class HbarMode { formal, set_to_1 };

// Vertices are a Bruhat-closed set of affine elements; an edge joins gamma to
// gamma.s for an affine reflection s = s_{alpha,k} of W^aff (integral level)
// and carries the linear form <y,alpha^vee> - k hbar, the equation of the
// hbar-fixed locus of s in the tail variable y.
struct MomentGraph {
    const RootDatum* datum = nullptr;
    std::vector<Aff> vertices;
    std::vector<long> lengths;
    struct Edge {
        std::size_t a, b;  // indices into vertices
        std::size_t root;  // positive root index
        Rat level;
    };
    std::vector<Edge> edges;

    std::size_t vertex_index(const Aff& g) const;
    // Number of polynomial variables for tuples in the given mode.
    int poly_vars(HbarMode mode) const {
        return datum->rank + (mode == HbarMode::formal ? 1 : 0);
    }
    // The edge label as a polynomial (degree 1).
    Poly edge_label(const Edge& e, HbarMode mode) const;
};

MomentGraph build_moment_graph(const RootDatum& d, const std::vector<Aff>& omega);

// One polynomial per vertex, all in poly_vars(mode) variables.
using SectionTuple = std::vector<Poly>;

struct SectionCheck {
    bool ok = true;
    std::optional<std::size_t> failing_edge;
};
SectionCheck is_section(const SectionTuple& t, const MomentGraph& g, HbarMode mode);

// Filtered bases of a subspace of (polynomials of degree <= k)^{|vertices|}
// for each k <= bound. Rows of bases[k] are coefficient vectors over the
// column basis (vertex-major, monomials of degree <= bound minor).
struct GradedSubspace {
    HbarMode mode = HbarMode::set_to_1;
    int nvars = 0;
    std::vector<std::vector<int>> monos;
    std::vector<RatMat> bases;
    std::vector<std::size_t> dims;         // dims[k] = rank of bases[k]
    std::vector<std::size_t> graded_dims;  // formal mode: exact-degree-k dimension

    SectionTuple tuple_of_row(const MomentGraph& g, const RatVec& row) const;
};

GradedSubspace section_space(const MomentGraph& g, int degree, HbarMode mode);
GradedSubspace adjacency_subalgebra(const MomentGraph& g, int degree, HbarMode mode);

struct KernelEqualityRow {
    int degree = 0;
    std::size_t dim_adjacency = 0;
    std::size_t dim_kernel = 0;
    bool equal = false;
};
struct KernelEqualityReport {
    std::vector<KernelEqualityRow> rows;
    bool inclusion_ok = true;              // adjacency basis elements are sections
    std::optional<int> saturation_degree;  // first degree of the final equal run
};
KernelEqualityReport kernel_equality_report(const MomentGraph& g, int d_max, HbarMode mode);

// The averaging section beta_x at hbar = 1: component average over the
// extended stabilizer of x. Checks, as exact polynomial identities:
//   (a) beta_x . t# = id on all monomials of degree <= degree,
//   (b) beta_x(t#(f) xi) = f beta_x(xi) on sampled f, xi,
//   (c) u = beta_x(s#(f)) is invariant under every stabilizer element.
struct BetaReport {
    bool retraction_ok = true;
    bool linear_ok = true;
    bool invariance_ok = true;
    std::size_t stabilizer_order = 0;
    bool passed() const { return retraction_ok && linear_ok && invariance_ok; }
};
BetaReport verify_beta_section(const RootDatum& d, const RatVec& x, const MomentGraph& g,
                               int degree = 4, unsigned seed = 20260815u);

// Whether some adjacency function separates the coincident points
// (gamma, y) and (gamma', y); requires act(gamma,y,1) = act(gamma',y,1).
struct SeparationResult {
    bool separated = false;
    bool cross_validated = false;  // generator-evaluation comparison agrees
};
SeparationResult separates(const RootDatum& d, const Aff& gamma, const Aff& gamma2,
                           const RatVec& y);

// All Bruhat-closed subsets of W^aff of the given maximal size (the universe
// is the length < max_size ball), sorted canonically.
std::vector<std::vector<Aff>> bruhat_ideals(const RootDatum& d, std::size_t max_size);

}  // namespace alcove

#endif
