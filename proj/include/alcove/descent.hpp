#ifndef ALCOVE_DESCENT_HPP
#define ALCOVE_DESCENT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcove/affine.hpp"
#include "alcove/polynomial.hpp"

namespace alcove {

// A finite subgroup of W realized on recentered coordinates z = y - x, where
// it acts linearly; stabilizer subgroups arrive this way because gamma = t_l w
// fixing x acts on z by the matrix of w alone.
class FiniteReflectionGroup {
   public:
    FiniteReflectionGroup(const RootDatum& d, std::vector<int> weyl_indices, RatVec center);
    static FiniteReflectionGroup from_certificate(const RootDatum& d,
                                                  const StabilizerCertificate& cert);
    static FiniteReflectionGroup standard(const RootDatum& d);  // all of W at the origin

    const RootDatum& datum() const { return *datum_; }
    const RatVec& center() const { return center_; }
    std::size_t size() const { return weyl_.size(); }
    int weyl_index(std::size_t i) const { return weyl_[i]; }
    const RatMat& matrix(std::size_t i) const { return datum_->weyl[weyl_[i]]; }
    std::size_t identity() const { return pos_.at(0); }
    std::size_t mult(std::size_t i, std::size_t j) const {
        return pos_.at(datum_->weyl_mult[weyl_[i]][weyl_[j]]);
    }
    std::size_t inverse(std::size_t i) const { return pos_.at(datum_->weyl_inv[weyl_[i]]); }
    const std::vector<std::size_t>& reflections() const { return refl_; }
    bool is_reflection_group() const { return generated_by_reflections_; }
    // Primitive linear form (coefficients over z) cutting the mirror of the
    // reflection at position refl_[k].
    RatVec reflection_form(std::size_t k) const;
    std::string element_name(std::size_t i) const;

   private:
    const RootDatum* datum_ = nullptr;
    RatVec center_;
    std::vector<int> weyl_;
    std::map<int, std::size_t> pos_;
    std::vector<std::size_t> refl_;
    bool generated_by_reflections_ = false;
};

// Exact coefficients of (1/|G|) sum_g 1/det(1 - t g) through the bound.
std::vector<long> molien_series(const FiniteReflectionGroup& g, int bound);
// Independent oracle: rank of the Reynolds averaging operator in exact degree.
std::size_t invariant_dim_reynolds(const FiniteReflectionGroup& g, int degree);
// Coefficients of prod_i 1/(1 - t^{d_i}) through the bound.
std::vector<long> free_algebra_series(const std::vector<int>& degrees, int bound);

struct InvariantReport {
    bool applicable = true;  // group generated by its reflections
    std::size_t group_order = 0;
    std::size_t reflection_count = 0;
    std::vector<long> molien;                   // degrees 0..reflection_count+1
    std::vector<std::size_t> coinvariant_dims;  // degrees 0..reflection_count+1
    std::size_t coinvariant_total = 0;          // sum through degree reflection_count
    std::vector<int> fundamental_degrees;       // generator degrees of the invariant ring
};

// Chevalley-Shephard-Todd data: the coinvariant algebra O(V)/(positive-degree
// invariants) computed by exact elimination; its top degree is the number of
// reflections and its dimension is |G| exactly for reflection groups.
InvariantReport cst_check(const FiniteReflectionGroup& g);

using PolyMat = std::vector<std::vector<Poly>>;

// Free graded O(V)-module with a semilinear action: elements are polynomial
// column vectors over the generators, gamma acts by v -> A_gamma (v o
// gamma^{-1}), and the matrices satisfy A_{gh} = A_g (A_h o g^{-1}).
// A module presented as a quotient carries a resolution; by convention its
// generators and action matrices are those of the zeroth resolution term.
struct EquivariantModule {
    std::string name;
    int nvars = 0;
    std::vector<int> gen_degrees;
    std::map<int, PolyMat> action;  // Weyl index -> matrix
    struct Resolution {
        std::vector<EquivariantModule> terms;  // F0, F1, ...
        std::vector<PolyMat> diffs;            // diffs[k] : F_{k+1} -> F_k
    };
    std::optional<Resolution> resolution;
    bool flat() const { return !resolution.has_value(); }
    std::size_t rank() const { return gen_degrees.size(); }
};

struct ModuleCheck {
    bool ok = true;
    std::string detail;
};
// A_e = id, exact cocycle over the whole group, differentials equivariant
// (D . A^src = A^tgt . (D o gamma^{-1})) and composing to zero.
ModuleCheck validate_module(const EquivariantModule& m, const FiniteReflectionGroup& g);

struct VerdictWitness {
    bool verdict = true;
    std::string witness;  // first failure: element, generator, explanation
};

int default_degree_bound(const EquivariantModule& m, const FiniteReflectionGroup& g);

// Naive isotropy: entries of (A_gamma - id) lie in the ideal of the fixed
// space of gamma, for every gamma != e. Quotient modules test membership in
// I_fix . F0 + im(d1) degreewise instead.
VerdictWitness isotropy_trivial(const EquivariantModule& m, const FiniteReflectionGroup& g,
                                int degree = -1);
// Derived form: every term of the resolution (or the module itself when
// flat) passes the flat isotropy test.
VerdictWitness derived_isotropy(const EquivariantModule& m, const FiniteReflectionGroup& g,
                                int degree = -1);
// Descent along V -> V//G: for every reflection s and every gamma, the
// comodule components at gamma and gamma s agree modulo the mirror form of
// s; quotient modules delegate to their resolution terms.
VerdictWitness descends(const EquivariantModule& m, const FiniteReflectionGroup& g,
                        int degree = -1);

struct EquivalenceRow {
    RatVec point;
    std::size_t stabilizer_order = 0;
    bool naive_isotropy = false;
    bool derived_isotropy_ok = false;
    bool descends_ok = false;
    bool agree = false;  // derived isotropy verdict == descent verdict
    std::string witness;
};
struct EquivalenceReport {
    std::vector<EquivalenceRow> rows;
    bool all_agree = true;
};

// Restricts m to the stabilizer of each point and compares the descent
// verdict against the derived-isotropy verdict; the two are expected to
// agree at every point.
EquivalenceReport equivalence_witness(const RootDatum& d, const EquivariantModule& m,
                                      const std::vector<RatVec>& points, int degree = -1);

// Coinduction from W^aff to the extended group: one copy of the module per
// pi1 class, with block structure (gamma m)_c = A_{w_c gamma w_{c+p}^{-1}}
// m_{c+p(gamma)} over length-zero representatives w_c.
struct ExtendedModule {
    const RootDatum* datum = nullptr;
    const EquivariantModule* base = nullptr;
    std::vector<std::string> classes;  // canonical pi1 class order
    std::vector<Aff> reps;             // length-zero representative per class
    std::size_t rank() const { return classes.size() * base->rank(); }
    std::size_t class_position(const std::string& cls) const;
    // Block action matrix of an extended-group element.
    PolyMat action(const Aff& gamma) const;
};

ExtendedModule coinduce_extended(const RootDatum& d, const EquivariantModule& m);

// Solves D X_gamma = A^{F0}_gamma (D o gamma^{-1}) for the induced action on
// a free cover F1 -> F0 of a G-stable column span; nullopt when no
// polynomial solution of bounded degree exists or validation fails.
std::optional<std::map<int, PolyMat>> equivariant_lift(const FiniteReflectionGroup& g,
                                                       const std::map<int, PolyMat>& f0_action,
                                                       const PolyMat& diff,
                                                       const std::vector<int>& f1_degrees,
                                                       const std::vector<int>& f0_degrees);

}  // namespace alcove

#endif
