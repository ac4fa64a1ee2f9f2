#ifndef ALCOVE_LINALG_HPP
#define ALCOVE_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "alcove/numeric.hpp"
#include "alcove/parallel.hpp"

namespace alcove {

// Fraction-free (one-step Bareiss) echelon form over Z. Deterministic:
// pivots are the first nonzero entry scanning rows top-down per column.
// The parallel policy splits the row updates; every row sees identical
// arithmetic, so both policies return bit-identical matrices.
struct IntEchelon {
    IntMat mat;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

IntEchelon bareiss_echelon(IntMat a, ExecPolicy pol = ExecPolicy::serial);

// Row-scales to integers (invariant under row scaling) and runs Bareiss.
std::size_t mat_rank(const RatMat& a, ExecPolicy pol = ExecPolicy::serial);

struct RRef {
    RatMat rows;  // nonzero rows, each with leading 1, fully reduced
    std::vector<std::size_t> pivot_cols;
};

RRef rref(const RatMat& a, ExecPolicy pol = ExecPolicy::serial);

// Canonical right-nullspace basis: one vector per free column in increasing
// column order, scaled to a primitive integer vector with positive entry at
// the free column.
RatMat nullspace(const RatMat& a, ExecPolicy pol = ExecPolicy::serial);

// One solution of A x = b, or nullopt when inconsistent (free vars set to 0).
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

RatMat mat_inverse(const RatMat& a);  // requires square nonsingular

// Smith normal form U * N * V = D over Z with U, V unimodular and D diagonal
// with d_1 | d_2 | ... (nonnegative). Intended for small lattice matrices.
struct SmithResult {
    IntMat u, d, v;
};

SmithResult smith_normal_form(IntMat n);

// Incrementally grown subspace of Q^width kept in reduced row echelon form.
class RatSpan {
   public:
    explicit RatSpan(std::size_t width) : width_(width) {}

    // Returns true when v enlarges the span.
    bool add(RatVec v);
    bool contains(RatVec v) const;
    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    const std::vector<RatVec>& rows() const { return rows_; }

   private:
    // Reduces v against rows_; returns the first nonzero column or width_.
    std::size_t reduce(RatVec& v) const;

    std::size_t width_;
    std::vector<RatVec> rows_;             // sorted by pivot column
    std::vector<std::size_t> pivot_cols_;  // strictly increasing
};

}  // namespace alcove

#endif
