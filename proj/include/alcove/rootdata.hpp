#ifndef ALCOVE_ROOTDATA_HPP
#define ALCOVE_ROOTDATA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcove/linalg.hpp"
#include "alcove/numeric.hpp"

namespace alcove {

// Points of t* carry coroot-pairing coordinates: coordinate i of x is
// <x, alpha_i^vee>. A root alpha is stored with its coefficients c over the
// simple roots and the coefficients d of alpha^vee over the simple coroots,
// so that <x, alpha^vee> = d . x and the pairing coordinates of alpha itself
// are A c (A the Cartan matrix, A_ij = <alpha_j, alpha_i^vee>).
struct Root {
    RatVec root_coords;    // c, integral
    RatVec coroot_coords;  // d, integral
    RatVec fw;             // A c
    bool positive = false;
};

enum class Isogeny { adjoint, simply_connected, custom };

class RootDatum {
   public:
    std::string type_label;
    Isogeny isogeny = Isogeny::adjoint;
    int rank = 0;
    RatMat cartan;      // A
    RatMat cartan_inv;  // A^{-1}
    std::vector<std::vector<int>> components;  // simple-root indices per factor

    std::vector<Root> roots;  // positives first, then their negatives
    std::vector<std::size_t> positive_roots;

    // Character lattice L with Q <= L <= P; rows of lattice_basis are the
    // basis vectors of L in root coordinates.
    RatMat lattice_basis;
    RatMat lattice_inv;

    // Finite Weyl group, index 0 = identity; words are shortlex-canonical.
    std::vector<RatMat> weyl;       // matrices on pairing coordinates
    std::vector<RatMat> weyl_root;  // same elements on root coordinates
    std::vector<std::vector<int>> weyl_word;
    std::vector<int> weyl_inv;
    std::vector<std::vector<int>> weyl_mult;
    std::vector<int> simple_weyl;             // simple index -> Weyl index
    std::vector<std::vector<int>> root_perm;  // [w][root index] -> root index
    std::vector<int> reflection_root;         // [w] -> positive root index or -1

    // pi1(G^vee) = L/Q presented by Smith normal form of the coordinates of
    // the simple roots in the L-basis: class(lambda) = (U c) mod diag.
    IntMat pi1_u;
    IntVec pi1_diag;
    Int pi1_order;

    // Highest short roots (= roots whose coroot is the highest coroot) per
    // component, and a rational interior point of the fundamental alcove.
    std::vector<std::size_t> highest_short;
    RatVec p0;

    Rat pairing(const RatVec& x, std::size_t root_idx) const {
        return dot(roots[root_idx].coroot_coords, x);
    }

    // s_{alpha,k}(x) = x - (<x,alpha^vee> - k) alpha on pairing coordinates.
    RatVec reflect(const RatVec& x, std::size_t root_idx, const Rat& k) const;

    // Exact coordinates of lambda (given in root coordinates) over the
    // L-basis; nullopt when lambda is not in L.
    std::optional<IntVec> lattice_coords(const RatVec& lambda_root) const;
    bool in_lattice(const RatVec& lambda_root) const { return lattice_coords(lambda_root).has_value(); }
    bool in_root_lattice(const RatVec& lambda_root) const;

    // Class of lambda in L/Q as residues mod pi1_diag; throws if lambda not in L.
    IntVec pi1_class(const RatVec& lambda_root) const;
    std::string pi1_class_str(const IntVec& cls) const;

    std::size_t weyl_order() const { return weyl.size(); }
    int weyl_index(const RatMat& m) const;  // -1 when absent
    std::size_t root_index(const RatVec& root_coords) const;

    // Root-coordinate / pairing-coordinate conversions.
    RatVec fw_of_root_coords(const RatVec& c) const { return mat_vec(cartan, c); }
    RatVec root_coords_of_fw(const RatVec& x) const { return mat_vec(cartan_inv, x); }

   private:
    std::map<std::string, int> weyl_lookup_;
    std::map<std::vector<std::string>, std::size_t> root_lookup_;
    friend RootDatum build_root_datum(const std::string&, Isogeny, const RatMat*);
};

// lattice must be supplied exactly for Isogeny::custom (rows in root
// coordinates); throws std::invalid_argument on unsupported type labels or a
// lattice not between Q and P.
RootDatum build_root_datum(const std::string& type_label, Isogeny isogeny,
                           const RatMat* lattice = nullptr);

}  // namespace alcove

#endif
