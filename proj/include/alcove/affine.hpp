#ifndef ALCOVE_AFFINE_HPP
#define ALCOVE_AFFINE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcove/rootdata.hpp"

namespace alcove {

// gamma = t_lambda . w, acting by x -> w(x) + hbar lambda. lambda is kept in
// root coordinates and must lie in the datum's character lattice L.
struct Aff {
    RatVec lambda;
    int w = 0;
};

inline bool operator==(const Aff& a, const Aff& b) { return a.w == b.w && a.lambda == b.lambda; }
inline bool operator!=(const Aff& a, const Aff& b) { return !(a == b); }

std::string aff_key(const Aff& a);  // canonical map/set key

Aff aff_identity(const RootDatum& d);
Aff aff_translation(const RootDatum& d, const RatVec& lambda_root);
// t_{k alpha} s_alpha; requires k alpha in L.
Aff aff_reflection(const RootDatum& d, std::size_t pos_root, const Rat& k);
Aff aff_compose(const RootDatum& d, const Aff& a, const Aff& b);
Aff aff_invert(const RootDatum& d, const Aff& a);

RatVec aff_act(const RootDatum& d, const Aff& a, const RatVec& x, const Rat& hbar);
// Affine on the real part, linear on the imaginary part.
std::pair<RatVec, RatVec> aff_act_complex(const RootDatum& d, const Aff& a, const RatVec& re,
                                          const RatVec& im, const Rat& hbar);

bool in_waff(const RootDatum& d, const Aff& a);  // translation part in Q
// (positive root index, level) when a = s_{alpha,k}; nullopt otherwise.
std::optional<std::pair<std::size_t, Rat>> as_reflection(const RootDatum& d, const Aff& a);

// Number of affine hyperplanes separating A0 from gamma(A0).
long aff_length(const RootDatum& d, const Aff& a);

// Generator ids for words in the affine group: 1..r are the finite simple
// reflections; 0 is the affine reflection s_{theta_s,1} of component 0; for
// component j >= 1 the affine generator has id rank + j.
std::vector<int> affine_generator_ids(const RootDatum& d);
Aff affine_generator(const RootDatum& d, int id);

struct NonRegularPoint : std::runtime_error {
    std::size_t root_index;
    Rat level;
    NonRegularPoint(const RootDatum& d, std::size_t ri, const Rat& lvl);
};

struct Located {
    Aff element;            // x lies in element(A0)
    std::vector<int> word;  // reduced word in generator ids, left-to-right product
};

// Folds x into the fundamental alcove; throws NonRegularPoint on walls.
Located locate_alcove(const RootDatum& d, const RatVec& x);

// gamma = omega . waff with omega of length zero and waff in W^aff.
struct Factorization {
    Aff omega;
    Aff waff;
    std::vector<int> word;  // reduced word of waff
};
Factorization factorize(const RootDatum& d, const Aff& a);

// Lower Bruhat interval {omega . v : v <= waff}, deduplicated, sorted by
// (length, canonical key).
std::vector<Aff> bruhat_interval(const RootDatum& d, const Aff& a);

// Downward closure within each W^aff-coset via single-letter deletions.
bool is_bruhat_closed(const RootDatum& d, const std::vector<Aff>& set);

struct StabilizerCertificate {
    RatVec re, im;
    std::vector<Aff> elements;      // Gamma^x inside W^aff (hbar = 1 on Re, finite part fixes Im)
    std::vector<Aff> re_elements;   // Gamma^{Re}
    std::vector<Aff> ext_elements;  // extended stabilizer of x (translations in L)
    std::vector<Aff> generators;    // affine reflections through x
    std::vector<std::size_t> phi_x;  // roots alpha with <Re, alpha^vee> integral
    std::vector<int> w_image;        // pi(elements)
    Aff adjacent_alcove;
    std::vector<Aff> wall_generators;  // wall reflections of adjacent_alcove through Re
    RatMat v_x;                        // rows span the fixed space of pi(Gamma^{Re})
    std::size_t alcove_count = 0;      // alcoves whose closure contains Re
};

StabilizerCertificate stabilizer(const RootDatum& d, const RatVec& re, const RatVec& im);

// Reflections rho_1..rho_n, each fixing a wall through re, with
// rho_n ... rho_1 P = Q and all intermediate alcoves containing re.
std::vector<Aff> alcove_walk(const RootDatum& d, const Aff& p, const Aff& q, const RatVec& re);

// "t[c1,...,cr] w[i1,...]" with c the L-basis coordinates of lambda and the
// canonical reduced word (1-based simple indices) of w; bijective.
std::string aff_str(const RootDatum& d, const Aff& a);
Aff aff_parse(const RootDatum& d, const std::string& s);

// Subgroup generated by the given elements (closure under composition).
std::vector<Aff> generate_subgroup(const RootDatum& d, const std::vector<Aff>& gens,
                                   std::size_t budget = 4096);

}  // namespace alcove

#endif
