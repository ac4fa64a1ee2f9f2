#ifndef ALCOVE_POLYNOMIAL_HPP
#define ALCOVE_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "alcove/numeric.hpp"

namespace alcove {

// Sparse multivariate polynomial over Q. Terms are keyed by exponent vectors
// of fixed length nvars; the std::map keeps iteration deterministic.
class Poly {
   public:
    using Expo = std::vector<int>;
    using TermMap = std::map<Expo, Rat>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rat& c);
    static Poly var(int nvars, int i);
    static Poly monomial(Expo e, const Rat& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    // -1 for the zero polynomial.
    int total_degree() const;
    Poly homogeneous_part(int d) const;
    Rat coeff(const Expo& e) const;
    void add_term(const Expo& e, const Rat& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Poly pow(int k) const;

    // Replaces variable i by images[i]; images may live in a different ring.
    Poly substitute(const std::vector<Poly>& images) const;
    Rat evaluate(const RatVec& point) const;

    // Appends one new variable (exponent 0 everywhere) at the end.
    Poly extend_vars(int new_nvars) const;
    // Sets the last variable to the given constant and drops it.
    Poly specialize_last(const Rat& value) const;

    std::string str(const std::vector<std::string>& names) const;

   private:
    int nvars_;
    TermMap terms_;
};

// All exponent vectors with the given total degree (resp. at most), in
// lexicographic order.
std::vector<std::vector<int>> monomials_exact(int nvars, int degree);
std::vector<std::vector<int>> monomials_upto(int nvars, int degree);

// Default variable names: y1..yr plus trailing "h" when with_h.
std::vector<std::string> var_names(int r, bool with_h);

// Parses sums of terms like "3*y1^2*y2 - y2 + 5/2" over the given names.
// Accepts '+', '-', '*', '^', parentheses-free monomial syntax.
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);

}  // namespace alcove

#endif
