#ifndef ALCOVE_NUMERIC_HPP
#define ALCOVE_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace alcove {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// floor(q) as an exact integer; mpz_fdiv rounds toward -infinity.
inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Canonical text form "p/q" with q > 0, gcd(p,q) = 1; plain "p" when q = 1.
inline std::string rat_str(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

inline Rat rat_parse(const std::string& s) {
    Rat q;
    // mpq_set_str accepts malformed text and zero denominators; both must be
    // rejected before canonicalize would divide by zero.
    if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

inline RatMat identity_mat(std::size_t n) {
    RatMat m(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatVec mat_vec(const RatMat& m, const RatVec& v) {
    RatVec out(m.size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline RatMat mat_mul(const RatMat& a, const RatMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat out(n, RatVec(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

inline RatVec vec_scale(const Rat& c, const RatVec& v) {
    RatVec out(v);
    for (auto& x : out) x *= c;
    return out;
}

inline RatMat transpose(const RatMat& m) {
    if (m.empty()) return {};
    RatMat out(m[0].size(), RatVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) out[j][i] = m[i][j];
    return out;
}

inline bool mat_is_integral(const RatMat& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!is_integer(x)) return false;
    return true;
}

}  // namespace alcove

#endif
