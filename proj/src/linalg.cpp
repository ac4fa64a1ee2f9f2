#include "alcove/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace alcove {

IntEchelon bareiss_echelon(IntMat a, ExecPolicy pol) {
    IntEchelon res;
    std::size_t nrows = a.size();
    std::size_t ncols = nrows ? a[0].size() : 0;
    Int prev(1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
        std::size_t piv = r;
        while (piv < nrows && a[piv][col] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(a[r], a[piv]);
        const IntVec& prow = a[r];
        const Int& p = prow[col];
        parallel_for(pol, nrows - r - 1, [&](std::size_t k) {
            IntVec& row = a[r + 1 + k];
            const Int& m = row[col];
            for (std::size_t j = col + 1; j < ncols; ++j) {
                Int t = p * row[j] - m * prow[j];
                mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            row[col] = 0;
        });
        prev = p;
        res.pivot_cols.push_back(col);
        ++r;
    }
    a.resize(r);
    res.mat = std::move(a);
    res.rank = r;
    return res;
}

namespace {

IntMat clear_denominators(const RatMat& a) {
    IntMat out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int l(1);
        for (const auto& q : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        out[i].reserve(a[i].size());
        for (const auto& q : a[i]) {
            Rat s = q * Rat(l);
            out[i].push_back(s.get_num());
        }
    }
    return out;
}

}  // namespace

std::size_t mat_rank(const RatMat& a, ExecPolicy pol) {
    return bareiss_echelon(clear_denominators(a), pol).rank;
}

RRef rref(const RatMat& a, ExecPolicy pol) {
    // Bareiss on the integer-scaled matrix does the elimination work; the
    // small rank x ncols echelon is then Jordan-reduced over Q.
    IntEchelon ech = bareiss_echelon(clear_denominators(a), pol);
    RRef res;
    res.pivot_cols = ech.pivot_cols;
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    res.rows.assign(ech.rank, RatVec(ncols, Rat(0)));
    for (std::size_t i = 0; i < ech.rank; ++i)
        for (std::size_t j = 0; j < ncols; ++j) res.rows[i][j] = Rat(ech.mat[i][j]);
    for (std::size_t i = ech.rank; i-- > 0;) {
        Rat inv = res.rows[i][res.pivot_cols[i]];
        for (auto& x : res.rows[i]) x /= inv;
        for (std::size_t k = 0; k < i; ++k) {
            Rat f = res.rows[k][res.pivot_cols[i]];
            if (f == 0) continue;
            for (std::size_t j = res.pivot_cols[i]; j < ncols; ++j)
                res.rows[k][j] -= f * res.rows[i][j];
        }
    }
    return res;
}

namespace {

// Scales to a primitive integer vector; the positive scale factor keeps the
// free-column entry positive.
void canonicalize_vec(RatVec& v) {
    Int l(1), g(0);
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    for (auto& q : v) q *= Rat(l);
    for (const auto& q : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num().get_mpz_t());
    if (g == 0) return;
    for (auto& q : v) q /= Rat(g);
}

}  // namespace

RatMat nullspace(const RatMat& a, ExecPolicy pol) {
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    RRef r = rref(a, pol);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    RatMat basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(ncols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) v[r.pivot_cols[i]] = -r.rows[i][f];
        canonicalize_vec(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    RatMat aug(a);
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    RRef r = rref(aug);
    RatVec x(ncols, Rat(0));
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
        if (r.pivot_cols[i] == ncols) return std::nullopt;
        x[r.pivot_cols[i]] = r.rows[i][ncols];
    }
    return x;
}

RatMat mat_inverse(const RatMat& a) {
    std::size_t n = a.size();
    RatMat aug(a);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    RRef r = rref(aug);
    if (r.pivot_cols.size() != n || (n && r.pivot_cols[n - 1] != n - 1))
        throw std::invalid_argument("mat_inverse: singular matrix");
    RatMat inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.rows[i][n + j];
    return inv;
}

namespace {

void add_row(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += f * m[src][j];
}

void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
    for (auto& row : m) row[dst] += f * row[src];
}

void swap_cols(IntMat& m, std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}

void negate_row(IntMat& m, std::size_t i) {
    for (auto& x : m[i]) x = -x;
}

}  // namespace

SmithResult smith_normal_form(IntMat n) {
    std::size_t nr = n.size(), nc = nr ? n[0].size() : 0;
    SmithResult res;
    res.u.assign(nr, IntVec(nr, Int(0)));
    res.v.assign(nc, IntVec(nc, Int(0)));
    for (std::size_t i = 0; i < nr; ++i) res.u[i][i] = 1;
    for (std::size_t j = 0; j < nc; ++j) res.v[j][j] = 1;

    std::size_t t = 0;
    while (t < std::min(nr, nc)) {
        // Move the entry of least absolute value in the trailing block to (t,t).
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (n[i][j] == 0) continue;
                if (!found || cmp(abs(n[i][j]), abs(n[pi][pj])) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        std::swap(n[t], n[pi]);
        std::swap(res.u[t], res.u[pi]);
        swap_cols(n, t, pj);
        swap_cols(res.v, t, pj);

        // Euclid on row t and column t until the pivot is alone.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (n[i][t] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), n[i][t].get_mpz_t(), n[t][t].get_mpz_t());
                add_row(n, i, t, -q);
                add_row(res.u, i, t, -q);
                if (n[i][t] != 0) {
                    std::swap(n[t], n[i]);
                    std::swap(res.u[t], res.u[i]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (n[t][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), n[t][j].get_mpz_t(), n[t][t].get_mpz_t());
                add_col(n, j, t, -q);
                add_col(res.v, j, t, -q);
                if (n[t][j] != 0) {
                    swap_cols(n, t, j);
                    swap_cols(res.v, t, j);
                    dirty = true;
                }
            }
        }

        // Redo this pivot if it fails to divide the trailing block; adding the
        // offending row makes the next Euclid round shrink the pivot.
        bool divides_all = true;
        for (std::size_t i = t + 1; i < nr && divides_all; ++i)
            for (std::size_t j = t + 1; j < nc; ++j)
                if (n[i][j] % n[t][t] != 0) {
                    add_row(n, t, i, Int(1));
                    add_row(res.u, t, i, Int(1));
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;
        if (n[t][t] < 0) {
            negate_row(n, t);
            negate_row(res.u, t);
        }
        ++t;
    }
    res.d = std::move(n);
    return res;
}

std::size_t RatSpan::reduce(RatVec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rat& c = v[pivot_cols_[i]];
        if (c == 0) continue;
        Rat f = c;  // rows_ have leading 1
        for (std::size_t j = pivot_cols_[i]; j < width_; ++j) v[j] -= f * rows_[i][j];
    }
    for (std::size_t j = 0; j < width_; ++j)
        if (v[j] != 0) return j;
    return width_;
}

bool RatSpan::contains(RatVec v) const { return reduce(v) == width_; }

bool RatSpan::add(RatVec v) {
    std::size_t p = reduce(v);
    if (p == width_) return false;
    Rat lead = v[p];
    for (auto& x : v) x /= lead;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Rat f = rows_[i][p];
        if (f == 0) continue;
        for (std::size_t j = p; j < width_; ++j) rows_[i][j] -= f * v[j];
    }
    auto it = std::upper_bound(pivot_cols_.begin(), pivot_cols_.end(), p);
    std::size_t pos = static_cast<std::size_t>(it - pivot_cols_.begin());
    pivot_cols_.insert(it, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
}

}  // namespace alcove
