#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "bigint.hpp"
#include "errors.hpp"

namespace cdc {

/// Gaussian binomial [n choose k]_q: the number of k-dimensional subspaces of F_q^n.
/// Zero when k < 0 or k > n.
inline BigCount gaussian_binomial(int n, int k, unsigned q) {
    if (q < 2) throw InvalidParameter("gaussian_binomial: q must be at least 2");
    if (n < 0) throw InvalidParameter("gaussian_binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    // [n, j+1] = [n, j] * (q^(n-j) - 1) / (q^(j+1) - 1), exact at every step.
    BigCount r = 1;
    for (int j = 0; j < k; ++j) {
        r *= ipow(q, static_cast<unsigned>(n - j)) - 1;
        const BigCount den = ipow(q, static_cast<unsigned>(j + 1)) - 1;
        if (r % den != 0) throw InternalError("gaussian_binomial: inexact division");
        r /= den;
    }
    return r;
}

/// Rank distribution A_r of an MRD code of m x nmin matrices (m >= nmin) with minimum rank distance d.
struct RankDistribution {
    unsigned q = 0;
    unsigned m = 0;
    unsigned nmin = 0;
    unsigned d = 0;
    std::map<unsigned, BigCount> counts;  // r in {0} u [d, nmin]

    BigCount total() const {
        BigCount s = 0;
        for (const auto& [r, c] : counts) s += c;
        return s;
    }

    BigCount at(unsigned r) const {
        auto it = counts.find(r);
        return it == counts.end() ? BigCount(0) : it->second;
    }
};

/// Rank distribution of any MRD code with the given parameters (Delsarte's formula):
///
///   A_r = [nmin, r]_q * sum_{i=0}^{r-d} (-1)^i q^(i(i-1)/2) [r, i]_q (q^(m(r-i-d+1)) - 1)
///
/// The quotient q^(m(nmin-d+1)) / q^(m(nmin+i-r)) is taken as q^(m(r-i-d+1)),
/// which has a nonnegative exponent throughout the summation range.
inline RankDistribution delsarte_rank_distribution(unsigned q, unsigned m, unsigned nmin, unsigned d) {
    if (q < 2) throw InvalidParameter("rank distribution: q must be at least 2");
    if (!(m >= nmin && nmin >= d && d >= 1))
        throw InvalidParameter("rank distribution requires m >= nmin >= d >= 1 (got m=" + std::to_string(m) +
                               ", nmin=" + std::to_string(nmin) + ", d=" + std::to_string(d) + ")");
    RankDistribution dist{q, m, nmin, d, {}};
    dist.counts[0] = 1;
    for (unsigned r = d; r <= nmin; ++r) {
        BigCount inner = 0;
        for (unsigned i = 0; i <= r - d; ++i) {
            BigCount term = ipow(q, i > 0 ? i * (i - 1) / 2 : 0) *
                            gaussian_binomial(static_cast<int>(r), static_cast<int>(i), q) *
                            (ipow(q, m * (r - i - d + 1)) - 1);
            if (i % 2 == 0)
                inner += term;
            else
                inner -= term;
        }
        BigCount a = gaussian_binomial(static_cast<int>(nmin), static_cast<int>(r), q) * inner;
        if (a < 0) throw InternalError("rank distribution: negative count at rank " + std::to_string(r));
        dist.counts[r] = a;
    }
    if (dist.total() != ipow(q, m * (nmin - d + 1)))
        throw InternalError("rank distribution does not sum to the MRD cardinality");
    return dist;
}

/// Number of rows x cols matrices over GF(q) of rank exactly r:
/// [cols, r]_q * prod_{i<r} (q^rows - q^i).
inline BigCount count_rank_matrices(unsigned q, unsigned rows, unsigned cols, unsigned r) {
    if (q < 2) throw InvalidParameter("count_rank_matrices: q must be at least 2");
    if (r > std::min(rows, cols))
        throw InvalidParameter("count_rank_matrices: rank " + std::to_string(r) + " exceeds min(rows, cols)");
    BigCount c = gaussian_binomial(static_cast<int>(cols), static_cast<int>(r), q);
    const BigCount qr = ipow(q, rows);
    for (unsigned i = 0; i < r; ++i) c *= qr - ipow(q, i);
    return c;
}

/// sum_{r=r_lo}^{r_hi} A_r of the MRD rank distribution; 0 for an empty range.
inline BigCount truncated_rank_sum(unsigned q, unsigned m, unsigned nmin, unsigned d, unsigned r_lo, unsigned r_hi) {
    const auto dist = delsarte_rank_distribution(q, m, nmin, d);
    if (r_lo > r_hi) return 0;
    if (r_lo < d || r_hi > nmin)
        throw InvalidParameter("truncated_rank_sum requires d <= r_lo <= r_hi <= nmin");
    BigCount s = 0;
    for (unsigned r = r_lo; r <= r_hi; ++r) s += dist.at(r);
    return s;
}

}  // namespace cdc
