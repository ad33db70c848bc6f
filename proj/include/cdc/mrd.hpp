#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"

namespace cdc {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t(1) << 24;
inline constexpr const char* kBudgetEnvVar = "CDC_ENUM_BUDGET";

/// Maximum number of codewords or members any single enumeration may produce.
/// Overridden by the CDC_ENUM_BUDGET environment variable.
inline std::uint64_t enumeration_budget() {
    if (const char* s = std::getenv(kBudgetEnvVar); s != nullptr && *s != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return v;
        throw InvalidParameter(std::string(kBudgetEnvVar) + " must be a positive integer, got '" + s + "'");
    }
    return kDefaultEnumerationBudget;
}

struct RankCodeSpec {
    unsigned q = 0;
    unsigned rows = 0;  // k
    unsigned cols = 0;  // n >= k
    unsigned min_rank = 0;

    BigCount cardinality() const { return ipow(q, cols * (rows - min_rank + 1)); }
};

/// An explicitly enumerated rank-metric code of rows x cols matrices.
struct RankCode {
    RankCodeSpec spec;
    Field field;
    std::vector<Matrix> codewords;
    bool full = true;  // false for subcodes produced by sq_filter
};

/// Enumerates the Gabidulin code of k x n matrices over GF(q) with minimum rank distance `min_rank`.
///
/// Messages (f_0, ..., f_{k-min_rank}) over GF(q^n) define f(x) = sum f_i x^(q^i); the codeword's
/// row i is the expansion over GF(q) of f(g_i), with g_i = b^i the power basis of GF(q^n).
/// Codewords come out in message order, f_0 the least significant digit.
/// The expansion basis is `ext.basis()`, so rank is independent of it.
inline RankCode gabidulin_enumerate(const ExtensionField& ext, unsigned k, unsigned min_rank,
                                    std::optional<std::uint64_t> budget = std::nullopt) {
    const unsigned n = ext.degree();
    const Field& base = ext.base();
    const Field& big = ext.field();
    if (!(1 <= min_rank && min_rank <= k && k <= n))
        throw InvalidParameter("Gabidulin code requires 1 <= min_rank <= k <= n (got min_rank=" +
                               std::to_string(min_rank) + ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    RankCodeSpec spec{base.order(), k, n, min_rank};
    const std::uint64_t limit = budget.value_or(enumeration_budget());
    if (spec.cardinality() > limit)
        throw BudgetExceeded("Gabidulin code Q_" + std::to_string(spec.q) + "(" + std::to_string(n) + "," +
                             std::to_string(k) + "," + std::to_string(min_rank) + ") has " + to_decimal(spec.cardinality()) +
                             " codewords, above the enumeration budget " + std::to_string(limit));

    const unsigned terms = k - min_rank + 1;
    const unsigned Q = big.order();
    // frob[i][t] = g_i^(q^t)
    std::vector<std::vector<Elem>> frob(k, std::vector<Elem>(terms));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned t = 0; t < terms; ++t) frob[i][t] = ext.frobenius(big.exp(i), t);

    const std::uint64_t count = to_u64(spec.cardinality());
    RankCode code{spec, base, {}, true};
    code.codewords.reserve(count);
    std::vector<Elem> msg(terms, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t r = idx;
        for (unsigned t = 0; t < terms; ++t, r /= Q) msg[t] = static_cast<Elem>(r % Q);
        std::vector<Elem> entries(std::size_t(k) * n);
        for (unsigned i = 0; i < k; ++i) {
            Elem v = 0;
            for (unsigned t = 0; t < terms; ++t) v = big.add(v, big.mul(msg[t], frob[i][t]));
            const auto c = ext.expand(v);
            std::copy(c.begin(), c.end(), entries.begin() + std::size_t(i) * n);
        }
        code.codewords.emplace_back(base, k, n, std::move(entries));
    }
    return code;
}

/// Gabidulin code Q_q(n, k, min_rank) with the default power-basis expansion.
inline RankCode gabidulin_enumerate(unsigned q, unsigned n, unsigned k, unsigned min_rank,
                                    std::optional<std::uint64_t> budget = std::nullopt) {
    require_supported_base_order(q);
    if (!(1 <= min_rank && min_rank <= k && k <= n))
        throw InvalidParameter("Gabidulin code requires 1 <= min_rank <= k <= n");
    return gabidulin_enumerate(ExtensionField(Field::of_order(q), n), k, min_rank, budget);
}

/// Codewords of rank in [1, max_rank], plus the zero codeword when `include_zero`.
inline RankCode sq_filter(const RankCode& code, unsigned max_rank, bool include_zero = false) {
    RankCode out{code.spec, code.field, {}, false};
    for (const auto& c : code.codewords) {
        const std::size_t r = rank(c);
        if ((r == 0 && include_zero) || (r >= 1 && r <= max_rank)) out.codewords.push_back(c);
    }
    return out;
}

/// rank -> number of codewords with that rank.
inline std::map<unsigned, BigCount> empirical_rank_distribution(const RankCode& code) {
    std::map<unsigned, std::uint64_t> tally;
    for (const auto& c : code.codewords) ++tally[static_cast<unsigned>(rank(c))];
    std::map<unsigned, BigCount> out;
    for (const auto& [r, n] : tally) out[r] = n;
    return out;
}

}  // namespace cdc
