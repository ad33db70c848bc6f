#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"

namespace cdc {

enum class Formula { lifted_mrd, thm2, thm3, johnson1, johnson2 };

inline std::string_view to_string(Formula f) {
    switch (f) {
        case Formula::lifted_mrd: return "lifted-mrd";
        case Formula::thm2: return "thm2";
        case Formula::thm3: return "thm3";
        case Formula::johnson1: return "johnson1";
        case Formula::johnson2: return "johnson2";
    }
    return "?";
}

inline bool is_lower_bound(Formula f) { return f == Formula::lifted_mrd || f == Formula::thm2 || f == Formula::thm3; }

/// Parameters of a constant-dimension code A_q(ambient, distance, dim).
/// `tail` and `depth` are set for parallel constructions, where ambient = (depth + 1) * dim + tail.
struct CdcParams {
    unsigned q = 0;
    unsigned ambient = 0;
    unsigned distance = 0;
    unsigned dim = 0;
    std::optional<unsigned> tail;
    std::optional<unsigned> depth;

    friend bool operator==(const CdcParams&, const CdcParams&) = default;
};

struct Reference {
    std::string label;
    BigCount value;
};

struct BoundResult {
    CdcParams params;
    BigCount value;
    Formula formula = Formula::thm2;
    std::optional<Reference> reference;

    /// For a lower bound: strictly beats the attached reference.
    std::optional<bool> exceeds_reference() const {
        if (!reference) return std::nullopt;
        return value > reference->value;
    }
};

namespace detail {

inline void require_parallel_hypothesis(unsigned q, unsigned n, unsigned k, unsigned d) {
    if (q < 2) throw InvalidParameter("q must be at least 2");
    if (d < 2 || d % 2 != 0) throw InvalidParameter("subspace distance d must be even and >= 2, got " + std::to_string(d));
    if (!(n >= k && k >= d))
        throw InvalidParameter("construction requires n >= k >= d (got n=" + std::to_string(n) + ", k=" +
                               std::to_string(k) + ", d=" + std::to_string(d) + ")");
}

}  // namespace detail

/// Size q^(n(k - d_rank + 1)) of the lifted MRD code built from k x n matrices.
inline BigCount lifted_mrd_size(unsigned q, unsigned n, unsigned k, unsigned d_rank) {
    if (q < 2) throw InvalidParameter("q must be at least 2");
    if (!(n >= k && k >= d_rank && d_rank >= 1))
        throw InvalidParameter("lifted MRD size requires n >= k >= d_rank >= 1");
    return ipow(q, n * (k - d_rank + 1));
}

/// Sum of A_r over r in [d/2, k - d/2] for the MRD code of k x m matrices with rank distance d/2:
/// the size of the rank-restricted subcode used off the identity block.
inline BigCount restricted_rank_count(unsigned q, unsigned m, unsigned k, unsigned d) {
    const unsigned delta = d / 2;
    if (k < 2 * delta) return 0;
    return truncated_rank_sum(q, m, k, delta, delta, k - delta);
}

/// Lower bound on A_q(n + k, d, k) from two parallel lifted MRD codes:
/// q^(n(k - d/2 + 1)) + sum_{r=d/2}^{k-d/2} A_r(Q_q(n, k, d/2)).
inline BoundResult two_block_lower_bound(unsigned q, unsigned n, unsigned k, unsigned d) {
    detail::require_parallel_hypothesis(q, n, k, d);
    BoundResult r;
    r.params = CdcParams{q, n + k, d, k, n, 0u};
    r.formula = Formula::thm2;
    r.value = lifted_mrd_size(q, n, k, d / 2) + restricted_rank_count(q, n, k, d);
    return r;
}

/// Lower bound on A_q((s+1)k + n, d, k) from s+2 parallel blocks. With S_k, S_n the
/// restricted rank counts for k x k and k x n MRD codes:
///
///   sum_{j=0}^{s} q^(((s-j)k + n)(k - d/2 + 1)) S_k^j  +  S_n S_k^s
inline BoundResult parallel_lower_bound(unsigned q, unsigned n, unsigned k, unsigned d, unsigned s) {
    detail::require_parallel_hypothesis(q, n, k, d);
    const unsigned delta = d / 2;
    const BigCount sk = restricted_rank_count(q, k, k, d);
    const BigCount sn = restricted_rank_count(q, n, k, d);
    BigCount value = 0;
    BigCount sk_pow = 1;
    for (unsigned j = 0; j <= s; ++j) {
        value += ipow(q, ((s - j) * k + n) * (k - delta + 1)) * sk_pow;
        if (j < s) sk_pow *= sk;
    }
    value += sn * sk_pow;

    BoundResult r;
    r.params = CdcParams{q, (s + 1) * k + n, d, k, n, s};
    r.formula = Formula::thm3;
    r.value = value;
    return r;
}

/// Johnson-type upper bound A_q(n, 2 delta, k) <= [n, k-delta+1]_q / [k, k-delta+1]_q, floored.
inline BoundResult johnson_upper(unsigned q, unsigned n, unsigned k, unsigned delta) {
    if (q < 2) throw InvalidParameter("q must be at least 2");
    if (!(n >= k && k >= delta && delta >= 1)) throw InvalidParameter("Johnson bound requires n >= k >= delta >= 1");
    const int t = static_cast<int>(k - delta + 1);
    BoundResult r;
    r.params = CdcParams{q, n, 2 * delta, k, std::nullopt, std::nullopt};
    r.formula = Formula::johnson1;
    r.value = gaussian_binomial(static_cast<int>(n), t, q) / gaussian_binomial(static_cast<int>(k), t, q);
    return r;
}

/// Iterated Johnson bound
///   A_q(n, d, k) <= floor((q^n-1)/(q^k-1) floor((q^(n-1)-1)/(q^(k-1)-1) ... floor((q^(n'+1)-1)/(q^(d/2+1)-1) A)))
/// with n' = n - k + d/2 and A = A_q(n', d, d/2). Without `base`, A is the packing bound
/// floor((q^n' - 1)/(q^(d/2) - 1)).
inline BoundResult iterated_johnson_upper(unsigned q, unsigned n, unsigned d, unsigned k,
                                          std::optional<BigCount> base = std::nullopt) {
    if (q < 2) throw InvalidParameter("q must be at least 2");
    if (d < 2 || d % 2 != 0) throw InvalidParameter("subspace distance d must be even and >= 2");
    const unsigned delta = d / 2;
    if (!(n >= k && k >= delta)) throw InvalidParameter("iterated Johnson bound requires n >= k >= d/2");
    const unsigned n0 = n - k + delta;
    BigCount value;
    if (base) {
        if (*base < 0) throw InvalidParameter("base value must be nonnegative");
        value = *base;
    } else {
        value = (ipow(q, n0) - 1) / (ipow(q, delta) - 1);
    }
    for (unsigned j = 1; j <= k - delta; ++j) value = (ipow(q, n0 + j) - 1) * value / (ipow(q, delta + j) - 1);

    BoundResult r;
    r.params = CdcParams{q, n, d, k, std::nullopt, std::nullopt};
    r.formula = Formula::johnson2;
    r.value = value;
    return r;
}

/// One reference line: q, N, d, k, the published lower bound and the previously best known one.
struct ReferenceRow {
    unsigned q = 0;
    unsigned ambient = 0;
    unsigned distance = 0;
    unsigned dim = 0;
    BigCount new_value;
    BigCount old_value;
};

/// Parses "q,N,d,k,new,old" lines; blank lines and lines starting with '#' are skipped.
inline std::vector<ReferenceRow> read_reference_table(std::istream& in) {
    std::vector<ReferenceRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) {
            const auto b = f.find_first_not_of(" \t"), e = f.find_last_not_of(" \t");
            fields.push_back(b == std::string::npos ? "" : f.substr(b, e - b + 1));
        }
        if (fields.size() != 6)
            throw InvalidParameter("reference table line " + std::to_string(lineno) + ": expected 6 fields");
        try {
            auto small = [](const std::string& s) { return static_cast<unsigned>(to_u64(parse_decimal(s))); };
            rows.push_back({small(fields[0]), small(fields[1]), small(fields[2]), small(fields[3]),
                            parse_decimal(fields[4]), parse_decimal(fields[5])});
        } catch (const Error& e) {
            throw InvalidParameter("reference table line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

inline std::vector<ReferenceRow> load_reference_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open reference table " + path);
    return read_reference_table(in);
}

/// A row to evaluate with the parallel bound, plus optional expected ("New") and reference ("Old") values.
struct TableRow {
    unsigned q = 0;
    unsigned n = 0;
    unsigned k = 0;
    unsigned d = 0;
    unsigned s = 0;
    std::optional<BigCount> expected;
    std::optional<BigCount> reference;
};

/// Rows with depth s for each reference line: tail n = N - (s + 1) k.
inline std::vector<TableRow> table_rows_from_reference(std::span<const ReferenceRow> refs, unsigned s = 1) {
    std::vector<TableRow> rows;
    for (const auto& r : refs) {
        if (r.ambient < (s + 1) * r.dim)
            throw InvalidParameter("reference row A_" + std::to_string(r.q) + "(" + std::to_string(r.ambient) +
                                   ",...) too small for depth " + std::to_string(s));
        rows.push_back({r.q, r.ambient - (s + 1) * r.dim, r.dim, r.distance, s, r.new_value, r.old_value});
    }
    return rows;
}

struct TableEntry {
    TableRow row;
    std::optional<BoundResult> result;
    std::string error;

    std::optional<bool> matches_expected() const {
        if (!result || !row.expected) return std::nullopt;
        return result->value == *row.expected;
    }
    std::optional<bool> improves() const { return result ? result->exceeds_reference() : std::nullopt; }
};

/// Evaluates the parallel bound for every row. Errors are recorded per row; results keep input order.
inline std::vector<TableEntry> build_table(std::span<const TableRow> rows) {
    std::vector<TableEntry> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        TableEntry e{row, std::nullopt, {}};
        try {
            auto r = parallel_lower_bound(row.q, row.n, row.k, row.d, row.s);
            if (row.reference) r.reference = Reference{"old", *row.reference};
            e.result = std::move(r);
        } catch (const Error& ex) {
            e.error = ex.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace cdc
