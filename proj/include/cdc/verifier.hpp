#pragma once

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "bounds.hpp"
#include "cdc_builder.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace cdc {

/// Anything that can hand out generator matrices of k-dimensional subspaces by index.
template <class C>
concept IndexedCode = requires(const C& c, std::uint64_t i) {
    { c.size() } -> std::convertible_to<std::uint64_t>;
    { c.generator(i) } -> std::convertible_to<Matrix>;
    { c.blocks() } -> std::convertible_to<std::vector<std::uint64_t>>;
};

/// d_S(U, W) = dim(U + W) - dim(U n W) = 2 rank([U; W]) - dim U - dim W.
inline unsigned subspace_distance(const Subspace& u, const Subspace& w) {
    if (!(u.field() == w.field()) || u.ambient() != w.ambient())
        throw IncompatibleSpaces("subspaces live in different ambient spaces");
    const std::size_t sum = stacked_rank(u.generator(), w.generator());
    return static_cast<unsigned>(2 * sum - u.dim() - w.dim());
}

/// Distance between two k-dimensional row spaces given by (not necessarily canonical) generators.
inline unsigned generator_distance(const Matrix& a, const Matrix& b) {
    return static_cast<unsigned>(2 * stacked_rank(a, b) - a.rows() - b.rows());
}

struct DistanceResult {
    std::optional<unsigned> min_distance;  // empty when the code has fewer than two members
    std::pair<std::uint64_t, std::uint64_t> witness{0, 0};
    std::uint64_t pairs_checked = 0;
    std::uint64_t cross_block_pairs = 0;
    bool exhaustive = false;

    bool vacuous() const { return !min_distance.has_value(); }
};

inline constexpr std::uint64_t kDefaultPairBudget = std::uint64_t(1) << 28;

namespace detail {

inline std::uint64_t pair_count(std::uint64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

// Keeps the smallest distance and, among ties, the lexicographically smallest pair.
inline void absorb(DistanceResult& acc, unsigned dist, std::uint64_t i, std::uint64_t j) {
    if (i > j) std::swap(i, j);
    if (!acc.min_distance || dist < *acc.min_distance ||
        (dist == *acc.min_distance && std::pair{i, j} < acc.witness)) {
        acc.min_distance = dist;
        acc.witness = {i, j};
    }
}

}  // namespace detail

/// Exact minimum pairwise subspace distance over all unordered pairs.
template <IndexedCode C>
DistanceResult min_distance_exhaustive(const C& code, std::uint64_t pair_budget = kDefaultPairBudget) {
    const std::uint64_t m = code.size();
    const std::uint64_t pairs = detail::pair_count(m);
    if (pairs > pair_budget)
        throw BudgetExceeded(std::to_string(pairs) + " pairs exceed the exhaustive pair budget " +
                             std::to_string(pair_budget) + "; use sampled mode");
    DistanceResult total;
    total.exhaustive = true;
    total.pairs_checked = pairs;
    if (m < 2) return total;

    std::vector<Matrix> gens;
    gens.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) gens.push_back(code.generator(i));

    const bool packed = gens.front().field().order() == 2 && gens.front().cols() <= 64;
    const std::size_t k = gens.front().rows();
    std::vector<std::uint64_t> bits;
    if (packed) {
        bits.resize(m * k);
        for (std::uint64_t i = 0; i < m; ++i)
            for (std::size_t r = 0; r < k; ++r) bits[i * k + r] = detail::pack_gf2_row(gens[i].row(r));
    }

    // Rows are dealt out round-robin so workers get similar pair counts.
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 64));
    std::vector<DistanceResult> partial(workers);
    auto run = [&](unsigned w) {
        DistanceResult& acc = partial[w];
        std::vector<std::uint64_t> stack(2 * k);
        for (std::uint64_t i = w; i < m; i += workers) {
            for (std::uint64_t j = i + 1; j < m; ++j) {
                unsigned dist;
                if (packed) {
                    std::copy_n(bits.begin() + i * k, k, stack.begin());
                    std::copy_n(bits.begin() + j * k, k, stack.begin() + k);
                    dist = static_cast<unsigned>(2 * detail::gf2_rank(stack) - 2 * k);
                } else {
                    dist = generator_distance(gens[i], gens[j]);
                }
                if (!acc.min_distance || dist <= *acc.min_distance) detail::absorb(acc, dist, i, j);
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& p : partial)
        if (p.min_distance) detail::absorb(total, *p.min_distance, p.witness.first, p.witness.second);
    return total;
}

/// Deterministic pair sampler: the 64-bit mixed congruential generator
/// state <- 6364136223846793005 * state + 1442695040888963407 (mod 2^64),
/// with draw(bound) = floor(state * bound / 2^64) taken after each step.
class PairSampler {
   public:
    explicit PairSampler(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform-ish value in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

   private:
    std::uint64_t state_;
};

/// Minimum distance over `samples` seeded random unordered pairs.
///
/// When the code has two or more nonempty blocks, the first ceil(samples / 10) pairs are forced
/// across blocks (two distinct blocks drawn uniformly, then one member of each); the rest are
/// uniform over all pairs. If `samples` covers every pair the exhaustive check runs instead.
template <IndexedCode C>
DistanceResult min_distance_sampled(const C& code, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw InvalidParameter("sampled verification needs at least one sample");
    const std::uint64_t m = code.size();
    if (samples >= detail::pair_count(m)) return min_distance_exhaustive(code, std::numeric_limits<std::uint64_t>::max());

    const std::vector<std::uint64_t> sizes = code.blocks();
    std::vector<std::uint64_t> offsets(sizes.size(), 0);
    for (std::size_t b = 1; b < sizes.size(); ++b) offsets[b] = offsets[b - 1] + sizes[b - 1];
    std::vector<std::size_t> nonempty;
    for (std::size_t b = 0; b < sizes.size(); ++b)
        if (sizes[b] > 0) nonempty.push_back(b);

    PairSampler rng(seed);
    DistanceResult acc;
    const std::uint64_t forced = nonempty.size() >= 2 ? (samples + 9) / 10 : 0;
    for (std::uint64_t t = 0; t < samples; ++t) {
        std::uint64_t i, j;
        if (t < forced) {
            const std::size_t a = rng.below(nonempty.size());
            std::size_t b = rng.below(nonempty.size() - 1);
            if (b >= a) ++b;
            i = offsets[nonempty[a]] + rng.below(sizes[nonempty[a]]);
            j = offsets[nonempty[b]] + rng.below(sizes[nonempty[b]]);
            ++acc.cross_block_pairs;
        } else {
            i = rng.below(m);
            j = rng.below(m - 1);
            if (j >= i) ++j;
        }
        detail::absorb(acc, generator_distance(code.generator(i), code.generator(j)), i, j);
    }
    acc.pairs_checked = samples;
    return acc;
}

/// Minimum of dim(U + W) over U in block `a`, W in block `b`.
template <IndexedCode C>
std::optional<std::size_t> min_cross_block_sum_dim(const C& code, std::size_t a, std::size_t b) {
    const auto sizes = code.blocks();
    std::uint64_t off_a = 0, off_b = 0;
    for (std::size_t t = 0; t < a; ++t) off_a += sizes[t];
    for (std::size_t t = 0; t < b; ++t) off_b += sizes[t];
    std::vector<Matrix> right;
    right.reserve(sizes[b]);
    for (std::uint64_t j = 0; j < sizes[b]; ++j) right.push_back(code.generator(off_b + j));
    std::optional<std::size_t> best;
    for (std::uint64_t i = 0; i < sizes[a]; ++i) {
        const Matrix u = code.generator(off_a + i);
        for (const auto& w : right) {
            const std::size_t r = stacked_rank(u, w);
            if (!best || r < *best) best = r;
        }
    }
    return best;
}

enum class VerifyMode { exhaustive, sampled };

struct VerifyOptions {
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t pair_budget = kDefaultPairBudget;
};

struct VerificationReport {
    std::string label;
    std::uint64_t observed_count = 0;  // distinct members
    std::uint64_t listed_count = 0;
    BigCount predicted_count;
    unsigned claimed_distance = 0;
    DistanceResult distance;
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> failures;

    std::string to_text() const {
        std::ostringstream os;
        os << "code: " << label << "\n"
           << "members: " << observed_count << " distinct of " << listed_count << " listed, predicted "
           << to_decimal(predicted_count) << "\n"
           << "mode: " << (mode == VerifyMode::exhaustive ? "exhaustive" : "sampled");
        if (mode == VerifyMode::sampled) os << " (" << distance.pairs_checked << " pairs, seed " << seed << ")";
        os << "\n";
        if (distance.min_distance)
            os << "min distance: " << *distance.min_distance << " (pair " << distance.witness.first << ", "
               << distance.witness.second << "), claimed " << claimed_distance << "\n";
        else
            os << "min distance: no pairs, claimed " << claimed_distance << "\n";
        for (const auto& f : failures) os << "failure: " << f << "\n";
        os << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
        return os.str();
    }
};

/// Checks a materialized code against a predicted size and its claimed minimum distance.
inline VerificationReport reconcile(const Cdc& code, const BigCount& predicted, const VerifyOptions& opt = {},
                                    std::string label = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.label = label.empty() ? "A_" + std::to_string(code.field.order()) + "(" + std::to_string(code.ambient) + "," +
                                    std::to_string(code.distance) + "," + std::to_string(code.dim) + ")"
                              : std::move(label);
    rep.listed_count = code.members.size();
    std::vector<const Subspace*> sorted;
    sorted.reserve(code.members.size());
    for (const auto& s : code.members) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
    rep.observed_count =
        std::unique(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a == *b; }) - sorted.begin();
    rep.predicted_count = predicted;
    rep.claimed_distance = code.distance;
    rep.mode = opt.mode;
    rep.samples = opt.samples;
    rep.seed = opt.seed;
    rep.distance = opt.mode == VerifyMode::exhaustive ? min_distance_exhaustive(code, opt.pair_budget)
                                                      : min_distance_sampled(code, opt.samples, opt.seed);

    if (BigCount(rep.observed_count) != predicted)
        rep.failures.push_back("member count " + std::to_string(rep.observed_count) + " != predicted " +
                               to_decimal(predicted));
    if (rep.listed_count != rep.observed_count)
        rep.failures.push_back(std::to_string(rep.listed_count - rep.observed_count) + " duplicated member(s)");
    if (rep.distance.min_distance && *rep.distance.min_distance < code.distance)
        rep.failures.push_back("min distance " + std::to_string(*rep.distance.min_distance) + " < claimed " +
                               std::to_string(code.distance));
    rep.pass = rep.failures.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline VerificationReport reconcile(const Cdc& code, const BoundResult& predicted, const VerifyOptions& opt = {}) {
    return reconcile(code, predicted.value, opt);
}

}  // namespace cdc
