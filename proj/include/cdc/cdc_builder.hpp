#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "bounds.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"
#include "mrd.hpp"

namespace cdc {

/// A subspace of F_q^N, stored by its RREF generator (unique per subspace).
class Subspace {
   public:
    /// Canonical form of the row space of `generator`; its rows must be linearly independent.
    static Subspace canonicalize(const Matrix& generator) {
        Matrix g = rref(generator);
        if (g.rows() != generator.rows())
            throw RankDeficient("generator has rank " + std::to_string(g.rows()) + " but " +
                                std::to_string(generator.rows()) + " rows");
        return Subspace(std::move(g));
    }

    const Matrix& generator() const { return g_; }
    const Field& field() const { return g_.field(); }
    std::size_t dim() const { return g_.rows(); }
    std::size_t ambient() const { return g_.cols(); }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.g_ == b.g_; }
    friend bool operator<(const Subspace& a, const Subspace& b) { return a.g_ < b.g_; }

   private:
    explicit Subspace(Matrix g) : g_(std::move(g)) {}

    Matrix g_;
};

inline Subspace canonicalize(const Matrix& generator) { return Subspace::canonicalize(generator); }

enum class LiftSide { left, right };

/// Row space of [I_k | A] (left) or [A | I_k] (right).
inline Subspace lift(const Matrix& a, LiftSide side = LiftSide::left) {
    const std::size_t k = a.rows();
    Matrix g(a.field(), k, a.cols() + k);
    const Matrix id = Matrix::identity(a.field(), k);
    if (side == LiftSide::left) {
        g.set_block(0, 0, id);
        g.set_block(0, k, a);
        return Subspace::canonicalize(g);
    }
    g.set_block(0, 0, a);
    g.set_block(0, a.cols(), id);
    return Subspace::canonicalize(g);
}

struct ParallelParams {
    unsigned q = 0;
    unsigned n = 0;  // tail width
    unsigned k = 0;  // dimension
    unsigned d = 0;  // subspace distance
    unsigned s = 0;  // depth

    unsigned ambient() const { return (s + 1) * k + n; }
    unsigned blocks() const { return s + 2; }

    friend bool operator==(const ParallelParams&, const ParallelParams&) = default;
};

/// An explicit constant-dimension code.
struct Cdc {
    Field field;
    unsigned ambient = 0;
    unsigned dim = 0;
    unsigned distance = 0;  // claimed
    std::vector<Subspace> members;
    std::vector<std::uint64_t> block_sizes;  // consecutive member groups; empty means one block
    std::optional<ParallelParams> construction;

    std::uint64_t size() const { return members.size(); }
    const Matrix& generator(std::uint64_t i) const { return members[i].generator(); }
    std::vector<std::uint64_t> blocks() const {
        return block_sizes.empty() ? std::vector<std::uint64_t>{members.size()} : block_sizes;
    }
};

/// The parallel construction as an indexed, lazily generated family of subspaces.
///
/// Column layout: s+1 square slots of width k followed by one slot of width n, N = (s+1)k + n.
/// Block j < s+1 puts I_k in square slot j, rank-restricted k x k codewords in the square slots
/// before it, and full MRD codewords (k x k, then k x n for the tail) after it. The last block
/// holds s rank-restricted k x k codewords, a rank-restricted k x n codeword, and I_k in the
/// last k columns. Rank-restricted means rank in [1, k - d/2].
///
/// Member order: blocks in order; within a block, mixed radix over the slots with the leftmost
/// slot most significant and each slot in codeword order.
class ParallelConstruction {
   public:
    explicit ParallelConstruction(ParallelParams p, std::optional<std::uint64_t> budget = std::nullopt)
        : p_(p), field_(Field::of_order(checked(p))) {
        const unsigned delta = p.d / 2;
        full_tail_ = std::make_shared<RankCode>(gabidulin_enumerate(p.q, p.n, p.k, delta, budget));
        sq_tail_ = std::make_shared<RankCode>(sq_filter(*full_tail_, p.k - delta));
        if (p.s > 0) {
            full_square_ = p.n == p.k ? full_tail_
                                      : std::make_shared<RankCode>(gabidulin_enumerate(p.q, p.k, p.k, delta, budget));
            sq_square_ = p.n == p.k ? sq_tail_ : std::make_shared<RankCode>(sq_filter(*full_square_, p.k - delta));
        }

        BigCount total = 0;
        for (unsigned j = 0; j < p.blocks(); ++j) {
            BigCount size = 1;
            for (Slot slot : layout(j))
                if (slot != Slot::identity) size *= code(slot).codewords.size();
            total += size;
            block_sizes_.push_back(to_u64(size));
        }
        size_ = to_u64(total);
    }

    const ParallelParams& params() const { return p_; }
    const Field& field() const { return field_; }
    unsigned dim() const { return p_.k; }
    unsigned ambient() const { return p_.ambient(); }
    std::uint64_t size() const { return size_; }
    const std::vector<std::uint64_t>& blocks() const { return block_sizes_; }

    std::size_t block_of(std::uint64_t i) const {
        for (std::size_t j = 0; j < block_sizes_.size(); ++j) {
            if (i < block_sizes_[j]) return j;
            i -= block_sizes_[j];
        }
        throw InvalidParameter("member index out of range");
    }

    /// Generator matrix of member i (not canonicalized).
    Matrix generator(std::uint64_t i) const {
        const std::size_t block = block_of(i);
        for (std::size_t j = 0; j < block; ++j) i -= block_sizes_[j];
        const auto slots = layout(static_cast<unsigned>(block));

        std::vector<std::size_t> pick(slots.size(), 0);
        for (std::size_t t = slots.size(); t-- > 0;) {
            if (slots[t] == Slot::identity) continue;
            const std::size_t m = code(slots[t]).codewords.size();
            pick[t] = static_cast<std::size_t>(i % m);
            i /= m;
        }

        Matrix g(field_, p_.k, p_.ambient());
        std::size_t col = 0;
        for (std::size_t t = 0; t < slots.size(); ++t) {
            if (slots[t] == Slot::identity) {
                for (unsigned r = 0; r < p_.k; ++r) g(r, col + r) = 1;
                col += p_.k;
            } else {
                const Matrix& c = code(slots[t]).codewords[pick[t]];
                g.set_block(0, col, c);
                col += c.cols();
            }
        }
        return g;
    }

    Subspace member(std::uint64_t i) const { return Subspace::canonicalize(generator(i)); }

    const RankCode& tail_code() const { return *full_tail_; }
    const RankCode& restricted_tail_code() const { return *sq_tail_; }

   private:
    enum class Slot { identity, full_square, sq_square, full_tail, sq_tail };

    static unsigned checked(const ParallelParams& p) {
        require_supported_base_order(p.q);
        detail::require_parallel_hypothesis(p.q, p.n, p.k, p.d);
        return p.q;
    }

    std::vector<Slot> layout(unsigned block) const {
        std::vector<Slot> slots;
        if (block <= p_.s) {
            for (unsigned t = 0; t < block; ++t) slots.push_back(Slot::sq_square);
            slots.push_back(Slot::identity);
            for (unsigned t = block + 1; t <= p_.s; ++t) slots.push_back(Slot::full_square);
            slots.push_back(Slot::full_tail);
        } else {
            for (unsigned t = 0; t < p_.s; ++t) slots.push_back(Slot::sq_square);
            slots.push_back(Slot::sq_tail);
            slots.push_back(Slot::identity);
        }
        return slots;
    }

    const RankCode& code(Slot s) const {
        switch (s) {
            case Slot::full_square: return *full_square_;
            case Slot::sq_square: return *sq_square_;
            case Slot::full_tail: return *full_tail_;
            case Slot::sq_tail: return *sq_tail_;
            case Slot::identity: break;
        }
        throw InternalError("identity slot has no code");
    }

    ParallelParams p_;
    Field field_;
    std::shared_ptr<const RankCode> full_square_, sq_square_, full_tail_, sq_tail_;
    std::vector<std::uint64_t> block_sizes_;
    std::uint64_t size_ = 0;
};

/// Materializes the parallel construction as canonical subspaces.
inline Cdc assemble_parallel(unsigned q, unsigned n, unsigned k, unsigned d, unsigned s,
                             std::optional<std::uint64_t> budget = std::nullopt) {
    const ParallelParams p{q, n, k, d, s};
    const ParallelConstruction pc(p, budget);
    const std::uint64_t limit = budget.value_or(enumeration_budget());
    if (pc.size() > limit)
        throw BudgetExceeded("construction has " + std::to_string(pc.size()) +
                             " members, above the enumeration budget " + std::to_string(limit));
    Cdc code{pc.field(), p.ambient(), k, d, {}, pc.blocks(), p};
    code.members.reserve(pc.size());
    for (std::uint64_t i = 0; i < pc.size(); ++i) code.members.push_back(pc.member(i));
    return code;
}

}  // namespace cdc
