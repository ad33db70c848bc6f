#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"

namespace cdc {

/// Dense row-major matrix over a finite field.
class Matrix {
   public:
    Matrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_)
            throw InvalidParameter("matrix entry count " + std::to_string(a_.size()) + " != " +
                                   std::to_string(rows_) + "x" + std::to_string(cols_));
        for (Elem v : a_)
            if (!f_.contains(v)) throw InvalidElement("matrix entry out of range for " + f_.name());
    }

    static Matrix identity(Field f, std::size_t n) {
        Matrix m(std::move(f), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(Field f, std::initializer_list<std::initializer_list<unsigned>> rows) {
        const std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
        std::vector<Elem> e;
        e.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw InvalidParameter("ragged matrix literal");
            for (unsigned v : row) {
                if (!f.contains(v)) throw InvalidElement("matrix entry out of range for " + f.name());
                e.push_back(static_cast<Elem>(v));
            }
        }
        return Matrix(std::move(f), r, c, std::move(e));
    }

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    std::span<const Elem> row(std::size_t i) const { return std::span<const Elem>(a_).subspan(i * cols_, cols_); }
    std::span<Elem> row(std::size_t i) { return std::span<Elem>(a_).subspan(i * cols_, cols_); }
    std::span<const Elem> entries() const { return a_; }

    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
        if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw InvalidParameter("block does not fit");
        for (std::size_t i = 0; i < block.rows_; ++i)
            std::copy(block.row(i).begin(), block.row(i).end(), a_.begin() + (r0 + i) * cols_ + c0);
    }

    Matrix transpose() const {
        Matrix t(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](Elem v) { return v == 0; });
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) { return combine(x, y, false); }
    friend Matrix operator-(const Matrix& x, const Matrix& y) { return combine(x, y, true); }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (!(x.f_ == y.f_)) throw IncompatibleField("matrix product over different fields");
        if (x.cols_ != y.rows_) throw InvalidParameter("matrix product dimension mismatch");
        Matrix r(x.f_, x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t l = 0; l < x.cols_; ++l) {
                const Elem s = x(i, l);
                if (s == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) = x.f_.add(r(i, j), x.f_.mul(s, y(l, j)));
            }
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.f_ == y.f_ && x.a_ == y.a_;
    }

    /// Lexicographic order on (rows, cols, entries); the field is ignored.
    friend bool operator<(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_) return x.rows_ < y.rows_;
        if (x.cols_ != y.cols_) return x.cols_ < y.cols_;
        return x.a_ < y.a_;
    }

   private:
    static Matrix combine(const Matrix& x, const Matrix& y, bool subtract) {
        if (!(x.f_ == y.f_)) throw IncompatibleField("matrix sum over different fields");
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw InvalidParameter("matrix sum dimension mismatch");
        Matrix r(x.f_, x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            r.a_[i] = subtract ? x.f_.sub(x.a_[i], y.a_[i]) : x.f_.add(x.a_[i], y.a_[i]);
        return r;
    }

    Field f_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> a_;
};

namespace detail {

/// In-place Gaussian elimination of a row-major block; returns the rank.
/// With `reduced`, the leading rows end up in reduced row echelon form.
inline std::size_t eliminate(const Field& f, std::span<Elem> a, std::size_t rows, std::size_t cols, bool reduced) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + r * cols);
        Elem* pr = a.data() + r * cols;
        const Elem scale = f.inv(pr[c]);
        if (reduced)
            for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], scale);
        for (std::size_t i = reduced ? 0 : r + 1; i < rows; ++i) {
            if (i == r) continue;
            Elem* pi = a.data() + i * cols;
            if (pi[c] == 0) continue;
            const Elem factor = f.neg(reduced ? pi[c] : f.mul(pi[c], scale));
            for (std::size_t j = c; j < cols; ++j) pi[j] = f.add(pi[j], f.mul(factor, pr[j]));
        }
        ++r;
    }
    return r;
}

/// Rank of GF(2) rows packed into 64-bit words.
inline std::size_t gf2_rank(std::span<const std::uint64_t> rows) {
    std::uint64_t basis[64] = {};
    std::size_t rank = 0;
    for (std::uint64_t v : rows) {
        while (v != 0) {
            const int h = 63 - std::countl_zero(v);
            if (basis[h] == 0) {
                basis[h] = v;
                ++rank;
                break;
            }
            v ^= basis[h];
        }
    }
    return rank;
}

inline std::uint64_t pack_gf2_row(std::span<const Elem> row) {
    std::uint64_t w = 0;
    for (std::size_t j = 0; j < row.size(); ++j) w |= std::uint64_t(row[j] & 1u) << j;
    return w;
}

inline bool packable_gf2(const Matrix& m) { return m.field().order() == 2 && m.cols() <= 64; }

}  // namespace detail

inline std::size_t rank(const Matrix& m) {
    if (detail::packable_gf2(m)) {
        std::vector<std::uint64_t> packed(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) packed[i] = detail::pack_gf2_row(m.row(i));
        return detail::gf2_rank(packed);
    }
    std::vector<Elem> work(m.entries().begin(), m.entries().end());
    return detail::eliminate(m.field(), work, m.rows(), m.cols(), false);
}

/// Reduced row echelon form with zero rows dropped: the canonical generator of the row space.
inline Matrix rref(const Matrix& m) {
    std::vector<Elem> work(m.entries().begin(), m.entries().end());
    const std::size_t r = detail::eliminate(m.field(), work, m.rows(), m.cols(), true);
    work.resize(r * m.cols());
    return Matrix(m.field(), r, m.cols(), std::move(work));
}

inline Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (!(top.field() == bottom.field())) throw IncompatibleField("vstack over different fields");
    if (top.cols() != bottom.cols()) throw InvalidParameter("vstack column mismatch");
    Matrix r(top.field(), top.rows() + bottom.rows(), top.cols());
    r.set_block(0, 0, top);
    r.set_block(top.rows(), 0, bottom);
    return r;
}

inline Matrix hconcat(std::span<const Matrix> parts) {
    if (parts.empty()) throw InvalidParameter("hconcat of nothing");
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (!(p.field() == parts[0].field())) throw IncompatibleField("hconcat over different fields");
        if (p.rows() != parts[0].rows()) throw InvalidParameter("hconcat row mismatch");
        cols += p.cols();
    }
    Matrix r(parts[0].field(), parts[0].rows(), cols);
    std::size_t c0 = 0;
    for (const auto& p : parts) {
        r.set_block(0, c0, p);
        c0 += p.cols();
    }
    return r;
}

/// rank([a; b]) without materialising the stacked matrix.
inline std::size_t stacked_rank(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) throw IncompatibleField("stacked rank over different fields");
    if (a.cols() != b.cols()) throw InvalidParameter("stacked rank column mismatch");
    const std::size_t rows = a.rows() + b.rows(), cols = a.cols();
    if (detail::packable_gf2(a)) {
        std::uint64_t packed[128];
        if (rows <= 128) {
            for (std::size_t i = 0; i < a.rows(); ++i) packed[i] = detail::pack_gf2_row(a.row(i));
            for (std::size_t i = 0; i < b.rows(); ++i) packed[a.rows() + i] = detail::pack_gf2_row(b.row(i));
            return detail::gf2_rank(std::span<const std::uint64_t>(packed, rows));
        }
    }
    thread_local std::vector<Elem> work;
    work.resize(rows * cols);
    std::copy(a.entries().begin(), a.entries().end(), work.begin());
    std::copy(b.entries().begin(), b.entries().end(), work.begin() + a.entries().size());
    return detail::eliminate(a.field(), work, rows, cols, false);
}

}  // namespace cdc
