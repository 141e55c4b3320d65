#pragma once

#include "cliffglue/rational.hpp"

#include <cstddef>
#include <vector>

namespace cliffglue {

// Dense exact-rational matrix. Only what the bundle machinery needs:
// products, Kronecker/block combinations, transpose, rank, inverse and
// an exact PSD test for symmetric matrices.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RatMatrix from_rows(std::vector<std::vector<Rat>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows[0].size() : 0;
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw Error("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = std::move(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix operator+(const RatMatrix& o) const {
        require_same_shape(o);
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        require_same_shape(o);
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
        RatMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    RatMatrix scaled(const Rat& s) const {
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
        return r;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        if (v.size() != cols_) throw Error("matrix apply shape mismatch");
        std::vector<Rat> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    static RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
        RatMatrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
        return r;
    }

    static RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) {
        RatMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (a(i, j) == 0) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        r(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
            }
        return r;
    }

    RatMatrix submatrix(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const {
        RatMatrix r(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                r(i, j) = (*this)(row_idx[i], col_idx[j]);
        return r;
    }

    std::size_t rank() const {
        RatMatrix m = *this;
        std::size_t r = 0;
        for (std::size_t col = 0; col < m.cols_ && r < m.rows_; ++col) {
            std::size_t pivot = r;
            while (pivot < m.rows_ && m(pivot, col) == 0) ++pivot;
            if (pivot == m.rows_) continue;
            for (std::size_t j = 0; j < m.cols_; ++j) std::swap(m(r, j), m(pivot, j));
            for (std::size_t i = r + 1; i < m.rows_; ++i) {
                if (m(i, col) == 0) continue;
                Rat f = m(i, col) / m(r, col);
                for (std::size_t j = col; j < m.cols_; ++j) m(i, j) -= f * m(r, j);
            }
            ++r;
        }
        return r;
    }

    Rat determinant() const {
        if (rows_ != cols_) throw Error("determinant of non-square matrix");
        RatMatrix m = *this;
        Rat det = 1;
        for (std::size_t col = 0; col < m.cols_; ++col) {
            std::size_t pivot = col;
            while (pivot < m.rows_ && m(pivot, col) == 0) ++pivot;
            if (pivot == m.rows_) return Rat(0);
            if (pivot != col) {
                for (std::size_t j = 0; j < m.cols_; ++j) std::swap(m(col, j), m(pivot, j));
                det = -det;
            }
            det *= m(col, col);
            for (std::size_t i = col + 1; i < m.rows_; ++i) {
                if (m(i, col) == 0) continue;
                Rat f = m(i, col) / m(col, col);
                for (std::size_t j = col; j < m.cols_; ++j) m(i, j) -= f * m(col, j);
            }
        }
        return det;
    }

    bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    RatMatrix inverse() const {
        if (rows_ != cols_) throw Error("inverse of non-square matrix");
        RatMatrix m = *this;
        RatMatrix inv = identity(rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = col;
            while (pivot < rows_ && m(pivot, col) == 0) ++pivot;
            if (pivot == rows_) throw Error("matrix not invertible");
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap(m(col, j), m(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
            Rat p = m(col, col);
            for (std::size_t j = 0; j < cols_; ++j) {
                m(col, j) /= p;
                inv(col, j) /= p;
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == col || m(i, col) == 0) continue;
                Rat f = m(i, col);
                for (std::size_t j = 0; j < cols_; ++j) {
                    m(i, j) -= f * m(col, j);
                    inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

private:
    void require_same_shape(const RatMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

struct PsdResult {
    bool psd = false;
    std::size_t rank = 0;
};

// Exact semidefiniteness test by symmetric elimination. For a PSD matrix a
// zero diagonal entry forces its whole row to vanish, which is what the
// zero-pivot branch checks.
inline PsdResult psd_rank(const RatMatrix& m) {
    if (!m.is_symmetric()) return {false, 0};
    RatMatrix a = m;
    std::size_t n = a.rows();
    std::size_t r = 0;
    std::vector<bool> done(n, false);
    for (;;) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            if (a(i, i) < 0) return {false, 0};
            if (a(i, i) > 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) {
            // all remaining diagonal entries are zero
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[j] && a(i, j) != 0) return {false, 0};
            }
            return {true, r};
        }
        ++r;
        done[pivot] = true;
        Rat p = a(pivot, pivot);
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, pivot) == 0) continue;
            Rat f = a(i, pivot) / p;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a(i, j) -= f * a(pivot, j);
        }
        for (std::size_t j = 0; j < n; ++j) {
            a(pivot, j) = 0;
            a(j, pivot) = 0;
        }
    }
}

}  // namespace cliffglue
