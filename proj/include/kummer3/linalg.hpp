#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fp.hpp"
#include "scalar.hpp"

namespace kummer3 {

// Dense matrix over an exact field. Elimination always takes the first
// nonzero entry in the current column, scanning rows top-down (no magnitude
// pivoting -- arithmetic is exact, and determinism matters more).
template <Scalar K>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c, const K& fill)
        : rows_(r), cols_(c), a_(r * c, fill), ex_(fill.zero()) {}

    static Matrix identity(std::size_t n, const K& ex) {
        Matrix m(n, n, ex.zero());
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ex.one();
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<K>>& rows, const K& ex) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(r, c, ex.zero());
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw Error("Matrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix transpose() const {
        if (rows_ == 0) return Matrix();
        Matrix t(cols_, rows_, ex_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error("Matrix: size mismatch in product");
        K z = ex_;
        Matrix r(rows_, o.cols_, z);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& x = at(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (v.size() != cols_) throw Error("Matrix: size mismatch in apply");
        std::vector<K> r(rows_, ex_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    // in-place reduced row echelon form; returns pivot columns (ascending)
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && at(sel, col).is_zero()) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
            K inv = at(row, col).inv();
            for (std::size_t j = col; j < cols_; ++j) at(row, j) = at(row, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                K f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    at(i, j) = at(i, j) - f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix c = *this;
        return c.rref().size();
    }

    // canonical kernel basis: rows of the returned matrix, themselves in RREF
    Matrix nullspace() const {
        Matrix r = *this;
        auto pivots = r.rref();
        K z = ex_;
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free.push_back(c);
        Matrix basis(free.size(), cols_, z);
        for (std::size_t k = 0; k < free.size(); ++k) {
            basis.at(k, free[k]) = ex_.one();
            for (std::size_t i = 0; i < pivots.size(); ++i)
                basis.at(k, pivots[i]) = -r.at(i, free[k]);
        }
        basis.rref(); // canonical form
        return basis;
    }

    K det() const {
        if (rows_ != cols_) throw Error("Matrix: det of non-square");
        if (rows_ == 0) throw Error("Matrix: det of empty");
        Matrix m = *this;
        K acc = ex_.one();
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t sel = col;
            while (sel < rows_ && m.at(sel, col).is_zero()) ++sel;
            if (sel == rows_) return ex_;
            if (sel != col) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(col, j), m.at(sel, j));
                acc = -acc;
            }
            acc = acc * m.at(col, col);
            K inv = m.at(col, col).inv();
            for (std::size_t i = col + 1; i < rows_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                K f = m.at(i, col) * inv;
                for (std::size_t j = col; j < cols_; ++j)
                    m.at(i, j) = m.at(i, j) - f * m.at(col, j);
            }
        }
        return acc;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<K> a_;
    K ex_{}; // zero exemplar, survives zero-sized shapes
};

// v and w projectively equal (both nonzero and all 2x2 minors vanish)?
template <Scalar K>
bool proportional(const std::vector<K>& v, const std::vector<K>& w) {
    if (v.size() != w.size()) return false;
    bool vz = true, wz = true;
    for (auto& x : v) vz = vz && x.is_zero();
    for (auto& x : w) wz = wz && x.is_zero();
    if (vz || wz) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!(v[i] * w[j] - v[j] * w[i]).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Streaming Gaussian eliminator over one prime field, Montgomery arithmetic.
// Keeps an echelon basis (distinct pivot columns) while rows arrive;
// finalize() back-substitutes to RREF for kernel extraction.

class FpEliminator {
  public:
    FpEliminator(u64 p, std::size_t cols)
        : M_(p), cols_(cols), row_of_col_(cols, -1) {}

    u64 modulus() const { return M_.p; }
    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    // row: values < p, length cols. Returns true iff the rank grew.
    bool add_row(const std::vector<u64>& row) {
        std::vector<u64> v = to_mont(row);
        int piv = reduce(v);
        if (piv < 0) return false;
        insert(std::move(v), piv);
        finalized_ = false;
        return true;
    }

    bool in_rowspace(const std::vector<u64>& row) const {
        std::vector<u64> v = to_mont(row);
        return reduce(v) < 0;
    }

    void finalize() {
        if (finalized_) return;
        // clear pivot columns above/below, processing pivots right to left
        std::vector<std::size_t> order;
        for (std::size_t c = cols_; c-- > 0;)
            if (row_of_col_[c] >= 0) order.push_back((std::size_t)row_of_col_[c]);
        for (std::size_t r : order) {
            std::size_t pc = (std::size_t)pivot_of_row_[r];
            for (std::size_t q = 0; q < rows_.size(); ++q) {
                if (q == r || rows_[q][pc] == 0) continue;
                axpy(rows_[q], rows_[r], rows_[q][pc], pc);
            }
        }
        finalized_ = true;
    }

    std::vector<std::size_t> pivot_cols() const {
        std::vector<std::size_t> p;
        for (std::size_t c = 0; c < cols_; ++c)
            if (row_of_col_[c] >= 0) p.push_back(c);
        return p;
    }
    std::vector<std::size_t> free_cols() const {
        std::vector<std::size_t> f;
        for (std::size_t c = 0; c < cols_; ++c)
            if (row_of_col_[c] < 0) f.push_back(c);
        return f;
    }

    // RREF row for a pivot column, normal domain (finalize first)
    std::vector<u64> rref_row_for_col(std::size_t col) {
        finalize();
        int r = row_of_col_[col];
        if (r < 0) throw Error("FpEliminator: not a pivot column");
        std::vector<u64> out(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out[j] = M_.from(rows_[(std::size_t)r][j]);
        return out;
    }

    // kernel basis vector attached to a free column, normal domain
    std::vector<u64> kernel_vector(std::size_t free_col) {
        finalize();
        if (row_of_col_[free_col] >= 0) throw Error("FpEliminator: not a free column");
        std::vector<u64> v(cols_, 0);
        v[free_col] = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            int r = row_of_col_[c];
            if (r < 0) continue;
            u64 e = M_.from(rows_[(std::size_t)r][free_col]);
            if (e) v[c] = M_.p - e;
        }
        return v;
    }

    // Same vector as kernel_vector, but by back-substitution on the echelon
    // basis alone — no finalize(). Rows are zero left of their pivot and the
    // pivot entry is mont(1), so solving right to left needs no division.
    // Much cheaper when only one kernel vector of a wide system is wanted.
    std::vector<u64> kernel_vector_echelon(std::size_t free_col) const {
        if (row_of_col_[free_col] >= 0) throw Error("FpEliminator: not a free column");
        const u64 p = M_.p;
        std::vector<u64> v(cols_, 0);
        v[free_col] = M_.mul(1, M_.r2);
        for (std::size_t c = cols_; c-- > 0;) {
            int r = row_of_col_[c];
            if (r < 0) continue;
            const std::vector<u64>& row = rows_[(std::size_t)r];
            u64 acc = 0;
            for (std::size_t j = c + 1; j < cols_; ++j) {
                if (row[j] == 0 || v[j] == 0) continue;
                acc += M_.mul(row[j], v[j]);
                if (acc >= p) acc -= p;
            }
            v[c] = acc ? p - acc : 0;
        }
        for (std::size_t j = 0; j < cols_; ++j) v[j] = M_.from(v[j]);
        return v;
    }

  private:
    std::vector<u64> to_mont(const std::vector<u64>& row) const {
        if (row.size() != cols_) throw Error("FpEliminator: wrong row length");
        std::vector<u64> v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = M_.mul(row[j], M_.r2);
        return v;
    }

    // dst -= f * src, from column c0 on; f in Montgomery domain
    void axpy(std::vector<u64>& dst, const std::vector<u64>& src, u64 f, std::size_t c0) const {
        const u64 p = M_.p;
        for (std::size_t j = c0; j < cols_; ++j) {
            if (src[j] == 0) continue;
            u64 t = M_.mul(f, src[j]);
            dst[j] = dst[j] >= t ? dst[j] - t : dst[j] + p - t;
        }
    }

    // reduce v against the basis; returns pivot column of the remainder or -1
    int reduce(std::vector<u64>& v) const {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j] == 0) continue;
            int r = row_of_col_[j];
            if (r < 0) return (int)j;
            axpy(v, rows_[(std::size_t)r], v[j], j);
            v[j] = 0; // exact by construction; avoid residue from the axpy skip
        }
        return -1;
    }

    void insert(std::vector<u64>&& v, int piv) {
        u64 inv = M_.inv(v[(std::size_t)piv]);
        for (std::size_t j = (std::size_t)piv; j < cols_; ++j)
            if (v[j]) v[j] = M_.mul(v[j], inv);
        row_of_col_[(std::size_t)piv] = (int)rows_.size();
        pivot_of_row_.push_back(piv);
        rows_.push_back(std::move(v));
    }

    Mont M_;
    std::size_t cols_;
    std::vector<std::vector<u64>> rows_; // Montgomery domain, pivot entry = mont(1)
    std::vector<int> pivot_of_row_;
    std::vector<int> row_of_col_;
    bool finalized_ = false;
};

} // namespace kummer3
