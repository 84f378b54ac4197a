#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "diffn/fields.hpp"

namespace diffn {

// Dense exact matrix over a field policy F (GFp or RatField). Row-major.
// All values are immutable in practice: operations return fresh matrices.
template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    Matrix(const F& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    static Matrix from_rows(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw InternalError("ragged initializer");
            std::size_t j = 0;
            for (long long v : row) m.at(i, j++) = field.from_int(v);
            ++i;
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const Elem& e : data_)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.equal(at(i, j), i == j ? field_.one() : field_.zero())) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!a.field_.equal(a.data_[k], b.data_[k])) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r(a.field_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r(a.field_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
        return r;
    }

    Matrix operator-() const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.neg(data_[k]);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_)) throw InternalError("field mismatch in matrix product");
        if (a.cols_ != b.rows_) throw InternalError("shape mismatch in matrix product");
        Matrix r(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Elem& aik = a.at(i, k);
                if (a.field_.is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = a.field_.add(r.at(i, j), a.field_.mul(aik, b.at(k, j)));
            }
        return r;
    }

    Matrix scaled(const Elem& c) const {
        Matrix r(field_, rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.mul(c, data_[k]);
        return r;
    }

    // M^k for square M.
    Matrix pow(std::size_t k) const {
        if (rows_ != cols_) throw InternalError("pow of non-square matrix");
        Matrix r = identity(field_, rows_);
        for (std::size_t i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw InternalError("block out of range");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InternalError("set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }

    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    // Row-major flattening into a column vector.
    Matrix vec() const {
        Matrix v(field_, rows_ * cols_, 1);
        for (std::size_t k = 0; k < data_.size(); ++k) v.data_[k] = data_[k];
        return v;
    }

    static Matrix unvec(const F& field, std::size_t rows, std::size_t cols, const Matrix& v) {
        if (v.cols_ != 1 || v.rows_ != rows * cols) throw InternalError("unvec shape mismatch");
        Matrix m(field, rows, cols);
        m.data_ = v.data_;
        return m;
    }

  private:
    void require_same_shape(const Matrix& o) const {
        if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_)
            throw InternalError("shape mismatch");
    }

    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw InternalError("hstack row mismatch");
    Matrix<F> r(a.field(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw InternalError("vstack column mismatch");
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

}  // namespace diffn
