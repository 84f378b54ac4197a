#pragma once

#include <optional>
#include <vector>

#include "diffn/matrix.hpp"

namespace diffn {

template <class F>
struct Rref {
    Matrix<F> mat;
    std::vector<std::size_t> pivots;  // pivot columns, left to right
    std::size_t rank = 0;
};

// Reduced row echelon form. Pivot choice is the leftmost nonzero column,
// topmost nonzero entry; arithmetic is exact so no magnitude pivoting.
template <class F>
Rref<F> rref(const Matrix<F>& m) {
    const F& k = m.field();
    Rref<F> out{m, {}, 0};
    Matrix<F>& a = out.mat;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && k.is_zero(a.at(piv, col))) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        typename F::Elem s = k.inv(a.at(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = k.mul(s, a.at(row, j));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || k.is_zero(a.at(i, col))) continue;
            typename F::Elem f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(row, j)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = out.pivots.size();
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

// A subspace of k^ambient, spanned by the (independent) columns of basis.
template <class F>
struct Subspace {
    std::size_t ambient = 0;
    Matrix<F> basis;

    std::size_t dim() const { return basis.cols(); }
};

template <class F>
Subspace<F> kernel_basis(const Matrix<F>& m) {
    const F& k = m.field();
    Rref<F> r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    Matrix<F> basis(k, m.cols(), m.cols() - r.rank);
    std::size_t out = 0;
    for (std::size_t freec = 0; freec < m.cols(); ++freec) {
        if (is_pivot[freec]) continue;
        basis.at(freec, out) = k.one();
        for (std::size_t i = 0; i < r.rank; ++i)
            basis.at(r.pivots[i], out) = k.neg(r.mat.at(i, freec));
        ++out;
    }
    return Subspace<F>{m.cols(), std::move(basis)};
}

// Image basis: the pivot columns of the original matrix.
template <class F>
Subspace<F> image_basis(const Matrix<F>& m) {
    Rref<F> r = rref(m);
    Matrix<F> basis(m.field(), m.rows(), r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) basis.set_block(0, i, m.col(r.pivots[i]));
    return Subspace<F>{m.rows(), std::move(basis)};
}

// Solve A X = B for all columns of B at once; nullopt if any column is
// inconsistent. Free variables are set to zero. Solutions verified exactly.
template <class F>
std::optional<Matrix<F>> solve_all(const Matrix<F>& a, const Matrix<F>& b) {
    const F& k = a.field();
    if (a.rows() != b.rows()) throw InternalError("solve: row mismatch");
    Rref<F> r = rref(hstack(a, b));
    for (std::size_t c : r.pivots)
        if (c >= a.cols()) return std::nullopt;
    Matrix<F> x(k, a.cols(), b.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivots[i], j) = r.mat.at(i, a.cols() + j);
    if (!(a * x == b)) throw InternalError("solve: substitution check failed");
    return x;
}

template <class F>
std::optional<Matrix<F>> solve_linear(const Matrix<F>& a, const Matrix<F>& b) {
    if (b.cols() != 1) throw InternalError("solve_linear expects a column");
    return solve_all(a, b);
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    return solve_all(a, Matrix<F>::identity(a.field(), a.rows()));
}

// Does span(v) contain span(w)?
template <class F>
bool span_contains(const Matrix<F>& v, const Matrix<F>& w) {
    if (v.rows() != w.rows()) throw InternalError("span_contains: ambient mismatch");
    return rank(hstack(v, w)) == rank(v);
}

// Incremental column-echelon builder; used for basis extension.
template <class F>
class SpanBuilder {
  public:
    explicit SpanBuilder(const F& field, std::size_t ambient)
        : field_(field), ambient_(ambient) {}

    // Returns true (and absorbs v) iff v is independent of the current span.
    bool add(const Matrix<F>& v) {
        Matrix<F> w = reduce(v);
        std::size_t lead = 0;
        while (lead < ambient_ && field_.is_zero(w.at(lead, 0))) ++lead;
        if (lead == ambient_) return false;
        w = w.scaled(field_.inv(w.at(lead, 0)));
        cols_.push_back({lead, std::move(w)});
        return true;
    }

    bool contains(const Matrix<F>& v) const { return reduce(v).is_zero(); }

    std::size_t dim() const { return cols_.size(); }

  private:
    Matrix<F> reduce(const Matrix<F>& v) const {
        Matrix<F> w = v;
        for (const auto& [lead, c] : cols_) {
            const typename F::Elem& coef = w.at(lead, 0);
            if (field_.is_zero(coef)) continue;
            typename F::Elem f = coef;
            for (std::size_t i = 0; i < ambient_; ++i)
                w.at(i, 0) = field_.sub(w.at(i, 0), field_.mul(f, c.at(i, 0)));
        }
        return w;
    }

    F field_;
    std::size_t ambient_;
    std::vector<std::pair<std::size_t, Matrix<F>>> cols_;
};

template <class F>
struct QuotientBasis {
    std::size_t dim = 0;
    Matrix<F> reps;  // columns of V completing W to a basis of V
};

// dim(V/W) together with coset representatives drawn from V's basis.
// Requires W <= V as subspaces.
template <class F>
QuotientBasis<F> quotient_extend(const Subspace<F>& v, const Subspace<F>& w) {
    if (v.ambient != w.ambient) throw InputError("quotient: ambient dimension mismatch");
    if (!span_contains(v.basis, w.basis)) throw InputError("quotient: W not contained in V");
    const F& k = v.basis.field();
    SpanBuilder<F> span(k, v.ambient);
    for (std::size_t j = 0; j < w.dim(); ++j)
        if (!span.add(w.basis.col(j))) throw InputError("quotient: W basis is not independent");
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < v.dim(); ++j)
        if (span.add(v.basis.col(j))) picked.push_back(j);
    if (w.dim() + picked.size() != v.dim()) throw InputError("quotient: V basis is not independent");
    Matrix<F> reps(k, v.ambient, picked.size());
    for (std::size_t i = 0; i < picked.size(); ++i) reps.set_block(0, i, v.basis.col(picked[i]));
    return QuotientBasis<F>{picked.size(), std::move(reps)};
}

}  // namespace diffn
