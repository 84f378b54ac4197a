#pragma once

// Brute-force reference computations for the tests. These deliberately avoid
// the Jordan-chain machinery the library uses: Hom spaces are solved as
// dense commutation systems and null-homotopies through the full
// vectorised operator, so the two routes are independent.

#include "diffn/homotopy.hpp"

namespace diffn::oracle {

// Matrix of f |-> f eps_X - eps_Y f on vec coordinates (row-major).
template <class F>
Matrix<F> commutation_operator(const DiffObject<F>& x, const DiffObject<F>& y) {
    const F& k = x.field();
    std::size_t dx = x.dim(), dy = y.dim();
    Matrix<F> op(k, dx * dy, dx * dy);
    for (std::size_t r = 0; r < dy; ++r)
        for (std::size_t c = 0; c < dx; ++c) {
            // column for the elementary matrix E_rc
            for (std::size_t j = 0; j < dx; ++j)
                op.at(r * dx + j, r * dx + c) = k.add(op.at(r * dx + j, r * dx + c), x.eps().at(c, j));
            for (std::size_t i = 0; i < dy; ++i)
                op.at(i * dx + c, r * dx + c) = k.sub(op.at(i * dx + c, r * dx + c), y.eps().at(i, r));
        }
    return op;
}

template <class F>
std::size_t dense_hom_dim(const DiffObject<F>& x, const DiffObject<F>& y) {
    if (x.dim() == 0 || y.dim() == 0) return 0;
    return kernel_basis(commutation_operator(x, y)).dim();
}

// Matrix of s |-> sum_k eps_Y^{n-1-k} s eps_X^k on vec coordinates.
template <class F>
Matrix<F> null_operator_matrix(const DiffObject<F>& x, const DiffObject<F>& y) {
    const F& k = x.field();
    const int n = x.n();
    std::size_t dx = x.dim(), dy = y.dim();
    Matrix<F> op(k, dx * dy, dx * dy);
    for (std::size_t r = 0; r < dy; ++r)
        for (std::size_t c = 0; c < dx; ++c)
            for (int kk = 0; kk < n; ++kk) {
                const Matrix<F>& left = y.eps_pow(static_cast<std::size_t>(n - 1 - kk));
                const Matrix<F>& right = x.eps_pow(static_cast<std::size_t>(kk));
                for (std::size_t i = 0; i < dy; ++i) {
                    if (k.is_zero(left.at(i, r))) continue;
                    for (std::size_t j = 0; j < dx; ++j)
                        op.at(i * dx + j, r * dx + c) =
                            k.add(op.at(i * dx + j, r * dx + c), k.mul(left.at(i, r), right.at(c, j)));
                }
            }
    return op;
}

template <class F>
std::optional<Matrix<F>> dense_null_witness(const DiffMorphism<F>& f) {
    const DiffObject<F>& x = f.src();
    const DiffObject<F>& y = f.dst();
    if (x.dim() == 0 || y.dim() == 0) return Matrix<F>(x.field(), y.dim(), x.dim());
    auto s = solve_linear(null_operator_matrix(x, y), f.mat().vec());
    if (!s) return std::nullopt;
    return Matrix<F>::unvec(x.field(), y.dim(), x.dim(), *s);
}

template <class F>
std::size_t dense_hom_k_dim(const DiffObject<F>& x, const DiffObject<F>& y) {
    if (x.dim() == 0 || y.dim() == 0) return 0;
    return dense_hom_dim(x, y) - rank(null_operator_matrix(x, y));
}

// dim H_(i) of a single nilpotent block of size j, straight from ranks of
// explicitly built shift matrices.
template <class F>
std::size_t block_homology_dim(const F& field, int n, int i, std::size_t j) {
    Matrix<F> shift = canonical_nilpotent(field, {j});
    Matrix<F> ker_pow = Matrix<F>::identity(field, j);
    for (int t = 0; t < i; ++t) ker_pow = ker_pow * shift;
    Matrix<F> im_pow = Matrix<F>::identity(field, j);
    for (int t = 0; t < n - i; ++t) im_pow = im_pow * shift;
    return (j - rank(ker_pow)) - rank(im_pow);
}

inline std::size_t closed_form_hom_k(int n, int i, int j) {
    long v = std::min(i, j) - std::max(i + j - n, 0);
    return v < 0 ? 0 : static_cast<std::size_t>(v);
}

}  // namespace diffn::oracle
