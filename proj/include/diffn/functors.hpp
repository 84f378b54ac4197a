#pragma once

#include <vector>

#include "diffn/diff_object.hpp"

namespace diffn {

template <class F>
DiffObject<F> augment(const F& field, int n, std::size_t d) {
    return make_augmented_object(field, n, d);
}

// T on morphisms: the n-fold block diagonal of f, T(X) -> T(X').
template <class F>
DiffMorphism<F> augment_morphism(const F& field, int n, const Matrix<F>& f) {
    std::size_t r = f.rows(), c = f.cols();
    Matrix<F> mat(field, static_cast<std::size_t>(n) * r, static_cast<std::size_t>(n) * c);
    for (int b = 0; b < n; ++b) mat.set_block(static_cast<std::size_t>(b) * r, static_cast<std::size_t>(b) * c, f);
    return DiffMorphism<F>(augment(field, n, c), augment(field, n, r), std::move(mat));
}

// Adjunction unit for (F, T): a plain linear map f: FX -> Y corresponds to
// the morphism X -> T(Y) with block rows (f eps^{n-1}; ...; f eps; f).
template <class F>
DiffMorphism<F> adjoint_phi(const DiffObject<F>& x, const Matrix<F>& f) {
    if (f.cols() != x.dim()) throw InputError("adjoint: map shape does not match the source object");
    const int n = x.n();
    std::size_t dy = f.rows();
    Matrix<F> mat(x.field(), static_cast<std::size_t>(n) * dy, x.dim());
    for (int b = 0; b < n; ++b)
        mat.set_block(static_cast<std::size_t>(b) * dy, 0, f * x.eps_pow(static_cast<std::size_t>(n - 1 - b)));
    return DiffMorphism<F>(x, augment(x.field(), n, dy), std::move(mat));
}

// Inverse of adjoint_phi: read off the bottom block row of g: X -> T(Y).
template <class F>
Matrix<F> adjoint_phi_inv(const DiffMorphism<F>& g) {
    auto block = g.dst().augmented_block();
    if (!block) throw InputError("adjoint: destination is not an augmented object");
    std::size_t b = *block;
    return g.mat().block(static_cast<std::size_t>(g.src().n() - 1) * b, 0, b, g.src().dim());
}

// Adjunction for (T, F): a morphism f: T(Y) -> X corresponds to its first
// block column f_1: Y -> FX.
template <class F>
Matrix<F> adjoint_psi(const DiffMorphism<F>& f) {
    auto block = f.src().augmented_block();
    if (!block) throw InputError("adjoint: source is not an augmented object");
    return f.mat().block(0, 0, f.dst().dim(), *block);
}

template <class F>
DiffMorphism<F> adjoint_psi_inv(const DiffObject<F>& x, const Matrix<F>& u) {
    if (u.rows() != x.dim()) throw InputError("adjoint: map shape does not match the target object");
    const int n = x.n();
    std::size_t dy = u.cols();
    Matrix<F> mat(x.field(), x.dim(), static_cast<std::size_t>(n) * dy);
    for (int b = 0; b < n; ++b)
        mat.set_block(0, static_cast<std::size_t>(b) * dy, x.eps_pow(static_cast<std::size_t>(b)) * u);
    return DiffMorphism<F>(augment(x.field(), n, dy), x, std::move(mat));
}

namespace detail {

// The loop object X' of the projective presentation X' -> TX -> X:
// first block column -eps^{i+1}, identity superdiagonal.
template <class F>
DiffObject<F> coshift_object(const DiffObject<F>& x) {
    const int n = x.n();
    const std::size_t d = x.dim();
    const std::size_t m = static_cast<std::size_t>(n - 1);
    Matrix<F> eps(x.field(), m * d, m * d);
    Matrix<F> id = Matrix<F>::identity(x.field(), d);
    for (std::size_t i = 0; i < m; ++i) eps.set_block(i * d, 0, -x.eps_pow(i + 1));
    for (std::size_t i = 0; i + 1 < m; ++i) eps.set_block(i * d, (i + 1) * d, id);
    return DiffObject<F>(x.field(), n, std::move(eps));
}

// The suspension object X'': identity superdiagonal, bottom block row
// (-eps^{n-1}, ..., -eps).
template <class F>
DiffObject<F> shift_object(const DiffObject<F>& x) {
    const int n = x.n();
    const std::size_t d = x.dim();
    const std::size_t m = static_cast<std::size_t>(n - 1);
    Matrix<F> eps(x.field(), m * d, m * d);
    Matrix<F> id = Matrix<F>::identity(x.field(), d);
    for (std::size_t i = 0; i + 1 < m; ++i) eps.set_block(i * d, (i + 1) * d, id);
    for (std::size_t j = 0; j < m; ++j) eps.set_block((m - 1) * d, j * d, -x.eps_pow(static_cast<std::size_t>(n - 1) - j));
    return DiffObject<F>(x.field(), n, std::move(eps));
}

}  // namespace detail

// The short exact sequence X' -> TX -> X with p' = (1, eps, ..., eps^{n-1}).
template <class F>
ShortExactSeq<F> ses_proj(const DiffObject<F>& x) {
    const int n = x.n();
    const std::size_t d = x.dim();
    const std::size_t m = static_cast<std::size_t>(n - 1);
    DiffObject<F> loop = detail::coshift_object(x);
    DiffObject<F> tx = augment(x.field(), n, d);
    Matrix<F> id = Matrix<F>::identity(x.field(), d);

    Matrix<F> imat(x.field(), static_cast<std::size_t>(n) * d, m * d);
    for (std::size_t j = 0; j < m; ++j) {
        imat.set_block((m - j) * d, j * d, id);
        imat.set_block((m - j - 1) * d, j * d, -x.eps());
    }
    Matrix<F> pmat(x.field(), d, static_cast<std::size_t>(n) * d);
    for (std::size_t j = 0; j <= m; ++j) pmat.set_block(0, j * d, x.eps_pow(j));

    return ShortExactSeq<F>(DiffMorphism<F>(loop, tx, std::move(imat)), DiffMorphism<F>(tx, x, std::move(pmat)));
}

// The short exact sequence X -> TX -> X'' with i'' = (eps^{n-1}; ...; eps; 1).
template <class F>
ShortExactSeq<F> ses_inj(const DiffObject<F>& x) {
    const int n = x.n();
    const std::size_t d = x.dim();
    const std::size_t m = static_cast<std::size_t>(n - 1);
    DiffObject<F> sus = detail::shift_object(x);
    DiffObject<F> tx = augment(x.field(), n, d);
    Matrix<F> id = Matrix<F>::identity(x.field(), d);

    Matrix<F> imat(x.field(), static_cast<std::size_t>(n) * d, d);
    for (std::size_t i = 0; i <= m; ++i) imat.set_block(i * d, 0, x.eps_pow(m - i));
    Matrix<F> pmat(x.field(), m * d, static_cast<std::size_t>(n) * d);
    for (std::size_t i = 0; i < m; ++i) {
        pmat.set_block(i * d, (m - 1 - i) * d, id);
        pmat.set_block(i * d, (m - i) * d, -x.eps());
    }

    return ShortExactSeq<F>(DiffMorphism<F>(x, tx, std::move(imat)), DiffMorphism<F>(tx, sus, std::move(pmat)));
}

template <class F>
DiffObject<F> direct_sum(const DiffObject<F>& x, const DiffObject<F>& y) {
    if (!(x.field() == y.field()) || x.n() != y.n()) throw InputError("direct sum of incompatible objects");
    return DiffObject<F>(x.field(), x.n(), block_diag(x.eps(), y.eps()));
}

template <class F>
DiffMorphism<F> sum_inj1(const DiffObject<F>& x, const DiffObject<F>& y) {
    DiffObject<F> s = direct_sum(x, y);
    Matrix<F> m(x.field(), s.dim(), x.dim());
    m.set_block(0, 0, Matrix<F>::identity(x.field(), x.dim()));
    return DiffMorphism<F>(x, s, std::move(m));
}

template <class F>
DiffMorphism<F> sum_inj2(const DiffObject<F>& x, const DiffObject<F>& y) {
    DiffObject<F> s = direct_sum(x, y);
    Matrix<F> m(x.field(), s.dim(), y.dim());
    m.set_block(x.dim(), 0, Matrix<F>::identity(x.field(), y.dim()));
    return DiffMorphism<F>(y, s, std::move(m));
}

template <class F>
DiffMorphism<F> sum_proj1(const DiffObject<F>& x, const DiffObject<F>& y) {
    DiffObject<F> s = direct_sum(x, y);
    Matrix<F> m(x.field(), x.dim(), s.dim());
    m.set_block(0, 0, Matrix<F>::identity(x.field(), x.dim()));
    return DiffMorphism<F>(s, x, std::move(m));
}

template <class F>
DiffMorphism<F> sum_proj2(const DiffObject<F>& x, const DiffObject<F>& y) {
    DiffObject<F> s = direct_sum(x, y);
    Matrix<F> m(x.field(), y.dim(), s.dim());
    m.set_block(0, x.dim(), Matrix<F>::identity(x.field(), y.dim()));
    return DiffMorphism<F>(s, y, std::move(m));
}

template <class F>
DiffMorphism<F> direct_sum_morphism(const DiffMorphism<F>& f, const DiffMorphism<F>& g) {
    return DiffMorphism<F>(direct_sum(f.src(), g.src()), direct_sum(f.dst(), g.dst()),
                           block_diag(f.mat(), g.mat()));
}

template <class F>
JordanType jordan_type(const DiffObject<F>& x) {
    return x.type();
}

// Over a field the projectives (= injectives) are exactly the objects whose
// Jordan parts all equal n.
template <class F>
bool is_projective(const DiffObject<F>& x) {
    for (std::size_t p : x.type().parts)
        if (p != static_cast<std::size_t>(x.n())) return false;
    return true;
}

// Witness isomorphism X -> T(Q), Q of dimension dim/n, when X is projective.
template <class F>
std::optional<DiffMorphism<F>> projective_witness(const DiffObject<F>& x) {
    if (!is_projective(x)) return std::nullopt;
    const std::size_t n = static_cast<std::size_t>(x.n());
    const std::size_t q = x.dim() / n;
    const JordanData<F>& jd = x.jordan();
    // permute chain-major coordinates into the augmented block layout
    Matrix<F> perm(x.field(), x.dim(), x.dim());
    for (std::size_t c = 0; c < q; ++c)
        for (std::size_t t = 0; t < n; ++t) perm.at(t * q + c, c * n + t) = x.field().one();
    return DiffMorphism<F>(x, augment(x.field(), x.n(), q), perm * jd.to_canonical);
}

// An isomorphism X -> Y when the Jordan types agree (both canonical chain
// bases are sorted the same way), otherwise nothing.
template <class F>
std::optional<DiffMorphism<F>> iso_witness(const DiffObject<F>& x, const DiffObject<F>& y) {
    if (!(x.field() == y.field()) || x.n() != y.n()) throw InputError("iso_witness on incompatible objects");
    if (!(x.type() == y.type())) return std::nullopt;
    return DiffMorphism<F>(x, y, y.jordan().from_canonical * x.jordan().to_canonical);
}

// Conjugates a commuting idempotent on T(X) to block-diagonal form by the
// elementary lower-Toeplitz sweeps, one strict block diagonal at a time.
// Returns the accumulated conjugator g with g e g^{-1} = diag(e0, ..., e0).
template <class F>
DiffMorphism<F> split_idempotent(const DiffMorphism<F>& e) {
    const F& k = e.src().field();
    if (!(e.src() == e.dst())) throw InputError("idempotent must be an endomorphism");
    auto block = e.src().augmented_block();
    if (!block) throw InputError("idempotent splitting expects an augmented object");
    if (!(e.mat() * e.mat() == e.mat())) throw InputError("not idempotent");
    const std::size_t b = *block;
    const std::size_t n = static_cast<std::size_t>(e.src().n());

    // commuting with the block shift forces constant lower block diagonals
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix<F> blk = e.mat().block(i * b, j * b, b, b);
            if (j > i ? !blk.is_zero() : !(blk == e.mat().block((i - j) * b, 0, b, b)))
                throw InternalError("commuting endomorphism of T(X) is not lower Toeplitz");
        }

    Matrix<F> e0 = e.mat().block(0, 0, b, b);
    Matrix<F> f = e.mat();
    Matrix<F> g = Matrix<F>::identity(k, n * b);
    for (std::size_t m = 1; m < n; ++m) {
        Matrix<F> c = f.block(m * b, 0, b, b);
        Matrix<F> u = e0 * c - c * e0;
        Matrix<F> nm(k, n * b, n * b);
        for (std::size_t j = 0; j + m < n; ++j) nm.set_block((j + m) * b, j * b, u);
        Matrix<F> gm = Matrix<F>::identity(k, n * b) + nm;
        // inverse of a unipotent: alternating geometric series
        Matrix<F> gm_inv = Matrix<F>::identity(k, n * b);
        Matrix<F> term = nm;
        bool negate = true;
        while (!term.is_zero()) {
            gm_inv = negate ? gm_inv - term : gm_inv + term;
            term = term * nm;
            negate = !negate;
        }
        f = gm * f * gm_inv;
        g = gm * g;
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(f.block(i * b, j * b, b, b) == (i == j ? e0 : Matrix<F>(k, b, b))))
                throw InternalError("idempotent sweep did not reach block-diagonal form");
    return DiffMorphism<F>(e.src(), e.src(), std::move(g));
}

namespace detail {

template <class F>
void add_scaled_outer(Matrix<F>& m, const Matrix<F>& a, std::size_t acol, const Matrix<F>& binv,
                      std::size_t brow, const typename F::Elem& coef) {
    const F& k = m.field();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        typename F::Elem left = k.mul(coef, a.at(r, acol));
        if (k.is_zero(left)) continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            m.at(r, c) = k.add(m.at(r, c), k.mul(left, binv.at(brow, c)));
    }
}

// Enumeration of the chain-pair basis of Hom(X, Y): for a source chain of
// length a and target chain of length b, the commuting maps J_a -> J_b are
// spanned by the "drop by j-1" maps, j = max(1, b-a+1)..b; a map is
// null-homotopic exactly when j >= n-a+1.
struct HomPairEntry {
    std::size_t alpha;  // source chain index
    std::size_t beta;   // target chain index
    std::size_t j;      // 1-based landing row inside the target chain
    bool null_homotopic;
};

template <class F>
std::vector<HomPairEntry> hom_pair_entries(const DiffObject<F>& x, const DiffObject<F>& y) {
    const std::size_t n = static_cast<std::size_t>(x.n());
    const auto& jx = x.jordan();
    const auto& jy = y.jordan();
    std::vector<HomPairEntry> out;
    for (std::size_t alpha = 0; alpha < jx.parts.size(); ++alpha)
        for (std::size_t beta = 0; beta < jy.parts.size(); ++beta) {
            std::size_t a = jx.parts[alpha], b = jy.parts[beta];
            for (std::size_t j = b >= a ? b - a + 1 : 1; j <= b; ++j)
                out.push_back({alpha, beta, j, j + a >= n + 1});
        }
    return out;
}

// The morphism with canonical-coordinate matrix having ones along the chain
// pair (alpha, beta) landing at row j; mapped back through the Jordan bases.
template <class F>
Matrix<F> hom_entry_matrix(const DiffObject<F>& x, const DiffObject<F>& y, const HomPairEntry& entry) {
    const auto& jx = x.jordan();
    const auto& jy = y.jordan();
    std::size_t a = jx.parts[entry.alpha], b = jy.parts[entry.beta];
    Matrix<F> m(x.field(), y.dim(), x.dim());
    for (std::size_t t = 0; t < a && entry.j + t <= b; ++t)
        add_scaled_outer(m, jy.from_canonical, jy.offsets[entry.beta] + entry.j - 1 + t, jx.to_canonical,
                         jx.offsets[entry.alpha] + t, x.field().one());
    return m;
}

}  // namespace detail

// A basis of the space of morphisms X -> Y (solutions of f eps_X = eps_Y f),
// built chainwise from the Jordan decompositions.
template <class F>
std::vector<DiffMorphism<F>> hom_space_basis(const DiffObject<F>& x, const DiffObject<F>& y) {
    if (!(x.field() == y.field())) throw InputError("hom space over different fields");
    if (x.n() != y.n()) throw InputError("hom space with different nilpotency degrees");
    std::vector<DiffMorphism<F>> basis;
    for (const auto& entry : detail::hom_pair_entries(x, y))
        basis.emplace_back(x, y, detail::hom_entry_matrix(x, y, entry));
    return basis;
}

}  // namespace diffn
