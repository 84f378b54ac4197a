#pragma once

#include <array>
#include <map>

#include "diffn/functors.hpp"

namespace diffn {

// H_(r)(X) = Ker eps^r / Im eps^{n-r}, with coset representatives chosen by
// basis extension so induced maps have deterministic matrices.
template <class F>
struct HomologySpace {
    DiffObject<F> object;
    int r;
    Subspace<F> ker;   // Ker eps^r
    Subspace<F> im;    // Im eps^{n-r}
    Matrix<F> reps;    // columns of ker completing im to a basis of ker
    std::size_t dim;

    // coordinates of v (in Ker eps^r) with respect to reps modulo im
    Matrix<F> coords(const Matrix<F>& v) const {
        auto sol = solve_linear(hstack(reps, im.basis), v);
        if (!sol) throw InternalError("homology coordinates: vector not in kernel span");
        return sol->block(0, 0, dim, 1);
    }
};

template <class F>
HomologySpace<F> homology(const DiffObject<F>& x, int r) {
    if (r < 1 || r >= x.n()) throw InputError("homology index out of range");
    Subspace<F> ker = kernel_basis(x.eps_pow(static_cast<std::size_t>(r)));
    Subspace<F> im = image_basis(x.eps_pow(static_cast<std::size_t>(x.n() - r)));
    if (!span_contains(ker.basis, im.basis)) throw InternalError("image not contained in kernel");
    QuotientBasis<F> q = quotient_extend(ker, im);
    return HomologySpace<F>{x, r, std::move(ker), std::move(im), std::move(q.reps), q.dim};
}

template <class F>
std::size_t homology_dim(const DiffObject<F>& x, int r) {
    if (r < 1 || r >= x.n()) throw InputError("homology index out of range");
    std::size_t dim_ker = x.dim() - rank(x.eps_pow(static_cast<std::size_t>(r)));
    return dim_ker - rank(x.eps_pow(static_cast<std::size_t>(x.n() - r)));
}

template <class F>
bool is_acyclic(const DiffObject<F>& x) {
    for (int r = 1; r < x.n(); ++r)
        if (homology_dim(x, r) != 0) return false;
    return true;
}

// The induced map H_(r)(f) in the representative bases; the kernel/image
// compatibilities are checked before the matrix is formed.
template <class F>
Matrix<F> homology_map(const DiffMorphism<F>& f, int r) {
    HomologySpace<F> hx = homology(f.src(), r);
    HomologySpace<F> hy = homology(f.dst(), r);
    if (!(f.dst().eps_pow(static_cast<std::size_t>(r)) * (f.mat() * hx.ker.basis)).is_zero())
        throw InternalError("induced map does not preserve kernels");
    if (!span_contains(hy.im.basis, f.mat() * hx.im.basis))
        throw InternalError("induced map does not preserve images");
    Matrix<F> m(f.src().field(), hy.dim, hx.dim);
    for (std::size_t j = 0; j < hx.dim; ++j) m.set_block(0, j, hy.coords(f.mat() * hx.reps.col(j)));
    return m;
}

// Homotopy Hom space Hom(X, Y)/~. Everything is organised around the Jordan
// chain pairs: each pair entry is a Hom basis element, the null-homotopic
// ones are flagged, and the class coordinates of a morphism are read off its
// matrix in canonical coordinates. The number of classes per chain pair
// (a, b) is min(a,b) - max(a+b-n, 0).
template <class F>
class HomK {
  public:
    HomK(DiffObject<F> x, DiffObject<F> y) : x_(std::move(x)), y_(std::move(y)) {
        if (!(x_.field() == y_.field())) throw InputError("hom space over different fields");
        if (x_.n() != y_.n()) throw InputError("hom space with different nilpotency degrees");
        entries_ = detail::hom_pair_entries(x_, y_);
        for (const auto& e : entries_)
            if (e.null_homotopic)
                ++null_dim_;
    }

    const DiffObject<F>& src() const { return x_; }
    const DiffObject<F>& dst() const { return y_; }
    std::size_t hom_dim() const { return entries_.size(); }
    std::size_t null_dim() const { return null_dim_; }
    std::size_t class_dim() const { return entries_.size() - null_dim_; }

    std::vector<DiffMorphism<F>> hom_basis() const { return materialize(nullptr); }
    std::vector<DiffMorphism<F>> null_basis() const {
        bool want = true;
        return materialize(&want);
    }
    std::vector<DiffMorphism<F>> class_rep_basis() const {
        bool want = false;
        return materialize(&want);
    }

    // Coordinates of the homotopy class of f; zero iff f is null-homotopic.
    Matrix<F> class_coords(const DiffMorphism<F>& f) const {
        Matrix<F> fc = canonical_coords(f);
        const auto& jx = x_.jordan();
        const auto& jy = y_.jordan();
        Matrix<F> out(x_.field(), class_dim(), 1);
        std::size_t at = 0;
        for (const auto& e : entries_) {
            if (e.null_homotopic) continue;
            out.at(at++, 0) = fc.at(jy.offsets[e.beta] + e.j - 1, jx.offsets[e.alpha]);
        }
        return out;
    }

    // Solves f = sum_k eps_Y^{n-1-k} s eps_X^k for s, chain pair by chain
    // pair in canonical coordinates; nothing when some pair is inconsistent.
    std::optional<Matrix<F>> null_witness(const DiffMorphism<F>& f) const {
        const F& k = x_.field();
        const auto& jx = x_.jordan();
        const auto& jy = y_.jordan();
        Matrix<F> fc = canonical_coords(f);
        Matrix<F> sc(k, y_.dim(), x_.dim());
        std::map<std::pair<std::size_t, std::size_t>, PairSolver> solvers;
        for (std::size_t alpha = 0; alpha < jx.parts.size(); ++alpha)
            for (std::size_t beta = 0; beta < jy.parts.size(); ++beta) {
                std::size_t a = jx.parts[alpha], b = jy.parts[beta];
                auto it = solvers.find({a, b});
                if (it == solvers.end()) it = solvers.emplace(std::make_pair(a, b), make_pair_solver(a, b)).first;
                Matrix<F> rhs = fc.block(jy.offsets[beta], jx.offsets[alpha], b, a).vec();
                auto sol = it->second.solve(rhs);
                if (!sol) return std::nullopt;
                sc.set_block(jy.offsets[beta], jx.offsets[alpha], Matrix<F>::unvec(k, b, a, *sol));
            }
        Matrix<F> s = jy.from_canonical * sc * jx.to_canonical;
        if (!(apply_null_operator(f.src(), f.dst(), s) == f.mat()))
            throw InternalError("null-homotopy witness failed verification");
        return s;
    }

  private:
    struct PairSolver {
        Matrix<F> reduced;    // rref of the pair operator
        Matrix<F> transform;  // row transform with transform * op = reduced
        std::vector<std::size_t> pivots;

        std::optional<Matrix<F>> solve(const Matrix<F>& rhs) const {
            const F& k = rhs.field();
            Matrix<F> y = transform * rhs;
            for (std::size_t i = pivots.size(); i < y.rows(); ++i)
                if (!k.is_zero(y.at(i, 0))) return std::nullopt;
            Matrix<F> sol(k, reduced.cols(), 1);
            for (std::size_t i = 0; i < pivots.size(); ++i) sol.at(pivots[i], 0) = y.at(i, 0);
            return sol;
        }
    };

    // Matrix of s |-> sum_k J_b^{n-1-k} s J_a^k on row-major vec coordinates.
    PairSolver make_pair_solver(std::size_t a, std::size_t b) const {
        const F& k = x_.field();
        const std::size_t n = static_cast<std::size_t>(x_.n());
        Matrix<F> op(k, a * b, a * b);
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t c = 0; c < a; ++c)
                for (std::size_t kk = 0; kk < n; ++kk) {
                    std::size_t down = n - 1 - kk;
                    if (r + down >= b || c < kk) continue;
                    op.at((r + down) * a + (c - kk), r * a + c) = k.one();
                }
        Rref<F> rr = rref(hstack(op, Matrix<F>::identity(k, a * b)));
        PairSolver ps{Matrix<F>(k, a * b, a * b), Matrix<F>(k, a * b, a * b), {}};
        ps.reduced = rr.mat.block(0, 0, a * b, a * b);
        ps.transform = rr.mat.block(0, a * b, a * b, a * b);
        // pivots landing in the identity block belong to rows where the
        // operator part is zero; only the operator pivots index unknowns
        for (std::size_t c : rr.pivots)
            if (c < a * b) ps.pivots.push_back(c);
        return ps;
    }

    Matrix<F> canonical_coords(const DiffMorphism<F>& f) const {
        if (!(f.src() == x_) || !(f.dst() == y_)) throw InputError("morphism does not match hom space");
        return y_.jordan().to_canonical * f.mat() * x_.jordan().from_canonical;
    }

    std::vector<DiffMorphism<F>> materialize(const bool* null_flag) const {
        std::vector<DiffMorphism<F>> out;
        for (const auto& e : entries_) {
            if (null_flag && e.null_homotopic != *null_flag) continue;
            out.emplace_back(x_, y_, detail::hom_entry_matrix(x_, y_, e));
        }
        return out;
    }

    DiffObject<F> x_;
    DiffObject<F> y_;
    std::vector<detail::HomPairEntry> entries_;
    std::size_t null_dim_ = 0;
};

// sum_k eps_Y^{n-1-k} s eps_X^k, the defining expression of a null-homotopy.
template <class F>
Matrix<F> apply_null_operator(const DiffObject<F>& x, const DiffObject<F>& y, const Matrix<F>& s) {
    const int n = x.n();
    Matrix<F> acc(x.field(), y.dim(), x.dim());
    for (int k = 0; k < n; ++k)
        acc = acc + y.eps_pow(static_cast<std::size_t>(n - 1 - k)) * s * x.eps_pow(static_cast<std::size_t>(k));
    return acc;
}

template <class F>
std::optional<Matrix<F>> null_homotopy_witness(const DiffMorphism<F>& f) {
    return HomK<F>(f.src(), f.dst()).null_witness(f);
}

template <class F>
bool homotopic(const DiffMorphism<F>& f, const DiffMorphism<F>& g) {
    if (!(f.src() == g.src()) || !(f.dst() == g.dst())) throw InputError("morphisms have different endpoints");
    return null_homotopy_witness(f - g).has_value();
}

// f factors through the projective T(Y) iff f is null-homotopic; the
// factorisation is g = (s eps^{n-1}; ...; s eps; s) with p'_Y g = f.
template <class F>
std::optional<DiffMorphism<F>> factor_through_projective(const DiffMorphism<F>& f) {
    auto s = null_homotopy_witness(f);
    if (!s) return std::nullopt;
    DiffMorphism<F> g = adjoint_phi(f.src(), *s);
    if (!(ses_proj(f.dst()).p * g == f)) throw InternalError("projective factorisation failed verification");
    return g;
}

template <class F>
DiffObject<F> shift(const DiffObject<F>& x) {
    return detail::shift_object(x);
}

template <class F>
DiffObject<F> coshift(const DiffObject<F>& x) {
    return detail::coshift_object(x);
}

template <class F>
DiffMorphism<F> shift_morphism(const DiffMorphism<F>& f) {
    const int n = f.src().n();
    const std::size_t r = f.mat().rows(), c = f.mat().cols();
    Matrix<F> mat(f.src().field(), static_cast<std::size_t>(n - 1) * r, static_cast<std::size_t>(n - 1) * c);
    for (int b = 0; b + 1 < n; ++b)
        mat.set_block(static_cast<std::size_t>(b) * r, static_cast<std::size_t>(b) * c, f.mat());
    return DiffMorphism<F>(shift(f.src()), shift(f.dst()), std::move(mat));
}

// The standard triangle X -> Y -> Cone(f) -> Sigma X.
template <class F>
struct Triangle {
    DiffMorphism<F> f;
    DiffMorphism<F> u;  // Y -> Cone(f)
    DiffMorphism<F> v;  // Cone(f) -> Sigma X

    const DiffObject<F>& cone_object() const { return u.dst(); }
};

template <class F>
Triangle<F> cone(const DiffMorphism<F>& f) {
    const F& k = f.src().field();
    const int n = f.src().n();
    const DiffObject<F>& x = f.src();
    const DiffObject<F>& y = f.dst();
    const std::size_t dx = x.dim(), dy = y.dim();
    const std::size_t m = static_cast<std::size_t>(n - 1);
    const std::size_t dc = dy + m * dx;

    Matrix<F> eps(k, dc, dc);
    eps.set_block(0, 0, y.eps());
    eps.set_block(0, dy, f.mat());
    Matrix<F> idx = Matrix<F>::identity(k, dx);
    for (std::size_t i = 0; i + 1 < m; ++i) eps.set_block(dy + i * dx, dy + (i + 1) * dx, idx);
    for (std::size_t j = 0; j < m; ++j)
        eps.set_block(dy + (m - 1) * dx, dy + j * dx, -x.eps_pow(static_cast<std::size_t>(n - 1) - j));
    DiffObject<F> c(k, n, std::move(eps));

    Matrix<F> umat(k, dc, dy);
    umat.set_block(0, 0, Matrix<F>::identity(k, dy));
    Matrix<F> vmat(k, m * dx, dc);
    vmat.set_block(0, dy, Matrix<F>::identity(k, m * dx));

    return Triangle<F>{f, DiffMorphism<F>(y, c, std::move(umat)), DiffMorphism<F>(c, shift(x), std::move(vmat))};
}

// The six-term homology window of a short exact sequence at index r,
// including the wrap-around connecting map, with exactness verdicts at every
// joint. The connecting map lifts a representative through p, applies
// eps_B^r, and pulls back through i; well-definedness modulo images is
// verified on the image basis.
template <class F>
struct LesWindow {
    int r;
    HomologySpace<F> a_r, b_r, c_r, a_nr, b_nr, c_nr;
    Matrix<F> alpha_r, beta_r, delta_r;     // delta_r : H_(r)(C) -> H_(n-r)(A)
    Matrix<F> alpha_nr, beta_nr, delta_nr;  // delta_nr: H_(n-r)(C) -> H_(r)(A)
    std::array<bool, 6> exact_at;           // A_r, B_r, C_r, A_nr, B_nr, C_nr

    bool all_exact() const {
        for (bool e : exact_at)
            if (!e) return false;
        return true;
    }
};

namespace detail {

template <class F>
Matrix<F> connecting_map(const ShortExactSeq<F>& ses, int r, const HomologySpace<F>& hc,
                         const HomologySpace<F>& ha_out) {
    const DiffObject<F>& a = ses.i.src();
    const DiffObject<F>& b = ses.i.dst();
    const int n = b.n();
    auto lift = [&](const Matrix<F>& z) {
        auto y = solve_linear(ses.p.mat(), z);
        if (!y) throw InternalError("connecting map: lift through p failed");
        Matrix<F> w = b.eps_pow(static_cast<std::size_t>(r)) * *y;
        auto x = solve_linear(ses.i.mat(), w);
        if (!x) throw InternalError("connecting map: pullback through i failed");
        if (!(a.eps_pow(static_cast<std::size_t>(n - r)) * *x).is_zero())
            throw InternalError("connecting map: pullback not in kernel");
        return *x;
    };
    // choice of section does not matter modulo images; verify on the image basis
    for (std::size_t j = 0; j < hc.im.dim(); ++j)
        if (!span_contains(ha_out.im.basis, lift(hc.im.basis.col(j))))
            throw InternalError("connecting map is not well defined modulo images");
    Matrix<F> m(a.field(), ha_out.dim, hc.dim);
    for (std::size_t j = 0; j < hc.dim; ++j) m.set_block(0, j, ha_out.coords(lift(hc.reps.col(j))));
    return m;
}

template <class F>
bool exact_pair(const Matrix<F>& incoming, const Matrix<F>& outgoing, std::size_t middle_dim) {
    if (!(outgoing * incoming).is_zero()) return false;
    return rank(incoming) + rank(outgoing) == middle_dim;
}

}  // namespace detail

template <class F>
LesWindow<F> les(const ShortExactSeq<F>& ses, int r) {
    const DiffObject<F>& a = ses.i.src();
    const DiffObject<F>& b = ses.i.dst();
    const DiffObject<F>& c = ses.p.dst();
    const int n = a.n();
    if (r < 1 || r >= n) throw InputError("homology index out of range");
    const int nr = n - r;

    HomologySpace<F> a_r = homology(a, r), b_r = homology(b, r), c_r = homology(c, r);
    HomologySpace<F> a_nr = homology(a, nr), b_nr = homology(b, nr), c_nr = homology(c, nr);

    Matrix<F> alpha_r = homology_map(ses.i, r), beta_r = homology_map(ses.p, r);
    Matrix<F> alpha_nr = homology_map(ses.i, nr), beta_nr = homology_map(ses.p, nr);
    Matrix<F> delta_r = detail::connecting_map(ses, r, c_r, a_nr);
    Matrix<F> delta_nr = detail::connecting_map(ses, nr, c_nr, a_r);

    std::array<bool, 6> exact_at{
        detail::exact_pair(delta_nr, alpha_r, a_r.dim),  detail::exact_pair(alpha_r, beta_r, b_r.dim),
        detail::exact_pair(beta_r, delta_r, c_r.dim),    detail::exact_pair(delta_r, alpha_nr, a_nr.dim),
        detail::exact_pair(alpha_nr, beta_nr, b_nr.dim), detail::exact_pair(beta_nr, delta_nr, c_nr.dim)};

    return LesWindow<F>{r,
                        std::move(a_r),
                        std::move(b_r),
                        std::move(c_r),
                        std::move(a_nr),
                        std::move(b_nr),
                        std::move(c_nr),
                        std::move(alpha_r),
                        std::move(beta_r),
                        std::move(delta_r),
                        std::move(alpha_nr),
                        std::move(beta_nr),
                        std::move(delta_nr),
                        exact_at};
}

template <class F>
std::size_t hom_k_dim(const DiffObject<F>& x, const DiffObject<F>& y) {
    return HomK<F>(x, y).class_dim();
}

}  // namespace diffn
