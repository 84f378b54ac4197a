#include "diffn/verify.hpp"

#include <chrono>
#include <sstream>

#include "diffn/derived.hpp"
#include "diffn/generators.hpp"
#include "diffn/io.hpp"

namespace diffn {

namespace {

struct CheckFailure {
    std::string message;
};

template <class F>
struct PropCtx {
    F field;
    int n;
    std::size_t max_dim;
    InstanceGen<F> gen;
    std::uint64_t seed;
    std::string property;
    std::size_t trial;
    std::vector<std::pair<std::string, std::string>> artifacts;

    PropCtx(F f, const GenConfig& cfg, const std::string& prop, std::size_t t)
        : field(f),
          n(cfg.n),
          max_dim(cfg.max_dim),
          gen(f, cfg.n, cfg.max_dim, trial_stream(cfg.seed, prop, t)),
          seed(cfg.seed),
          property(prop),
          trial(t) {}

    void check(bool ok, const std::string& msg) {
        if (!ok) throw CheckFailure{msg};
    }

    void note(const std::string& label, const DiffObject<F>& x) { artifacts.emplace_back(label, object_to_dfn(x)); }
    void note(const std::string& label, const DiffMorphism<F>& f) {
        artifacts.emplace_back(label, morphism_to_dfn(f, "<" + label + ":src>", "<" + label + ":dst>"));
    }
    void note(const std::string& label, const Matrix<F>& m) { artifacts.emplace_back(label, matrix_lines(m)); }

    DiffObject<F> object() {
        auto x = gen.random_object();
        note("object", x);
        return x;
    }

    std::size_t small(std::size_t bound) { return gen.rng().bounded(bound + 1); }
};

// ---- shared helpers -------------------------------------------------------

// Solve sum_i x_i (p . basis_i) = target over the Hom-space basis of
// Hom(X, B); returns the lift X -> B through p when one exists.
template <class F>
std::optional<DiffMorphism<F>> lift_through(const DiffMorphism<F>& p, const DiffMorphism<F>& f) {
    const F& k = f.src().field();
    std::vector<DiffMorphism<F>> basis = hom_space_basis(f.src(), p.src());
    Matrix<F> sys(k, f.dst().dim() * f.src().dim(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) sys.set_block(0, j, (p.mat() * basis[j].mat()).vec());
    auto x = solve_linear(sys, f.mat().vec());
    if (!x) return std::nullopt;
    Matrix<F> m(k, p.src().dim(), f.src().dim());
    for (std::size_t j = 0; j < basis.size(); ++j) m = m + basis[j].mat().scaled(x->at(j, 0));
    DiffMorphism<F> lift(f.src(), p.src(), std::move(m));
    if (!(p * lift == f)) throw InternalError("lift did not verify");
    return lift;
}

// Extension of f: A -> X along the injection i: A -> B.
template <class F>
std::optional<DiffMorphism<F>> extend_along(const DiffMorphism<F>& i, const DiffMorphism<F>& f) {
    const F& k = f.src().field();
    std::vector<DiffMorphism<F>> basis = hom_space_basis(i.dst(), f.dst());
    Matrix<F> sys(k, f.dst().dim() * f.src().dim(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) sys.set_block(0, j, (basis[j].mat() * i.mat()).vec());
    auto x = solve_linear(sys, f.mat().vec());
    if (!x) return std::nullopt;
    Matrix<F> m(k, f.dst().dim(), i.dst().dim());
    for (std::size_t j = 0; j < basis.size(); ++j) m = m + basis[j].mat().scaled(x->at(j, 0));
    DiffMorphism<F> ext(i.dst(), f.dst(), std::move(m));
    if (!(ext * i == f)) throw InternalError("extension did not verify");
    return ext;
}

// A quasi-isomorphism out of x: x -> conj(x) + free.
template <class F>
DiffMorphism<F> random_qiso_from(PropCtx<F>& ctx, const DiffObject<F>& x) {
    DiffObject<F> a = augment(ctx.field, ctx.n, ctx.small(2));
    DiffObject<F> xc = ctx.gen.conjugate_object(x);
    auto iso = iso_witness(x, xc);
    if (!iso) throw InternalError("conjugate object changed Jordan type");
    DiffObject<F> y = direct_sum(xc, a);
    Matrix<F> m = vstack(iso->mat(), ctx.gen.random_morphism(x, a).mat());
    return DiffMorphism<F>(x, y, std::move(m));
}

// A random quasi-isomorphism touching x: either out of x, or onto x from
// conj(x) + free; both directions exercise different code paths.
template <class F>
DiffMorphism<F> random_qiso(PropCtx<F>& ctx, const DiffObject<F>& x) {
    if (ctx.gen.rng().coin()) return random_qiso_from(ctx, x);
    DiffObject<F> a = augment(ctx.field, ctx.n, ctx.small(2));
    DiffObject<F> xc = ctx.gen.conjugate_object(x);
    auto iso = iso_witness(x, xc);
    if (!iso) throw InternalError("conjugate object changed Jordan type");
    DiffObject<F> z = direct_sum(xc, a);
    Matrix<F> m = hstack(iso->inverse_morphism().mat(), ctx.gen.random_morphism(a, x).mat());
    return DiffMorphism<F>(z, x, std::move(m));
}

// ---- exactla --------------------------------------------------------------

template <class F>
void prop_kernel_image_rank(PropCtx<F>& ctx) {
    std::size_t r = ctx.small(ctx.max_dim), c = ctx.small(ctx.max_dim);
    Matrix<F> m = ctx.gen.random_matrix(r, c);
    ctx.note("matrix", m);
    Subspace<F> ker = kernel_basis(m);
    Subspace<F> im = image_basis(m);
    std::size_t rk = rank(m);
    ctx.check((m * ker.basis).is_zero(), "kernel basis is not annihilated");
    ctx.check(rk + ker.dim() == c, "rank-nullity failed");
    ctx.check(im.dim() == rk, "image dimension differs from rank");
    ctx.check(rank(ker.basis) == ker.dim(), "kernel basis is dependent");
    Rref<F> rr = rref(m);
    ctx.check(rref(rr.mat).mat == rr.mat, "rref is not idempotent");
}

template <class F>
void prop_solve_consistency(PropCtx<F>& ctx) {
    std::size_t r = ctx.small(ctx.max_dim), c = ctx.small(ctx.max_dim);
    Matrix<F> a = ctx.gen.random_matrix(r, c);
    ctx.note("matrix", a);
    Matrix<F> x0 = ctx.gen.random_matrix(c, 1);
    Matrix<F> b1 = a * x0;
    auto s1 = solve_linear(a, b1);
    ctx.check(s1.has_value(), "consistent system reported unsolvable");
    ctx.check(a * *s1 == b1, "solution does not substitute");
    Matrix<F> b2 = ctx.gen.random_matrix(r, 1);
    bool solvable = rank(hstack(a, b2)) == rank(a);
    ctx.check(solve_linear(a, b2).has_value() == solvable, "solvability disagrees with rank test");
}

template <class F>
void prop_quotient_extension(PropCtx<F>& ctx) {
    std::size_t d = ctx.small(ctx.max_dim);
    Subspace<F> v = image_basis(ctx.gen.random_matrix(d, ctx.small(ctx.max_dim)));
    Subspace<F> w = image_basis(v.basis * ctx.gen.random_matrix(v.dim(), ctx.small(ctx.max_dim)));
    ctx.note("V", v.basis);
    ctx.note("W", w.basis);
    QuotientBasis<F> q = quotient_extend(v, w);
    ctx.check(q.dim == v.dim() - w.dim(), "quotient dimension mismatch");
    Matrix<F> joined = hstack(w.basis, q.reps);
    ctx.check(rank(joined) == v.dim() && span_contains(v.basis, joined), "representatives do not complete W to V");
    if (v.dim() < d) {
        // a vector outside V must be rejected
        Subspace<F> full{d, Matrix<F>::identity(ctx.field, d)};
        QuotientBasis<F> out = quotient_extend(full, v);
        Subspace<F> bad{d, hstack(v.basis, out.reps.col(0))};
        bool threw = false;
        try {
            quotient_extend(v, bad);
        } catch (const InputError&) {
            threw = true;
        }
        ctx.check(threw, "containment violation not detected");
    }
}

template <class F>
void prop_rerun_identical(PropCtx<F>& ctx) {
    std::size_t r = ctx.small(ctx.max_dim), c = ctx.small(ctx.max_dim);
    Matrix<F> m = ctx.gen.random_matrix(r, c);
    std::string first = matrix_lines(rref(m).mat) + matrix_lines(kernel_basis(m).basis);
    std::string second = matrix_lines(rref(m).mat) + matrix_lines(kernel_basis(m).basis);
    ctx.check(first == second, "recomputation is not bit-identical");
}

// ---- core -----------------------------------------------------------------

template <class F>
void prop_adjunction_roundtrip(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    std::size_t dy = ctx.small(ctx.max_dim);
    DiffObject<F> ty = augment(ctx.field, ctx.n, dy);

    Matrix<F> f = ctx.gen.random_matrix(dy, x.dim());
    DiffMorphism<F> phi = adjoint_phi(x, f);
    ctx.check(adjoint_phi_inv(phi) == f, "phi round trip (inverse after) failed");
    DiffMorphism<F> g = ctx.gen.random_morphism(x, ty);
    ctx.check(adjoint_phi(x, adjoint_phi_inv(g)) == g, "phi round trip (inverse before) failed");

    Matrix<F> u = ctx.gen.random_matrix(x.dim(), dy);
    DiffMorphism<F> psi_inv = adjoint_psi_inv(x, u);
    ctx.check(adjoint_psi(psi_inv) == u, "psi round trip (inverse after) failed");
    DiffMorphism<F> h = ctx.gen.random_morphism(ty, x);
    ctx.check(adjoint_psi_inv(x, adjoint_psi(h)) == h, "psi round trip (inverse before) failed");
}

template <class F>
void prop_adjunction_naturality(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> xp = ctx.gen.random_object();
    DiffMorphism<F> alpha = ctx.gen.random_morphism(x, xp);
    std::size_t dy = ctx.small(ctx.max_dim), dyp = ctx.small(ctx.max_dim);
    Matrix<F> beta = ctx.gen.random_matrix(dyp, dy);

    // phi natural in the object argument: phi(f) . alpha = phi(f alpha)
    Matrix<F> f = ctx.gen.random_matrix(dy, xp.dim());
    ctx.check(adjoint_phi(xp, f).mat() * alpha.mat() == adjoint_phi(x, f * alpha.mat()).mat(),
              "phi naturality in the source failed");
    // phi natural in the plain argument: T(beta) . phi(f') = phi(beta f')
    Matrix<F> f2 = ctx.gen.random_matrix(dy, x.dim());
    ctx.check(augment_morphism(ctx.field, ctx.n, beta).mat() * adjoint_phi(x, f2).mat() ==
                  adjoint_phi(x, beta * f2).mat(),
              "phi naturality in the target failed");
    // psi natural in the object argument: psi(gamma . g) = gamma . psi(g)
    DiffObject<F> ty = augment(ctx.field, ctx.n, dy);
    DiffMorphism<F> g = ctx.gen.random_morphism(ty, x);
    ctx.check(adjoint_psi(alpha * g) == alpha.mat() * adjoint_psi(g), "psi naturality in the target failed");
    // psi natural in the plain argument: psi(g . T(beta2)) = psi(g) beta2
    Matrix<F> beta2 = ctx.gen.random_matrix(dy, dyp);
    ctx.check(adjoint_psi(g * augment_morphism(ctx.field, ctx.n, beta2)) == adjoint_psi(g) * beta2,
              "psi naturality in the source failed");
}

template <class F>
void prop_canonical_ses(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    ShortExactSeq<F> sp = ses_proj(x);
    ShortExactSeq<F> si = ses_inj(x);
    ctx.check(check_ses(sp.i, sp.p), "projective presentation is not exact");
    ctx.check(check_ses(si.i, si.p), "injective presentation is not exact");
    ctx.check(sp.i.dst().augmented_block().has_value(), "middle object is not augmented");
    if (ctx.n == 2) {
        // degree two: the displayed matrices are two-block columns/rows
        Matrix<F> id = Matrix<F>::identity(ctx.field, x.dim());
        ctx.check(sp.i.mat() == vstack(-x.eps(), id), "degree-2 inclusion matrix differs");
        ctx.check(sp.p.mat() == hstack(id, x.eps()), "degree-2 projection matrix differs");
        ctx.check(sp.i.src().eps() == -x.eps(), "degree-2 loop differential differs");
        ctx.check(si.i.mat() == vstack(x.eps(), id), "degree-2 coinclusion matrix differs");
        ctx.check(si.p.mat() == hstack(id, -x.eps()), "degree-2 coprojection matrix differs");
        ctx.check(si.p.dst().eps() == -x.eps(), "degree-2 suspension differential differs");
    }
}

template <class F>
void prop_idempotent_split(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> tx = augment(ctx.field, ctx.n, x.dim());
    Matrix<F> e0 = ctx.gen.random_idempotent_matrix(x.dim());
    DiffMorphism<F> conj = ctx.gen.random_augmented_automorphism(tx);
    Matrix<F> emat = conj.mat() * augment_morphism(ctx.field, ctx.n, e0).mat() * conj.inverse_morphism().mat();
    DiffMorphism<F> e(tx, tx, std::move(emat));
    ctx.note("idempotent", e);
    ctx.check((e * e) == e, "generated endomorphism is not idempotent");

    DiffMorphism<F> g = split_idempotent(e);
    ctx.check(g.is_invertible(), "conjugator is not invertible");
    Matrix<F> d = g.mat() * e.mat() * g.inverse_morphism().mat();
    std::size_t b = x.dim();
    Matrix<F> diag = d.block(0, 0, b, b);
    ctx.check(diag * diag == diag, "diagonal block is not idempotent");
    for (std::size_t i = 0; i < static_cast<std::size_t>(ctx.n); ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(ctx.n); ++j)
            ctx.check(d.block(i * b, j * b, b, b) == (i == j ? diag : Matrix<F>(ctx.field, b, b)),
                      "conjugated idempotent is not block diagonal");

    // already diagonal: the sweeps must return the identity conjugator
    DiffMorphism<F> te0 = augment_morphism(ctx.field, ctx.n, e0);
    ctx.check(split_idempotent(te0).mat().is_identity(), "diagonal idempotent got a nontrivial conjugator");
}

template <class F>
void prop_projective_characterization(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    bool by_type = is_projective(x);

    auto witness = projective_witness(x);
    ctx.check(witness.has_value() == by_type, "witness existence disagrees with type test");
    if (witness) ctx.check(witness->is_invertible(), "projective witness is not invertible");

    ShortExactSeq<F> sp = ses_proj(x);
    bool lifts = lift_through(sp.p, DiffMorphism<F>::identity(x)).has_value();
    ctx.check(lifts == by_type, "identity lift through the projective cover disagrees");

    ShortExactSeq<F> si = ses_inj(x);
    bool extends = extend_along(si.i, DiffMorphism<F>::identity(x)).has_value();
    ctx.check(extends == by_type, "identity extension along the injective hull disagrees");

    if (by_type) {
        // projective objects lift against arbitrary surjections
        DiffObject<F> b = ctx.gen.random_object();
        ShortExactSeq<F> ses = ctx.gen.random_invariant_ses(b);
        DiffMorphism<F> f = ctx.gen.random_morphism(x, ses.p.dst());
        ctx.check(lift_through(ses.p, f).has_value(), "projective object failed to lift");
        DiffMorphism<F> h = ctx.gen.random_morphism(ses.i.src(), x);
        ctx.check(extend_along(ses.i, h).has_value(), "injective object failed to extend");
    }
}

template <class F>
void prop_jordan_classification(PropCtx<F>& ctx) {
    std::vector<std::size_t> parts = ctx.gen.random_jordan_parts();
    DiffObject<F> x = ctx.gen.object_of_type(parts);
    ctx.note("X", x);
    ctx.check(x.type().parts == parts, "sampled type is not the computed type");

    DiffObject<F> y = ctx.gen.object_of_type(parts);
    auto iso = iso_witness(x, y);
    ctx.check(iso.has_value() && iso->is_invertible(), "equal types but no isomorphism found");

    DiffObject<F> z = ctx.gen.random_object();
    ctx.note("Z", z);
    if (z.type() == x.type()) {
        ctx.check(iso_witness(x, z).has_value(), "equal types but no isomorphism found");
    } else {
        ctx.check(!iso_witness(x, z).has_value(), "distinct types produced a witness");
        if (z.dim() == x.dim())
            for (int t = 0; t < 6; ++t)
                ctx.check(!ctx.gen.random_morphism(x, z).is_invertible(),
                          "invertible morphism between distinct types");
    }
}

template <class F>
void prop_direct_sum_biproduct(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    DiffObject<F> s = direct_sum(x, y);
    auto i1 = sum_inj1(x, y), i2 = sum_inj2(x, y);
    auto p1 = sum_proj1(x, y), p2 = sum_proj2(x, y);
    ctx.check((p1 * i1).mat().is_identity(), "p1 i1 != id");
    ctx.check((p2 * i2).mat().is_identity(), "p2 i2 != id");
    ctx.check((p1 * i2).is_zero() && (p2 * i1).is_zero(), "cross projections nonzero");
    ctx.check((i1 * p1 + i2 * p2).mat().is_identity(), "biproduct resolution of identity failed");

    std::vector<std::size_t> merged = x.type().parts;
    for (std::size_t p : y.type().parts) merged.push_back(p);
    std::sort(merged.begin(), merged.end(), std::greater<>());
    ctx.check(s.type().parts == merged, "type of a sum is not the merged type");

    DiffObject<F> xp = ctx.gen.random_object();
    DiffMorphism<F> f = ctx.gen.random_morphism(x, xp);
    DiffMorphism<F> g = ctx.gen.random_morphism(y, xp);
    // universal property of the coproduct: [f, g] restricted to each leg
    Matrix<F> fg = hstack(f.mat(), g.mat());
    DiffMorphism<F> both(s, xp, std::move(fg));
    ctx.check(both * i1 == f && both * i2 == g, "coproduct mediating morphism failed");
}

template <class F>
void prop_hom_basis(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    std::vector<DiffMorphism<F>> basis = hom_space_basis(x, y);
    Matrix<F> stacked(ctx.field, x.dim() * y.dim(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) stacked.set_block(0, j, basis[j].mat().vec());
    ctx.check(rank(stacked) == basis.size(), "hom basis is dependent");

    if (x.dim() * y.dim() <= 144 && x.dim() > 0 && y.dim() > 0) {
        // independent route: the commutation system solved densely
        Matrix<F> op(ctx.field, x.dim() * y.dim(), x.dim() * y.dim());
        for (std::size_t r = 0; r < y.dim(); ++r)
            for (std::size_t c = 0; c < x.dim(); ++c) {
                Matrix<F> e(ctx.field, y.dim(), x.dim());
                e.at(r, c) = ctx.field.one();
                op.set_block(0, r * x.dim() + c, (e * x.eps() - y.eps() * e).vec());
            }
        ctx.check(kernel_basis(op).dim() == basis.size(), "hom dimension disagrees with the dense solve");
    }
    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    ctx.check(span_contains(stacked, f.mat().vec()), "random morphism outside the hom basis span");
}

// ---- homotopy -------------------------------------------------------------

template <class F>
void prop_acyclic_augmented(PropCtx<F>& ctx) {
    DiffObject<F> a = augment(ctx.field, ctx.n, ctx.small(ctx.max_dim));
    ctx.check(is_acyclic(a), "augmented object is not acyclic");
    for (int r = 1; r < ctx.n; ++r) ctx.check(homology(a, r).dim == 0, "augmented homology nonzero");

    DiffObject<F> x = ctx.object();
    for (int r = 1; r < ctx.n; ++r) {
        HomologySpace<F> h = homology(x, r);
        ctx.check(span_contains(h.ker.basis, h.im.basis), "image not inside kernel");
        ctx.check(h.dim == h.ker.dim() - h.im.dim(), "homology dimension mismatch");
        ctx.check(h.dim == homology_dim(x, r), "rank shortcut disagrees with quotient");
        ctx.check(rank(hstack(h.reps, h.im.basis)) == h.ker.dim(), "representatives do not extend the image");
    }
}

template <class F>
void prop_homology_invariance(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    Matrix<F> s = ctx.gen.random_matrix(y.dim(), x.dim());
    DiffMorphism<F> g(x, y, f.mat() + apply_null_operator(x, y, s));
    ctx.note("f", f);
    ctx.note("s", s);
    for (int r = 1; r < ctx.n; ++r)
        ctx.check(homology_map(f, r) == homology_map(g, r), "homotopic maps induce different homology maps");
    for (int r = 1; r < ctx.n; ++r) {
        ctx.check(homology_map(DiffMorphism<F>::identity(x), r).is_identity(), "identity map not identity on homology");
        ctx.check(homology_map(DiffMorphism<F>::zero(x, y), r).is_zero(), "zero map not zero on homology");
    }
}

template <class F>
void prop_factor_projective(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();

    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    ctx.note("f", f);
    auto s = null_homotopy_witness(f);
    auto g = factor_through_projective(f);
    ctx.check(s.has_value() == g.has_value(), "witness and factorisation existence disagree");
    if (g) {
        ctx.check(ses_proj(y).p * *g == f, "factorisation does not compose to f");
        Matrix<F> s2 = adjoint_phi_inv(*g);
        ctx.check(apply_null_operator(x, y, s2) == f.mat(), "bottom block of the factorisation is not a witness");
    }

    // built-to-be-null map: witness and factorisation must exist
    Matrix<F> s0 = ctx.gen.random_matrix(y.dim(), x.dim());
    DiffMorphism<F> f0(x, y, apply_null_operator(x, y, s0));
    auto w0 = null_homotopy_witness(f0);
    ctx.check(w0.has_value(), "null-by-construction map has no witness");
    ctx.check(apply_null_operator(x, y, *w0) == f0.mat(), "returned witness does not satisfy the identity");
    ctx.check(factor_through_projective(f0).has_value(), "null-by-construction map does not factor");
}

template <class F>
void prop_cone_triangle(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    ctx.note("f", f);
    Triangle<F> tri = cone(f);
    ctx.check((tri.v * tri.u).is_zero(), "v u is nonzero");
    ctx.check(homotopic(tri.u * f, DiffMorphism<F>::zero(x, tri.cone_object())), "u f is not null-homotopic");
    ctx.check(homotopic(shift_morphism(f) * tri.v, DiffMorphism<F>::zero(tri.cone_object(), shift(y))),
              "(shift f) v is not null-homotopic");

    // cone of an isomorphism is acyclic
    DiffObject<F> xc = ctx.gen.conjugate_object(x);
    auto iso = iso_witness(x, xc);
    ctx.check(iso.has_value(), "conjugation changed the type");
    ctx.check(is_acyclic(cone(*iso).cone_object()), "cone of an isomorphism is not acyclic");

    // cone of zero is the sum with the shift, on the nose
    DiffMorphism<F> z = DiffMorphism<F>::zero(x, y);
    ctx.check(cone(z).cone_object().eps() == direct_sum(y, shift(x)).eps(), "cone of zero is not Y + shift X");

    for (int r = 1; r < ctx.n; ++r)
        ctx.check(homology_dim(shift(x), r) == homology_dim(x, ctx.n - r), "shift homology duality failed");
}

template <class F>
void prop_les_exactness(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    ShortExactSeq<F> sp = ses_proj(x);
    ShortExactSeq<F> si = ses_inj(x);
    for (int r = 1; r < ctx.n; ++r) {
        LesWindow<F> wp = les(sp, r);
        ctx.check(wp.all_exact(), "projective presentation window not exact");
        // acyclic middle: the connecting map is an isomorphism
        ctx.check(wp.c_r.dim == wp.a_nr.dim && rank(wp.delta_r) == wp.c_r.dim,
                  "connecting map is not an isomorphism with acyclic middle");
        ctx.check(les(si, r).all_exact(), "injective presentation window not exact");
    }
    DiffObject<F> b = ctx.gen.random_object();
    ShortExactSeq<F> ses = ctx.gen.random_invariant_ses(b);
    ctx.note("i", ses.i);
    ctx.note("p", ses.p);
    for (int r = 1; r < ctx.n; ++r) ctx.check(les(ses, r).all_exact(), "invariant-submodule window not exact");
}

template <class F>
void prop_homk_contractible(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> a = augment(ctx.field, ctx.n, 1 + ctx.small(2));
    ctx.check(hom_k_dim(a, x) == 0, "maps out of a free object are not all null-homotopic");
    ctx.check(hom_k_dim(x, a) == 0, "maps into a free object are not all null-homotopic");
    ctx.check(homotopic(DiffMorphism<F>::identity(a), DiffMorphism<F>::zero(a, a)),
              "identity of a free object is not null-homotopic");
    if (is_projective(x)) {
        DiffObject<F> y = ctx.gen.random_object();
        ctx.check(hom_k_dim(x, y) == 0, "projective source with nonzero homotopy classes");
    }

    DiffObject<F> y = ctx.gen.random_object();
    HomK<F> hk(x, y);
    ctx.check(hk.hom_dim() == hk.null_dim() + hk.class_dim(), "hom space dimensions inconsistent");
    for (const auto& nb : hk.null_basis()) {
        auto w = hk.null_witness(nb);
        ctx.check(w.has_value(), "null basis element has no witness");
    }
    std::vector<DiffMorphism<F>> reps = hk.class_rep_basis();
    Matrix<F> coords(ctx.field, hk.class_dim(), reps.size());
    for (std::size_t j = 0; j < reps.size(); ++j) coords.set_block(0, j, hk.class_coords(reps[j]));
    ctx.check(coords.is_identity(), "class coordinates of the representative basis are not the identity");

    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    DiffMorphism<F> g = ctx.gen.random_morphism(x, y);
    bool same_class = hk.class_coords(f) == hk.class_coords(g);
    ctx.check(homotopic(f, g) == same_class, "homotopy disagrees with class coordinates");
}

template <class F>
void prop_shift_duality(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    auto eq1 = homotopy_equivalent(coshift(shift(x)), x);
    ctx.check(eq1.has_value(), "coshift of shift is not equivalent to the object");
    ctx.check(homotopic(eq1->to * eq1->from, DiffMorphism<F>::identity(x)), "equivalence does not round trip");
    ctx.check(homotopic(eq1->from * eq1->to, DiffMorphism<F>::identity(coshift(shift(x)))),
              "equivalence does not round trip");
    ctx.check(homotopy_equivalent(shift(coshift(x)), x).has_value(),
              "shift of coshift is not equivalent to the object");

    DiffObject<F> y = ctx.gen.random_object();
    DiffObject<F> z = ctx.gen.random_object();
    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    DiffMorphism<F> g = ctx.gen.random_morphism(y, z);
    ctx.check(shift_morphism(g * f) == shift_morphism(g) * shift_morphism(f), "shift is not functorial");
}

// ---- derived --------------------------------------------------------------

template <class F>
void prop_qiso_two_routes(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);
    QisoVerdict<F> v = is_quasi_iso(f);  // the two routes are compared internally
    bool all = true;
    for (const auto& pr : v.per_r) all = all && pr.invertible;
    ctx.check(v.is_qiso == all && v.is_qiso == v.cone_acyclic, "verdict fields inconsistent");

    DiffMorphism<F> q = random_qiso(ctx, x);
    ctx.check(is_quasi_iso(q).is_qiso, "constructed quasi-isomorphism not recognised");

    DiffMorphism<F> z0 = DiffMorphism<F>::zero(x, x);
    ctx.check(is_quasi_iso(z0).is_qiso == is_acyclic(x), "zero endomorphism verdict wrong");
}

template <class F>
void prop_two_of_three(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffMorphism<F> f = random_qiso(ctx, x);  // quasi-iso into or out of x
    DiffMorphism<F> g = random_qiso_from(ctx, f.dst());
    ctx.check(is_quasi_iso(g * f).is_qiso, "composite of quasi-isomorphisms is not one");

    DiffObject<F> z = ctx.gen.random_object();
    DiffMorphism<F> h = ctx.gen.random_morphism(f.dst(), z);
    ctx.check(is_quasi_iso(h * f).is_qiso == is_quasi_iso(h).is_qiso,
              "two-of-three failed with a quasi-isomorphism first");
    DiffMorphism<F> k = ctx.gen.random_morphism(z, f.src());
    ctx.check(is_quasi_iso(f * k).is_qiso == is_quasi_iso(k).is_qiso,
              "two-of-three failed with a quasi-isomorphism second");
}

template <class F>
void prop_minimal_model(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    MinimalModel<F> mm = minimal_model(x);
    for (std::size_t p : mm.reduced.type().parts)
        ctx.check(p < static_cast<std::size_t>(ctx.n), "reduced model keeps a free chain");
    std::size_t free_parts = 0;
    for (std::size_t p : x.type().parts)
        if (p == static_cast<std::size_t>(ctx.n)) ++free_parts;
    ctx.check(mm.free_rank == free_parts, "free rank differs from the type");
    ctx.check((mm.project * mm.include).mat().is_identity(), "retraction failed");
    ctx.check(apply_null_operator(x, x, mm.witness) ==
                  Matrix<F>::identity(ctx.field, x.dim()) - mm.include.mat() * mm.project.mat(),
              "stored witness is wrong");
    ctx.check(is_quasi_iso(mm.include).is_qiso, "inclusion of the reduced model is not a quasi-isomorphism");
    auto iso = iso_witness(direct_sum(mm.reduced, augment(ctx.field, ctx.n, mm.free_rank)), x);
    ctx.check(iso.has_value(), "object is not the sum of its reduced model and a free part");
}

template <class F>
void prop_homotopy_section(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffMorphism<F> f = random_qiso(ctx, x);
    ctx.note("f", f);
    HomotopySection<F> hs = homotopy_section(f);
    ctx.check(homotopic(f * hs.section, DiffMorphism<F>::identity(f.dst())), "section does not invert up to homotopy");
    ctx.check(apply_null_operator(f.dst(), f.dst(), hs.witness) ==
                  (f * hs.section).mat() - Matrix<F>::identity(ctx.field, f.dst().dim()),
              "section witness does not verify");

    HomotopySection<F> tr = homotopy_section(DiffMorphism<F>::identity(x));
    ctx.check(homotopic(tr.section, DiffMorphism<F>::identity(x)), "section of the identity is not the identity class");
}

template <class F>
void prop_theta_bijection(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    for (int i = 1; i < ctx.n; ++i) {
        ThetaReport<F> th = theta_check(x, i);
        ctx.check(th.dim_hom_k == th.dim_homology, "generator hom and homology dimensions differ");
        ctx.check(th.bijective, "theta is not a bijection");
    }
}

template <class F>
void prop_hom_invariance(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    std::size_t base = derived_hom_dim(x, y);
    ctx.check(base == hom_k_dim(x, y), "derived hom differs from homotopy hom");
    DiffObject<F> xa = direct_sum(x, augment(ctx.field, ctx.n, 1 + ctx.small(1)));
    DiffObject<F> ya = direct_sum(y, augment(ctx.field, ctx.n, 1 + ctx.small(1)));
    ctx.check(derived_hom_dim(xa, y) == base, "free summand on the source changed derived hom");
    ctx.check(derived_hom_dim(x, ya) == base, "free summand on the target changed derived hom");
    DiffObject<F> xe = direct_sum(ctx.gen.conjugate_object(x), augment(ctx.field, ctx.n, 1));
    ctx.check(derived_hom_dim(xe, y) == base, "homotopy-equivalent source changed derived hom");
}

template <class F>
void prop_zero_tetrachotomy(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    ctx.check(zero_detection(x) == is_acyclic(x), "zero detection differs from acyclicity");
    ctx.check(zero_detection(augment(ctx.field, ctx.n, ctx.small(2))), "free object not zero in the derived category");
    ctx.check(zero_detection(DiffObject<F>::zero(ctx.field, ctx.n)), "zero object not detected");
}

template <class F>
void prop_compact_coproduct(PropCtx<F>& ctx) {
    DiffObject<F> x = ctx.object();
    DiffObject<F> y = ctx.gen.random_object();
    for (int i = 1; i < ctx.n; ++i) {
        DiffObject<F> gen_i = compact_generator(ctx.field, ctx.n, i);
        ctx.check(hom_k_dim(gen_i, direct_sum(x, y)) == hom_k_dim(gen_i, x) + hom_k_dim(gen_i, y),
                  "generator homs do not add over a sum");
    }
}

// ---- harness --------------------------------------------------------------

template <class F>
void prop_generator_soundness(PropCtx<F>& ctx) {
    std::vector<std::size_t> parts = ctx.gen.random_jordan_parts();
    DiffObject<F> x = ctx.gen.object_of_type(parts);
    ctx.check(x.type().parts == parts, "generated object has the wrong type");
    for (std::size_t p : parts) ctx.check(p >= 1 && p <= static_cast<std::size_t>(ctx.n), "part out of range");
    ctx.check(x.dim() <= ctx.max_dim, "generated object too large");

    DiffObject<F> y = ctx.gen.random_object();
    DiffMorphism<F> f = ctx.gen.random_morphism(x, y);  // constructor validates commutation
    ctx.check(f.mat() * x.eps() == y.eps() * f.mat(), "generated morphism does not commute");

    ShortExactSeq<F> ses = ctx.gen.random_invariant_ses(y);
    ctx.check(check_ses(ses.i, ses.p), "generated sequence is not exact");

    Matrix<F> e0 = ctx.gen.random_idempotent_matrix(x.dim());
    ctx.check(e0 * e0 == e0, "generated idempotent is not idempotent");
}

template <class F>
void prop_determinism(PropCtx<F>& ctx) {
    InstanceGen<F> a(ctx.field, ctx.n, ctx.max_dim, trial_stream(ctx.seed, ctx.property + "#replay", ctx.trial));
    InstanceGen<F> b(ctx.field, ctx.n, ctx.max_dim, trial_stream(ctx.seed, ctx.property + "#replay", ctx.trial));
    DiffObject<F> xa = a.random_object();
    DiffObject<F> xb = b.random_object();
    ctx.check(object_to_dfn(xa) == object_to_dfn(xb), "same stream produced different objects");
    DiffMorphism<F> fa = a.random_morphism(xa, xa);
    DiffMorphism<F> fb = b.random_morphism(xb, xb);
    ctx.check(matrix_lines(fa.mat()) == matrix_lines(fb.mat()), "same stream produced different morphisms");
}

// ---- registry and runner --------------------------------------------------

struct Property {
    const char* name;
    void (*gf)(PropCtx<GFp>&);
    void (*rat)(PropCtx<RatField>&);
};

#define DIFFN_PROPERTY(name, fn) \
    Property { name, &fn<GFp>, &fn<RatField> }

const std::vector<Property>& registry() {
    // kept sorted by name; the report preserves this order
    static const std::vector<Property> props = {
        DIFFN_PROPERTY("core.adjunction_naturality", prop_adjunction_naturality),
        DIFFN_PROPERTY("core.adjunction_roundtrip", prop_adjunction_roundtrip),
        DIFFN_PROPERTY("core.canonical_ses", prop_canonical_ses),
        DIFFN_PROPERTY("core.direct_sum_biproduct", prop_direct_sum_biproduct),
        DIFFN_PROPERTY("core.hom_basis", prop_hom_basis),
        DIFFN_PROPERTY("core.idempotent_split", prop_idempotent_split),
        DIFFN_PROPERTY("core.jordan_classification", prop_jordan_classification),
        DIFFN_PROPERTY("core.projective_characterization", prop_projective_characterization),
        DIFFN_PROPERTY("derived.compact_coproduct", prop_compact_coproduct),
        DIFFN_PROPERTY("derived.hom_invariance", prop_hom_invariance),
        DIFFN_PROPERTY("derived.homotopy_section", prop_homotopy_section),
        DIFFN_PROPERTY("derived.minimal_model", prop_minimal_model),
        DIFFN_PROPERTY("derived.qiso_two_routes", prop_qiso_two_routes),
        DIFFN_PROPERTY("derived.theta_bijection", prop_theta_bijection),
        DIFFN_PROPERTY("derived.two_of_three", prop_two_of_three),
        DIFFN_PROPERTY("derived.zero_tetrachotomy", prop_zero_tetrachotomy),
        DIFFN_PROPERTY("exactla.kernel_image_rank", prop_kernel_image_rank),
        DIFFN_PROPERTY("exactla.quotient_extension", prop_quotient_extension),
        DIFFN_PROPERTY("exactla.rerun_identical", prop_rerun_identical),
        DIFFN_PROPERTY("exactla.solve_consistency", prop_solve_consistency),
        DIFFN_PROPERTY("harness.determinism", prop_determinism),
        DIFFN_PROPERTY("harness.generator_soundness", prop_generator_soundness),
        DIFFN_PROPERTY("homotopy.acyclic_augmented", prop_acyclic_augmented),
        DIFFN_PROPERTY("homotopy.cone_triangle", prop_cone_triangle),
        DIFFN_PROPERTY("homotopy.factor_projective", prop_factor_projective),
        DIFFN_PROPERTY("homotopy.homk_contractible", prop_homk_contractible),
        DIFFN_PROPERTY("homotopy.homology_invariance", prop_homology_invariance),
        DIFFN_PROPERTY("homotopy.les_exactness", prop_les_exactness),
        DIFFN_PROPERTY("homotopy.shift_duality", prop_shift_duality),
    };
    return props;
}

#undef DIFFN_PROPERTY

template <class F>
void run_trial(const Property& prop, const GenConfig& cfg, std::size_t trial, PropertyResult& out) {
    F field = [&] {
        if constexpr (std::is_same_v<F, GFp>)
            return GFp(cfg.field);
        else
            return RatField();
    }();
    PropCtx<F> ctx(field, cfg, prop.name, trial);
    try {
        if constexpr (std::is_same_v<F, GFp>)
            prop.gf(ctx);
        else
            prop.rat(ctx);
    } catch (const CheckFailure& fail) {
        std::string dump;
        for (const auto& [label, text] : ctx.artifacts) {
            dump += "-- " + label + " --\n";
            dump += text;
        }
        out.failures.push_back({trial, fail.message, dump});
    } catch (const std::exception& err) {
        out.failures.push_back({trial, std::string("exception: ") + err.what(), ""});
    }
}

}  // namespace

std::vector<std::string> verify_property_names() {
    std::vector<std::string> names;
    for (const auto& p : registry()) names.emplace_back(p.name);
    return names;
}

VerifyReport run_verify(const GenConfig& cfg, const std::optional<std::string>& only) {
    if (cfg.trials < 1) throw InputError("trials must be at least 1");
    if (cfg.max_dim < 1) throw InputError("max-dim must be at least 1");
    if (cfg.n < 2) throw InputError("n must be at least 2");

    std::vector<const Property*> selected;
    for (const auto& p : registry())
        if (!only || *only == p.name) selected.push_back(&p);
    if (selected.empty()) throw InputError("unknown property: " + (only ? *only : std::string()));

    VerifyReport report;
    report.cfg = cfg;
    for (const Property* prop : selected) {
        PropertyResult res;
        res.name = prop->name;
        res.trials = cfg.trials;
        auto t0 = std::chrono::steady_clock::now();
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            if (cfg.field.kind == FieldSpec::Kind::Prime)
                run_trial<GFp>(*prop, cfg, t, res);
            else
                run_trial<RatField>(*prop, cfg, t, res);
        }
        res.wall_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(std::chrono::steady_clock::now() - t0)
                .count();
        report.results.push_back(std::move(res));
    }
    return report;
}

std::size_t VerifyReport::total_failures() const {
    std::size_t k = 0;
    for (const auto& r : results) k += r.failures.size();
    return k;
}

std::string VerifyReport::body() const {
    std::ostringstream out;
    out << "dfn-verify v1 seed=" << cfg.seed << " field=" << cfg.field.name() << " n=" << cfg.n
        << " max-dim=" << cfg.max_dim << " trials=" << cfg.trials << "\n";
    for (const auto& r : results) {
        out << "property " << r.name << " trials=" << r.trials << " failures=" << r.failures.size() << "\n";
        for (const auto& f : r.failures) {
            out << "failure property=" << r.name << " trial=" << f.trial << " message=" << f.message << "\n";
            std::istringstream lines(f.counterexample);
            std::string line;
            while (std::getline(lines, line)) out << "  | " << line << "\n";
        }
    }
    out << "total properties=" << results.size() << " failures=" << total_failures() << "\n";
    return out.str();
}

std::string VerifyReport::timings() const {
    std::ostringstream out;
    for (const auto& r : results) out << "timing " << r.name << " ms=" << r.wall_ms << "\n";
    return out.str();
}

}  // namespace diffn
