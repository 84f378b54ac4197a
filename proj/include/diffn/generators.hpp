#pragma once

#include <algorithm>
#include <functional>
#include <type_traits>

#include "diffn/functors.hpp"
#include "diffn/rng.hpp"

namespace diffn {

// Seeded random instances: objects are sampled by Jordan type and conjugated
// by a random invertible matrix, so eps^n = 0 holds by construction and the
// sampled type is the object's isomorphism class.
template <class F>
class InstanceGen {
  public:
    InstanceGen(F field, int n, std::size_t max_dim, Xoshiro256 rng)
        : field_(std::move(field)), n_(n), max_dim_(max_dim), rng_(std::move(rng)) {}

    const F& field() const { return field_; }
    int n() const { return n_; }
    Xoshiro256& rng() { return rng_; }

    typename F::Elem random_scalar() {
        if constexpr (std::is_same_v<F, GFp>) {
            return rng_.bounded(field_.modulus());
        } else {
            // small numerators, occasional halves; keeps exact growth tame
            long num = static_cast<long>(rng_.bounded(7)) - 3;
            long den = rng_.bounded(4) == 0 ? 2 : 1;
            mpq_class v(num, den);
            v.canonicalize();
            return v;
        }
    }

    typename F::Elem random_nonzero_scalar() {
        for (int tries = 0; tries < 64; ++tries) {
            auto v = random_scalar();
            if (!field_.is_zero(v)) return v;
        }
        return field_.one();
    }

    Matrix<F> random_matrix(std::size_t r, std::size_t c) {
        Matrix<F> m(field_, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_scalar();
        return m;
    }

    Matrix<F> random_invertible(std::size_t d) {
        for (int tries = 0; tries < 256; ++tries) {
            Matrix<F> m = random_matrix(d, d);
            if (rank(m) == d) return m;
        }
        throw InternalError("failed to sample an invertible matrix");
    }

    // Random product of elementary matrices: always invertible, and over Q
    // the inverse stays integral, which keeps conjugated differentials from
    // growing huge denominators.
    Matrix<F> random_unimodular(std::size_t d) {
        Matrix<F> m = Matrix<F>::identity(field_, d);
        if (d < 2) return m;
        for (std::size_t step = 0; step < 3 * d; ++step) {
            std::size_t i = rng_.bounded(d), j = rng_.bounded(d);
            if (i == j) continue;
            typename F::Elem c = field_.from_int(static_cast<long long>(rng_.bounded(5)) - 2);
            for (std::size_t col = 0; col < d; ++col)
                m.at(j, col) = field_.add(m.at(j, col), field_.mul(c, m.at(i, col)));
            if (rng_.bounded(8) == 0)
                for (std::size_t col = 0; col < d; ++col) std::swap(m.at(i, col), m.at(j, col));
        }
        return m;
    }

    // Parts <= n summing to at most max_dim; the budget itself is uniform.
    std::vector<std::size_t> random_jordan_parts() {
        std::size_t budget = rng_.bounded(max_dim_ + 1);
        std::vector<std::size_t> parts;
        while (budget > 0) {
            std::size_t p = 1 + rng_.bounded(std::min<std::size_t>(static_cast<std::size_t>(n_), budget));
            parts.push_back(p);
            budget -= p;
        }
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return parts;
    }

    DiffObject<F> random_object() { return object_of_type(random_jordan_parts()); }

    DiffObject<F> object_of_type(const std::vector<std::size_t>& parts) {
        Matrix<F> canon = canonical_nilpotent(field_, parts);
        std::size_t d = canon.rows();
        Matrix<F> p = conjugator(d);
        auto pinv = inverse(p);
        return DiffObject<F>(field_, n_, p * canon * *pinv);
    }

    // Random field-coefficient combination of the Hom-space basis.
    DiffMorphism<F> random_morphism(const DiffObject<F>& x, const DiffObject<F>& y) {
        const auto& jx = x.jordan();
        const auto& jy = y.jordan();
        Matrix<F> sc(field_, y.dim(), x.dim());
        for (const auto& e : detail::hom_pair_entries(x, y)) {
            auto coef = random_scalar();
            if (field_.is_zero(coef)) continue;
            std::size_t a = jx.parts[e.alpha], b = jy.parts[e.beta];
            for (std::size_t t = 0; t < a && e.j + t <= b; ++t)
                sc.at(jy.offsets[e.beta] + e.j - 1 + t, jx.offsets[e.alpha] + t) =
                    field_.add(sc.at(jy.offsets[e.beta] + e.j - 1 + t, jx.offsets[e.alpha] + t), coef);
        }
        return DiffMorphism<F>(x, y, jy.from_canonical * sc * jx.to_canonical);
    }

    DiffMorphism<F> random_endomorphism(const DiffObject<F>& x) { return random_morphism(x, x); }

    // A conjugate of X by a random basis change; same Jordan type.
    DiffObject<F> conjugate_object(const DiffObject<F>& x) {
        Matrix<F> p = conjugator(x.dim());
        auto pinv = inverse(p);
        return DiffObject<F>(field_, n_, p * x.eps() * *pinv);
    }

    // A random projection e = e^2 of the plain space k^d.
    Matrix<F> random_idempotent_matrix(std::size_t d) {
        std::size_t target = rng_.bounded(d + 1);
        Subspace<F> im = image_basis(random_matrix(d, target));
        Subspace<F> full{d, Matrix<F>::identity(field_, d)};
        QuotientBasis<F> rest = quotient_extend(full, im);
        Matrix<F> u = hstack(im.basis, rest.reps);
        Matrix<F> diag(field_, d, d);
        for (std::size_t i = 0; i < im.dim(); ++i) diag.at(i, i) = field_.one();
        auto uinv = inverse(u);
        if (!uinv) throw InternalError("idempotent basis not invertible");
        return u * diag * *uinv;
    }

    // A random automorphism of T(X): invertible lower block Toeplitz.
    DiffMorphism<F> random_augmented_automorphism(const DiffObject<F>& aug) {
        auto block = aug.augmented_block();
        if (!block) throw InputError("expected an augmented object");
        std::size_t b = *block;
        std::size_t n = static_cast<std::size_t>(aug.n());
        std::vector<Matrix<F>> diag;
        diag.push_back(conjugator(b));
        for (std::size_t m = 1; m < n; ++m) diag.push_back(random_matrix(b, b));
        Matrix<F> t(field_, n * b, n * b);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) t.set_block(i * b, j * b, diag[i - j]);
        return DiffMorphism<F>(aug, aug, std::move(t));
    }

    // A random eps-invariant submodule A of B together with the quotient:
    // the sequence A -> B -> B/A. Generator count is biased geometrically.
    ShortExactSeq<F> random_invariant_ses(const DiffObject<F>& b) {
        std::size_t d = b.dim();
        std::size_t gens = 0;
        if (d > 0) {
            gens = 1;
            while (gens < d && rng_.bounded(2) == 0) ++gens;
        }
        SpanBuilder<F> span(field_, d);
        std::vector<Matrix<F>> cols;
        for (std::size_t g = 0; g < gens; ++g) {
            Matrix<F> v = random_matrix(d, 1);
            for (int t = 0; t < n_; ++t) {
                Matrix<F> w = b.eps_pow(static_cast<std::size_t>(t)) * v;
                if (span.add(w)) cols.push_back(std::move(w));
            }
        }
        Matrix<F> abasis(field_, d, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) abasis.set_block(0, j, cols[j]);

        // coordinates of eps_B restricted to the invariant span
        auto restricted = solve_all(abasis, b.eps() * abasis);
        if (!restricted) throw InternalError("submodule span is not invariant");
        DiffObject<F> a(field_, n_, *restricted);
        DiffMorphism<F> incl(a, b, abasis);

        Subspace<F> full{d, Matrix<F>::identity(field_, d)};
        QuotientBasis<F> rest = quotient_extend(full, Subspace<F>{d, abasis});
        Matrix<F> u = hstack(abasis, rest.reps);
        auto uinv = inverse(u);
        if (!uinv) throw InternalError("submodule completion not invertible");
        Matrix<F> proj = uinv->block(cols.size(), 0, rest.dim, d);
        DiffObject<F> c(field_, n_, proj * b.eps() * rest.reps);
        DiffMorphism<F> p(b, c, std::move(proj));
        return ShortExactSeq<F>(std::move(incl), std::move(p));
    }

  private:
    Matrix<F> conjugator(std::size_t d) {
        if constexpr (std::is_same_v<F, GFp>)
            return random_invertible(d);
        else
            return random_unimodular(d);
    }

    F field_;
    int n_;
    std::size_t max_dim_;
    Xoshiro256 rng_;
};

}  // namespace diffn
