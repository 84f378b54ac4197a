#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "diffn/linalg.hpp"

namespace diffn {

// Multiset of nilpotent block sizes, sorted descending. A complete
// isomorphism invariant for objects over a field.
struct JordanType {
    std::vector<std::size_t> parts;

    std::size_t total() const {
        std::size_t s = 0;
        for (std::size_t p : parts) s += p;
        return s;
    }
    bool operator==(const JordanType&) const = default;

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + "}";
    }
};

// Chain basis of a nilpotent endomorphism: eps * from_canonical ==
// from_canonical * canonical, where canonical is block-diagonal with
// lower-shift blocks of the given part sizes (chain-major layout: chain c
// occupies columns [offsets[c], offsets[c] + parts[c]), column offsets[c]+t
// holding eps^t applied to the chain head).
template <class F>
struct JordanData {
    std::vector<std::size_t> parts;  // descending
    std::vector<std::size_t> offsets;
    Matrix<F> canonical;
    Matrix<F> from_canonical;  // P
    Matrix<F> to_canonical;    // P^{-1}
};

template <class F>
Matrix<F> canonical_nilpotent(const F& field, const std::vector<std::size_t>& parts) {
    std::size_t d = 0;
    for (std::size_t p : parts) d += p;
    Matrix<F> j(field, d, d);
    std::size_t off = 0;
    for (std::size_t p : parts) {
        for (std::size_t t = 0; t + 1 < p; ++t) j.at(off + t + 1, off + t) = field.one();
        off += p;
    }
    return j;
}

template <class F>
class DiffObject;

// T(X) for X of dimension d: the n-fold sum with the block lower shift.
template <class F>
DiffObject<F> make_augmented_object(const F& field, int n, std::size_t d);

// An object of the category: a space of dimension d with a nilpotent
// endomorphism eps satisfying eps^n = 0. Values are immutable and cheap to
// copy; derived data (powers, Jordan chains) is shared behind the handle.
template <class F>
class DiffObject {
  public:
    using field_type = F;

    DiffObject(F field, int n, Matrix<F> eps) : DiffObject(std::move(field), n, std::move(eps), std::nullopt) {}

    static DiffObject zero(const F& field, int n) { return DiffObject(field, n, Matrix<F>(field, 0, 0)); }

    const F& field() const { return impl_->field; }
    int n() const { return impl_->n; }
    std::size_t dim() const { return impl_->eps.rows(); }
    const Matrix<F>& eps() const { return impl_->eps; }
    const Matrix<F>& eps_pow(std::size_t k) const {
        if (k >= impl_->powers.size()) return impl_->powers.back();  // eps^n = 0 onward
        return impl_->powers[k];
    }

    // Block size metadata for objects built by the augmenting functor; other
    // objects do not claim augmented shape even when isomorphic to one.
    std::optional<std::size_t> augmented_block() const { return impl_->aug_block; }

    // Jordan type from the rank sequence r_k = rank(eps^k): the number of
    // blocks of size >= k is r_{k-1} - r_k.
    const JordanType& type() const {
        std::call_once(impl_->type_once, [&] {
            std::vector<std::size_t> ranks;
            for (int k = 0; k <= impl_->n; ++k) ranks.push_back(rank(eps_pow(static_cast<std::size_t>(k))));
            std::vector<std::size_t> ge(static_cast<std::size_t>(impl_->n) + 2, 0);
            for (int k = 1; k <= impl_->n; ++k)
                ge[static_cast<std::size_t>(k)] = ranks[static_cast<std::size_t>(k - 1)] - ranks[static_cast<std::size_t>(k)];
            JordanType t;
            for (int k = impl_->n; k >= 1; --k) {
                std::size_t exactly_k = ge[static_cast<std::size_t>(k)] - ge[static_cast<std::size_t>(k) + 1];
                for (std::size_t i = 0; i < exactly_k; ++i) t.parts.push_back(static_cast<std::size_t>(k));
            }
            if (t.total() != dim()) throw InternalError("jordan type does not sum to dim");
            impl_->type = std::make_unique<JordanType>(std::move(t));
        });
        return *impl_->type;
    }

    const JordanData<F>& jordan() const {
        std::call_once(impl_->jordan_once, [&] { impl_->jordan = std::make_unique<JordanData<F>>(compute_jordan()); });
        return *impl_->jordan;
    }

    // Structural equality (same field, n and differential).
    friend bool operator==(const DiffObject& a, const DiffObject& b) {
        return a.impl_ == b.impl_ || (a.field() == b.field() && a.n() == b.n() && a.eps() == b.eps());
    }

  private:
    friend DiffObject<F> make_augmented_object<F>(const F& field, int n, std::size_t d);

    struct Impl {
        Impl(F f, int deg, Matrix<F> e, std::optional<std::size_t> aug)
            : field(std::move(f)), n(deg), eps(std::move(e)), aug_block(aug) {}

        F field;
        int n;
        Matrix<F> eps;
        std::vector<Matrix<F>> powers;  // eps^0 .. eps^n
        std::optional<std::size_t> aug_block;
        mutable std::once_flag type_once;
        mutable std::unique_ptr<JordanType> type;
        mutable std::once_flag jordan_once;
        mutable std::unique_ptr<JordanData<F>> jordan;
    };

    DiffObject(F field, int n, Matrix<F> eps, std::optional<std::size_t> aug_block) {
        if (n < 2) throw InputError("nilpotency degree must be at least 2");
        if (eps.rows() != eps.cols()) throw InputError("not square");
        auto impl = std::make_shared<Impl>(std::move(field), n, std::move(eps), aug_block);
        impl->powers.push_back(Matrix<F>::identity(impl->field, impl->eps.rows()));
        for (int k = 1; k <= n; ++k) impl->powers.push_back(impl->powers.back() * impl->eps);
        if (!impl->powers[static_cast<std::size_t>(n)].is_zero()) throw InputError("nilpotency violated");
        impl_ = std::move(impl);
    }

    JordanData<F> compute_jordan() const {
        const F& k = field();
        const std::size_t d = dim();
        // nilpotency index m: least power that vanishes
        std::size_t m = 0;
        while (m <= static_cast<std::size_t>(n()) && !eps_pow(m).is_zero()) ++m;
        std::vector<Subspace<F>> kers;  // kers[i] = Ker eps^i, i = 0..m
        for (std::size_t i = 0; i <= m; ++i) kers.push_back(kernel_basis(eps_pow(i)));

        // Chain heads, longest first. At level l the span of Ker eps^{l-1}
        // together with eps^{len-l} applied to longer heads is extended to
        // Ker eps^l; each new vector heads a chain of length l.
        std::vector<std::pair<Matrix<F>, std::size_t>> heads;  // (head, length)
        for (std::size_t l = m; l >= 1; --l) {
            SpanBuilder<F> span(k, d);
            for (std::size_t j = 0; j < kers[l - 1].dim(); ++j) span.add(kers[l - 1].basis.col(j));
            for (const auto& [h, len] : heads)
                if (len > l) span.add(eps_pow(len - l) * h);
            for (std::size_t j = 0; j < kers[l].dim(); ++j) {
                Matrix<F> v = kers[l].basis.col(j);
                if (span.add(v)) heads.emplace_back(std::move(v), l);
            }
        }

        JordanData<F> jd{{}, {}, Matrix<F>(k, d, d), Matrix<F>(k, d, d), Matrix<F>(k, d, d)};
        std::size_t off = 0;
        for (const auto& [h, len] : heads) {
            jd.parts.push_back(len);
            jd.offsets.push_back(off);
            for (std::size_t t = 0; t < len; ++t) jd.from_canonical.set_block(0, off + t, eps_pow(t) * h);
            off += len;
        }
        if (off != d) throw InternalError("jordan chains do not span");
        jd.canonical = canonical_nilpotent(k, jd.parts);
        auto inv = inverse(jd.from_canonical);
        if (!inv) throw InternalError("jordan chain matrix is singular");
        jd.to_canonical = std::move(*inv);
        if (!(eps() * jd.from_canonical == jd.from_canonical * jd.canonical))
            throw InternalError("jordan basis does not conjugate to canonical form");
        if (!(JordanType{jd.parts} == type())) throw InternalError("jordan chains disagree with rank sequence");
        return jd;
    }

    std::shared_ptr<const Impl> impl_;
};

template <class F>
DiffObject<F> make_augmented_object(const F& field, int n, std::size_t d) {
    Matrix<F> eps(field, static_cast<std::size_t>(n) * d, static_cast<std::size_t>(n) * d);
    Matrix<F> id = Matrix<F>::identity(field, d);
    for (int b = 0; b + 1 < n; ++b) eps.set_block(static_cast<std::size_t>(b + 1) * d, static_cast<std::size_t>(b) * d, id);
    return DiffObject<F>(field, n, std::move(eps), d);
}

// A morphism f: X -> Y, i.e. a dim(Y) x dim(X) matrix with
// f eps_X = eps_Y f. Validated at construction.
template <class F>
class DiffMorphism {
  public:
    using field_type = F;

    DiffMorphism(DiffObject<F> src, DiffObject<F> dst, Matrix<F> mat)
        : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
        if (!(src_.field() == dst_.field())) throw InputError("morphism endpoints over different fields");
        if (src_.n() != dst_.n()) throw InputError("morphism endpoints with different nilpotency degree");
        if (mat_.rows() != dst_.dim() || mat_.cols() != src_.dim()) throw InputError("morphism shape mismatch");
        if (!(mat_ * src_.eps() == dst_.eps() * mat_)) throw InputError("morphism does not commute with differentials");
    }

    static DiffMorphism identity(const DiffObject<F>& x) {
        return DiffMorphism(x, x, Matrix<F>::identity(x.field(), x.dim()));
    }
    static DiffMorphism zero(const DiffObject<F>& src, const DiffObject<F>& dst) {
        return DiffMorphism(src, dst, Matrix<F>(src.field(), dst.dim(), src.dim()));
    }

    const DiffObject<F>& src() const { return src_; }
    const DiffObject<F>& dst() const { return dst_; }
    const Matrix<F>& mat() const { return mat_; }

    bool is_zero() const { return mat_.is_zero(); }

    bool is_invertible() const { return src_.dim() == dst_.dim() && rank(mat_) == src_.dim(); }

    DiffMorphism inverse_morphism() const {
        auto inv = inverse(mat_);
        if (!inv) throw InputError("morphism is not invertible");
        return DiffMorphism(dst_, src_, std::move(*inv));
    }

    // g * f = composition g after f
    friend DiffMorphism operator*(const DiffMorphism& g, const DiffMorphism& f) {
        if (!(g.src_ == f.dst_)) throw InputError("morphisms are not composable");
        return DiffMorphism(f.src_, g.dst_, g.mat_ * f.mat_);
    }

    friend DiffMorphism operator+(const DiffMorphism& a, const DiffMorphism& b) {
        a.require_parallel(b);
        return DiffMorphism(a.src_, a.dst_, a.mat_ + b.mat_);
    }
    friend DiffMorphism operator-(const DiffMorphism& a, const DiffMorphism& b) {
        a.require_parallel(b);
        return DiffMorphism(a.src_, a.dst_, a.mat_ - b.mat_);
    }

    friend bool operator==(const DiffMorphism& a, const DiffMorphism& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.mat_ == b.mat_;
    }

  private:
    void require_parallel(const DiffMorphism& o) const {
        if (!(src_ == o.src_) || !(dst_ == o.dst_)) throw InputError("morphisms have different endpoints");
    }

    DiffObject<F> src_;
    DiffObject<F> dst_;
    Matrix<F> mat_;
};

// Is (i, p) exact as plain linear maps: p i = 0, i injective, p surjective,
// rank i + rank p = dim of the middle object.
template <class F>
bool check_ses(const DiffMorphism<F>& i, const DiffMorphism<F>& p) {
    if (!(i.dst() == p.src())) throw InputError("sequence maps are not composable");
    if (!(p * i).is_zero()) return false;
    if (rank(i.mat()) != i.src().dim()) return false;
    if (rank(p.mat()) != p.dst().dim()) return false;
    return i.src().dim() + p.dst().dim() == i.dst().dim();
}

template <class F>
struct ShortExactSeq {
    DiffMorphism<F> i;  // A -> B
    DiffMorphism<F> p;  // B -> C

    ShortExactSeq(DiffMorphism<F> i_, DiffMorphism<F> p_) : i(std::move(i_)), p(std::move(p_)) {
        if (!check_ses(i, p)) throw InputError("sequence is not short exact");
    }
};

}  // namespace diffn
