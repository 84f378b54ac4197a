#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace diffn {

// Bad user input (malformed files, violated preconditions). CLI exit code 2.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A consistency check that can only fail on a library bug. CLI exit code 3.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

bool is_prime_u64(std::uint64_t v);

// Runtime description of the coefficient field: GF(p) or the rationals.
struct FieldSpec {
    enum class Kind { Prime, Rationals };

    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
    static FieldSpec prime(std::uint64_t p);

    // "Q" or the decimal modulus, as used in DFN-1 headers.
    std::string name() const;
    static FieldSpec parse(const std::string& text);

    bool operator==(const FieldSpec&) const = default;
};

// GF(p). Elements are canonical representatives in [0, p); inverses by
// extended Euclid. p is capped below 2^31 so products fit in uint64.
class GFp {
  public:
    using Elem = std::uint64_t;

    explicit GFp(std::uint64_t p);
    explicit GFp(const FieldSpec& spec);

    std::uint64_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem inv(Elem a) const;
    bool is_zero(Elem a) const { return a == 0; }
    bool equal(Elem a, Elem b) const { return a == b; }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }
    std::string to_string(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& text) const;

    bool operator==(const GFp&) const = default;

  private:
    std::uint64_t p_;
};

// The rationals, backed by GMP. mpq_class keeps values in lowest terms with
// positive denominator, which is exactly the canonical form we need.
class RatField {
  public:
    using Elem = mpq_class;

    RatField() = default;
    explicit RatField(const FieldSpec& spec);

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const;
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
    std::string to_string(const Elem& a) const { return a.get_str(); }
    Elem parse(const std::string& text) const;

    bool operator==(const RatField&) const = default;
};

}  // namespace diffn
