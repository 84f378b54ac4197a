#include "diffn/fields.hpp"

namespace diffn {

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::uint64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p >= (std::uint64_t(1) << 31))
        throw InputError("field modulus too large (must be below 2^31): " + std::to_string(p));
    if (!is_prime_u64(p)) throw InputError("field modulus is not prime: " + std::to_string(p));
    return FieldSpec{Kind::Prime, p};
}

std::string FieldSpec::name() const {
    return kind == Kind::Rationals ? "Q" : std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q" || text == "q") return rationals();
    std::uint64_t v = 0;
    if (text.empty()) throw InputError("empty field name");
    for (char c : text) {
        if (c < '0' || c > '9') throw InputError("bad field name: " + text);
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v >= (std::uint64_t(1) << 32)) throw InputError("field modulus too large: " + text);
    }
    return prime(v);
}

GFp::GFp(std::uint64_t p) : p_(FieldSpec::prime(p).p) {}

GFp::GFp(const FieldSpec& spec) : p_(spec.p) {
    if (spec.kind != FieldSpec::Kind::Prime) throw InputError("expected a prime field spec");
}

GFp::Elem GFp::inv(Elem a) const {
    if (a == 0) throw InternalError("division by zero in GF(p)");
    // extended Euclid on (a, p)
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(p_), new_r = static_cast<long long>(a);
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw InternalError("non-invertible element in GF(p)");
    if (t < 0) t += static_cast<long long>(p_);
    return static_cast<Elem>(t);
}

GFp::Elem GFp::parse(const std::string& text) const {
    if (text.empty()) throw InputError("empty matrix entry");
    std::size_t i = 0;
    bool negate = false;
    if (text[0] == '-' || text[0] == '+') {
        negate = text[0] == '-';
        i = 1;
        if (text.size() == 1) throw InputError("bad matrix entry: " + text);
    }
    Elem v = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') throw InputError("bad GF(p) entry: " + text);
        v = (v * 10 + static_cast<Elem>(c - '0')) % p_;
    }
    return negate ? neg(v) : v;
}

RatField::RatField(const FieldSpec& spec) {
    if (spec.kind != FieldSpec::Kind::Rationals) throw InputError("expected the rational field spec");
}

RatField::Elem RatField::inv(const Elem& a) const {
    if (sgn(a) == 0) throw InternalError("division by zero in Q");
    return 1 / a;
}

RatField::Elem RatField::parse(const std::string& text) const {
    if (text.empty()) throw InputError("empty matrix entry");
    for (char c : text)
        if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
            throw InputError("bad rational entry: " + text);
    auto slash = text.find('/');
    if (slash != std::string::npos &&
        (slash == 0 || slash + 1 == text.size() || text.find('/', slash + 1) != std::string::npos))
        throw InputError("bad rational entry: " + text);
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw InputError("bad rational entry: " + text);
    if (sgn(v.get_den()) == 0) throw InputError("zero denominator: " + text);
    v.canonicalize();
    return v;
}

}  // namespace diffn
