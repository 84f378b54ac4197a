#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffn/generators.hpp"
#include "diffn/linalg.hpp"

using namespace diffn;

TEST_CASE("field specs") {
    CHECK(FieldSpec::prime(2).name() == "2");
    CHECK(FieldSpec::rationals().name() == "Q");
    CHECK(FieldSpec::parse("97") == FieldSpec::prime(97));
    CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
    CHECK_THROWS_AS(FieldSpec::prime(4), InputError);
    CHECK_THROWS_AS(FieldSpec::prime(1), InputError);
    CHECK_THROWS_AS(FieldSpec::prime(std::uint64_t(1) << 31), InputError);
    CHECK_THROWS_AS(FieldSpec::parse("abc"), InputError);
}

TEST_CASE("GF(p) arithmetic") {
    GFp k(7);
    CHECK(k.add(5, 4) == 2);
    CHECK(k.sub(2, 5) == 4);
    CHECK(k.mul(3, 5) == 1);
    CHECK(k.inv(3) == 5);
    CHECK(k.neg(0) == 0);
    CHECK(k.from_int(-1) == 6);
    CHECK(k.parse("-2") == 5);
    CHECK(k.parse("100") == 2);
    CHECK_THROWS_AS(k.parse("1/2"), InputError);
    for (std::uint64_t a = 1; a < 7; ++a) CHECK(k.mul(a, k.inv(a)) == 1);
}

TEST_CASE("rational arithmetic stays canonical") {
    RatField q;
    CHECK(q.to_string(q.parse("2/4")) == "1/2");
    CHECK(q.to_string(q.parse("-6/4")) == "-3/2");
    CHECK(q.to_string(q.add(q.parse("1/3"), q.parse("1/6"))) == "1/2");
    CHECK(q.to_string(q.from_int(-3)) == "-3");
    CHECK_THROWS_AS(q.parse("1/0"), InputError);
    CHECK_THROWS_AS(q.parse("x"), InputError);
    CHECK_THROWS_AS(q.parse("1/2/3"), InputError);
}

TEST_CASE("rref on the stated examples") {
    RatField q;
    auto id3 = Matrix<RatField>::identity(q, 3);
    auto r = rref(id3);
    CHECK(r.mat == id3);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.rank == 3);

    auto z = Matrix<RatField>(q, 2, 4);
    auto rz = rref(z);
    CHECK(rz.mat == z);
    CHECK(rz.pivots.empty());
    CHECK(rz.rank == 0);

    GFp f2(2);
    auto m = Matrix<GFp>::from_rows(f2, {{1, 1}, {1, 1}});
    auto rm = rref(m);
    CHECK(rm.mat == Matrix<GFp>::from_rows(f2, {{1, 1}, {0, 0}}));
    CHECK(rm.pivots == std::vector<std::size_t>{0});
    CHECK(rm.rank == 1);
}

TEST_CASE("kernel and image of the shift block") {
    RatField q;
    auto j2 = Matrix<RatField>::from_rows(q, {{0, 0}, {1, 0}});
    auto ker = kernel_basis(j2);
    CHECK(ker.dim() == 1);
    CHECK(ker.basis == Matrix<RatField>::from_rows(q, {{0}, {1}}));
    auto im = image_basis(j2);
    CHECK(im.dim() == 1);
    CHECK(im.basis == Matrix<RatField>::from_rows(q, {{0}, {1}}));

    CHECK(kernel_basis(Matrix<RatField>::identity(q, 3)).dim() == 0);
    CHECK(kernel_basis(Matrix<RatField>(q, 4, 4)).dim() == 4);
    CHECK(image_basis(Matrix<RatField>::identity(q, 3)).dim() == 3);
    CHECK(image_basis(Matrix<RatField>(q, 4, 4)).dim() == 0);
}

TEST_CASE("solve_linear") {
    RatField q;
    auto id = Matrix<RatField>::identity(q, 2);
    auto b = Matrix<RatField>::from_rows(q, {{3}, {5}});
    auto s = solve_linear(id, b);
    REQUIRE(s.has_value());
    CHECK(*s == b);

    auto zero = Matrix<RatField>(q, 2, 2);
    CHECK_FALSE(solve_linear(zero, b).has_value());

    auto j2 = Matrix<RatField>::from_rows(q, {{0, 0}, {1, 0}});
    auto e2 = Matrix<RatField>::from_rows(q, {{0}, {1}});
    auto x = solve_linear(j2, e2);
    REQUIRE(x.has_value());
    CHECK(j2 * *x == e2);
}

TEST_CASE("quotient extension") {
    RatField q;
    Subspace<RatField> full{3, Matrix<RatField>::identity(q, 3)};
    Subspace<RatField> zero{3, Matrix<RatField>(q, 3, 0)};
    CHECK(quotient_extend(full, zero).dim == 3);
    CHECK(quotient_extend(full, full).dim == 0);

    Subspace<RatField> v{3, Matrix<RatField>::from_rows(q, {{1, 0}, {0, 0}, {0, 1}})};
    Subspace<RatField> w{3, Matrix<RatField>::from_rows(q, {{0}, {0}, {1}})};
    auto r = quotient_extend(v, w);
    CHECK(r.dim == 1);
    CHECK(r.reps == Matrix<RatField>::from_rows(q, {{1}, {0}, {0}}));

    Subspace<RatField> outside{3, Matrix<RatField>::from_rows(q, {{0}, {1}, {0}})};
    CHECK_THROWS_AS(quotient_extend(v, outside), InputError);
}

template <class F>
static void random_rank_checks(const F& field, std::uint64_t seed) {
    InstanceGen<F> gen(field, 2, 6, Xoshiro256(seed));
    for (int t = 0; t < 25; ++t) {
        std::size_t r = gen.rng().bounded(7), c = gen.rng().bounded(7);
        Matrix<F> m = gen.random_matrix(r, c);
        auto ker = kernel_basis(m);
        CHECK((m * ker.basis).is_zero());
        CHECK(rank(m) + ker.dim() == c);
        CHECK(image_basis(m).dim() == rank(m));
        auto rr = rref(m);
        CHECK(rref(rr.mat).mat == rr.mat);
        auto inv = inverse(m);
        if (r == c && rank(m) == r) {
            REQUIRE(inv.has_value());
            CHECK((m * *inv).is_identity());
        }
    }
}

TEST_CASE("randomised rank identities") {
    random_rank_checks(GFp(2), 11);
    random_rank_checks(GFp(97), 12);
    random_rank_checks(RatField(), 13);
}
