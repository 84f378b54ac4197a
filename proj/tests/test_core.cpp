#include <doctest.h>

#include "diffn/generators.hpp"
#include "support/oracles.hpp"

using namespace diffn;

namespace {
const RatField Q;

DiffObject<RatField> block(int n, std::size_t size) {
    return DiffObject<RatField>(Q, n, canonical_nilpotent(Q, {size}));
}
}  // namespace

TEST_CASE("object construction and validation") {
    auto j2 = DiffObject<RatField>(Q, 2, Matrix<RatField>::from_rows(Q, {{0, 0}, {1, 0}}));
    CHECK(j2.dim() == 2);
    CHECK_THROWS_WITH_AS(DiffObject<RatField>(Q, 2, Matrix<RatField>::identity(Q, 1)), "nilpotency violated",
                         InputError);
    CHECK_THROWS_WITH_AS(DiffObject<RatField>(Q, 2, Matrix<RatField>(Q, 2, 3)), "not square", InputError);
    GFp f2(2);
    CHECK_NOTHROW(DiffObject<GFp>(f2, 3, Matrix<GFp>(f2, 2, 2)));
    CHECK_THROWS_AS(DiffObject<RatField>(Q, 1, Matrix<RatField>(Q, 1, 1)), InputError);
}

TEST_CASE("morphism validation") {
    auto j2 = block(2, 2);
    auto j1 = block(2, 1);
    CHECK_NOTHROW(DiffMorphism<RatField>::identity(j2));
    // the identity-shaped map J1 -> J1 always commutes
    CHECK_NOTHROW(DiffMorphism<RatField>(j1, j1, Matrix<RatField>::from_rows(Q, {{5}})));
    // a non-commuting map must be rejected
    CHECK_THROWS_AS(DiffMorphism<RatField>(j2, j2, Matrix<RatField>::from_rows(Q, {{0, 1}, {0, 0}})), InputError);
    // endpoints with different degrees must be rejected
    CHECK_THROWS_AS(DiffMorphism<RatField>(j1, block(3, 1), Matrix<RatField>(Q, 1, 1)), InputError);
}

TEST_CASE("hom space bases against the dense solve") {
    auto j1 = block(3, 1);
    CHECK(hom_space_basis(j1, j1).size() == 1);

    auto j2 = block(2, 2);
    auto basis = hom_space_basis(j2, j2);
    CHECK(basis.size() == 2);
    CHECK(basis.size() == oracle::dense_hom_dim(j2, j2));
    // span contains the identity and the differential
    Matrix<RatField> stacked(Q, 4, 2);
    stacked.set_block(0, 0, basis[0].mat().vec());
    stacked.set_block(0, 1, basis[1].mat().vec());
    CHECK(span_contains(stacked, Matrix<RatField>::identity(Q, 2).vec()));
    CHECK(span_contains(stacked, j2.eps().vec()));

    auto j2_3 = block(3, 2);
    auto j3 = block(3, 3);
    CHECK(hom_space_basis(j2_3, j3).size() == 2);
    CHECK(oracle::dense_hom_dim(j2_3, j3) == 2);

    CHECK_THROWS_AS(hom_space_basis(j1, j2), InputError);  // n mismatch
}

TEST_CASE("augmenting functor") {
    auto t1 = augment(Q, 2, 1);
    CHECK(t1.eps() == Matrix<RatField>::from_rows(Q, {{0, 0}, {1, 0}}));
    auto t13 = augment(Q, 3, 1);
    CHECK(t13.eps() == Matrix<RatField>::from_rows(Q, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
    CHECK(augment(Q, 3, 0).dim() == 0);
    CHECK(t13.augmented_block() == 1);

    auto tid = augment_morphism(Q, 2, Matrix<RatField>::identity(Q, 2));
    CHECK(tid.mat().is_identity());
    CHECK(augment_morphism(Q, 2, Matrix<RatField>(Q, 2, 2)).is_zero());
    auto t2 = augment_morphism(Q, 2, Matrix<RatField>::from_rows(Q, {{2}}));
    CHECK(t2.mat() == Matrix<RatField>::from_rows(Q, {{2, 0}, {0, 2}}));
}

TEST_CASE("adjunction maps") {
    auto j2 = block(2, 2);
    auto f = Matrix<RatField>::from_rows(Q, {{0, 1}});
    auto phi = adjoint_phi(j2, f);
    CHECK(phi.mat() == Matrix<RatField>::identity(Q, 2));
    CHECK(adjoint_phi_inv(phi) == f);
    CHECK(adjoint_phi(j2, Matrix<RatField>(Q, 1, 2)).is_zero());

    // psi reads the first block column; on the canonical projection row
    // (1, eps) it returns the identity
    auto p_row = ses_proj(block(2, 1)).p;  // (1, eps) : T(J1) -> J1
    CHECK(adjoint_psi(p_row) == Matrix<RatField>::identity(Q, 1));
    CHECK(adjoint_psi_inv(p_row.dst(), adjoint_psi(p_row)) == p_row);

    CHECK_THROWS_AS(adjoint_phi_inv(DiffMorphism<RatField>::identity(j2)), InputError);
    CHECK_THROWS_AS(adjoint_psi(DiffMorphism<RatField>::identity(j2)), InputError);
}

TEST_CASE("canonical short exact sequences") {
    auto j1 = block(2, 1);
    auto sp = ses_proj(j1);
    CHECK(sp.i.mat() == Matrix<RatField>::from_rows(Q, {{0}, {1}}));
    CHECK(sp.p.mat() == Matrix<RatField>::from_rows(Q, {{1, 0}}));
    auto si = ses_inj(j1);
    CHECK(si.i.mat() == Matrix<RatField>::from_rows(Q, {{0}, {1}}));
    CHECK(si.p.mat() == Matrix<RatField>::from_rows(Q, {{1, 0}}));

    auto zero = DiffObject<RatField>::zero(Q, 3);
    CHECK(ses_proj(zero).i.dst().dim() == 0);
    CHECK(ses_inj(zero).p.dst().dim() == 0);

    auto j2 = block(3, 2);
    CHECK(check_ses(ses_proj(j2).i, ses_proj(j2).p));
    CHECK(check_ses(ses_inj(j2).i, ses_inj(j2).p));
    CHECK(ses_proj(j2).i.src().dim() == 4);
}

TEST_CASE("check_ses rejects non-exact pairs") {
    auto j1 = block(2, 1);
    auto zero = DiffObject<RatField>::zero(Q, 2);
    CHECK_FALSE(check_ses(DiffMorphism<RatField>::zero(zero, j1), DiffMorphism<RatField>::zero(j1, zero)));
    CHECK_FALSE(check_ses(DiffMorphism<RatField>::identity(j1), DiffMorphism<RatField>::zero(j1, j1)));
    // a split pair through the zero object is exact
    CHECK(check_ses(DiffMorphism<RatField>::identity(j1), DiffMorphism<RatField>::zero(j1, zero)));
}

TEST_CASE("jordan types") {
    CHECK(jordan_type(augment(Q, 3, 1)).parts == std::vector<std::size_t>{3});
    auto flat = DiffObject<RatField>(Q, 2, Matrix<RatField>(Q, 4, 4));
    CHECK(jordan_type(flat).parts == std::vector<std::size_t>{1, 1, 1, 1});
    auto s = direct_sum(block(3, 2), block(3, 1));
    CHECK(jordan_type(s).parts == std::vector<std::size_t>{2, 1});
    CHECK(jordan_type(direct_sum(block(4, 2), block(4, 3))).parts == std::vector<std::size_t>{3, 2});
}

TEST_CASE("projectivity") {
    CHECK(is_projective(augment(Q, 2, 2)));
    auto w = projective_witness(augment(Q, 2, 2));
    REQUIRE(w.has_value());
    CHECK(w->is_invertible());
    CHECK_FALSE(is_projective(block(2, 1)));
    CHECK(is_projective(DiffObject<RatField>::zero(Q, 2)));
}

TEST_CASE("idempotent splitting on a worked example") {
    // n = 2, X two-dimensional, e = [[e0, 0], [a, e0]] with a e0 + e0 a = a
    auto e0 = Matrix<RatField>::from_rows(Q, {{1, 0}, {0, 0}});
    auto a = Matrix<RatField>::from_rows(Q, {{0, 1}, {0, 0}});
    CHECK(e0 * a + a * e0 == a);
    CHECK((e0 * a * e0).is_zero());
    auto tx = augment(Q, 2, 2);
    Matrix<RatField> emat(Q, 4, 4);
    emat.set_block(0, 0, e0);
    emat.set_block(2, 2, e0);
    emat.set_block(2, 0, a);
    DiffMorphism<RatField> e(tx, tx, emat);
    CHECK(e * e == e);

    auto g = split_idempotent(e);
    CHECK(g.is_invertible());
    auto d = g.mat() * e.mat() * g.inverse_morphism().mat();
    CHECK(d.block(0, 0, 2, 2) == e0);
    CHECK(d.block(2, 2, 2, 2) == e0);
    CHECK(d.block(2, 0, 2, 2).is_zero());
    CHECK(d.block(0, 2, 2, 2).is_zero());

    // already block diagonal: identity conjugator
    CHECK(split_idempotent(augment_morphism(Q, 2, e0)).mat().is_identity());
    CHECK(split_idempotent(DiffMorphism<RatField>::identity(tx)).mat().is_identity());

    // the differential itself commutes but squares to zero, not itself
    CHECK_THROWS_WITH_AS(split_idempotent(DiffMorphism<RatField>(tx, tx, tx.eps())), "not idempotent", InputError);
}

TEST_CASE("direct sums and biproduct maps") {
    auto x = block(2, 2);
    auto zero = DiffObject<RatField>::zero(Q, 2);
    CHECK(direct_sum(x, zero).eps() == x.eps());
    auto two = direct_sum(block(2, 1), block(2, 1));
    CHECK(two.dim() == 2);
    CHECK(two.eps().is_zero());
    auto i1 = sum_inj1(x, two), p1 = sum_proj1(x, two);
    CHECK((p1 * i1).mat().is_identity());
}

TEST_CASE("isomorphism witnesses follow the jordan type") {
    InstanceGen<RatField> gen(Q, 3, 6, Xoshiro256(99));
    auto x = gen.object_of_type({3, 1});
    auto y = gen.object_of_type({3, 1});
    auto iso = iso_witness(x, y);
    REQUIRE(iso.has_value());
    CHECK(iso->is_invertible());
    auto z = gen.object_of_type({2, 2});
    CHECK_FALSE(iso_witness(x, z).has_value());
}
