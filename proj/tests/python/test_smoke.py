"""Smoke tests for the Python bindings."""

from fractions import Fraction

import pytest

from diffn import InputError, Morphism, Object, property_names, run_verify


def test_object_basics():
    j2 = Object("Q", 2, [[0, 0], [1, 0]])
    assert j2.dim == 2
    assert j2.n == 2
    assert j2.field == "Q"
    assert j2.jordan_type() == [2]
    assert j2.is_projective()
    assert j2.is_acyclic()

    j1 = Object("5", 3, [[0]])
    assert j1.homology_dims() == [1, 1]
    assert not j1.is_acyclic()


def test_validation_errors():
    with pytest.raises(InputError):
        Object("Q", 2, [[1]])  # identity is not nilpotent
    with pytest.raises(InputError):
        Object("6", 2, [[0]])  # 6 is not prime
    with pytest.raises(InputError):
        Object("Q", 2, [[0, 0], [1, 0]]).hom_k_dim(Object("2", 2, [[0]]))


def test_fraction_entries_are_exact():
    x = Object("Q", 2, [[Fraction(0), 0], [Fraction(1, 2), 0]])
    assert x.eps()[1][0] == "1/2"
    assert x.jordan_type() == [2]


def test_morphisms_and_homotopy():
    j2 = Object("Q", 2, [[0, 0], [1, 0]])
    ident = Morphism.identity(j2)
    assert ident.is_null_homotopic()
    witness = ident.null_homotopy_witness()
    assert witness is not None

    j1 = Object("Q", 2, [[0]])
    id1 = Morphism.identity(j1)
    assert not id1.is_null_homotopic()
    assert id1.null_homotopy_witness() is None
    assert not id1.is_homotopic(Morphism.zero(j1, j1))
    assert id1.is_quasi_iso()


def test_cone_and_shift():
    j1 = Object("Q", 2, [[0]])
    c, u, v = Morphism.identity(j1).cone()
    assert c.dim == 2
    assert c.is_acyclic()
    assert u.dst.dim == 2 and v.src.dim == 2
    assert j1.shift().dim == 1
    assert Object.augmented("Q", 3, 1).dim == 3


def test_theta_and_minimal_model():
    x = Object("2", 3, [[0]]).direct_sum(Object.augmented("2", 3, 1))
    reduced, free_rank = x.minimal_model()
    assert free_rank == 1
    assert reduced.jordan_type() == [1]
    dim_k, dim_h = x.theta(1)
    assert dim_k == dim_h == 1
    assert Object.generator("2", 3, 2).jordan_type() == [2]


def test_dfn_round_trip():
    x = Object("97", 4, [[0, 0], [1, 0]])
    y = Object.from_dfn(x.to_dfn())
    assert y.eps() == x.eps()
    assert y.field == "97"


def test_run_verify_slice():
    assert "homotopy.cone_triangle" in property_names()
    report = run_verify(seed=3, field="5", n=2, max_dim=3, trials=2, only="homotopy.cone_triangle")
    assert report["ok"]
    assert "failures=0" in report["body"]
