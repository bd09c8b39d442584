from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinfill.errors import DimensionError, DomainError
from steinfill.surface import (
    HomologyClass,
    NamedCurve,
    Surface,
    intersection,
    inverse_transvection,
    standard_model,
    transvection,
)
from steinfill.symplectic import SpMatrix


def vectors(g: int):
    return st.lists(st.integers(-5, 5), min_size=2 * g, max_size=2 * g).map(HomologyClass)


def test_surface_euler():
    assert Surface(2).euler_characteristic == -2
    assert Surface(2, 1).euler_characteristic == -3
    assert Surface(0, 1).first_betti == 0
    assert Surface(1, 2).first_betti == 3
    with pytest.raises(DomainError):
        Surface(-1)


def test_basic_pairing():
    x1, y1 = HomologyClass.x(1, 2), HomologyClass.y(1, 2)
    assert intersection(x1, y1) == 1
    assert intersection(y1, x1) == -1
    assert intersection(x1, HomologyClass.x(2, 2)) == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        intersection(HomologyClass.x(1, 2), HomologyClass.x(1, 3))


@given(vectors(3), vectors(3))
def test_pairing_antisymmetric(u, v):
    assert intersection(u, v) == -intersection(v, u)
    assert intersection(u, u) == 0


@given(vectors(2), vectors(2), vectors(2))
def test_transvection_preserves_pairing(c, u, v):
    assert intersection(transvection(c, u), transvection(c, v)) == intersection(u, v)
    assert inverse_transvection(c, transvection(c, u)) == u


def test_transvection_example():
    # t_{x1} sends y1 to y1 + <y1, x1> x1 = y1 - x1
    x1, y1 = HomologyClass.x(1, 2), HomologyClass.y(1, 2)
    assert transvection(x1, y1) == y1 - x1
    assert transvection(x1, x1) == x1


def test_named_curve_split_is_normalised():
    c = NamedCurve("s", HomologyClass.zero(3), separating_split=2)
    assert c.separating_split == 1
    with pytest.raises(DomainError):
        NamedCurve("s", HomologyClass.x(1, 3), separating_split=1)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_standard_chain_meets_consecutively(g):
    model = standard_model(g)
    chain = [model[c].homology for c in model.chain]
    for i, u in enumerate(chain):
        for j, v in enumerate(chain):
            assert abs(intersection(u, v)) == (1 if abs(i - j) == 1 else 0)
    assert model[f"c{2 * g - 1}"].homology == model["b"].homology
    assert model["delta"].boundary_parallel and model["delta"].homology.is_zero


def test_standard_model_needs_genus_two():
    with pytest.raises(DomainError):
        standard_model(1)


@given(vectors(2))
def test_transvection_matrix_matches_vector_action(c):
    m = SpMatrix.transvection(c)
    assert m.preserves_form()
    for i in range(4):
        e = HomologyClass.basis(2, i)
        assert m.apply(e) == transvection(c, e)


@given(vectors(2), vectors(2), st.integers(-4, 4))
def test_group_laws(c, d, k):
    a, b = SpMatrix.transvection(c), SpMatrix.transvection(d)
    assert (a @ a.inverse()).is_identity()
    assert (a @ b).inverse() == b.inverse() @ a.inverse()
    assert a ** k @ a ** (-k) == SpMatrix.identity(4)


def test_non_symplectic_rejected():
    with pytest.raises(DomainError):
        SpMatrix(((2, 0), (0, 1)))
