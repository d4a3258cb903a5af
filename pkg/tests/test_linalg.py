from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gnsys import linalg
from oracles import sympy_charpoly


def square(n_min=1, n_max=4, lo=-6, hi=6):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(square())
def test_det_matches_sympy(rows):
    assert linalg.det(linalg.as_matrix(rows)) == sympy.Matrix(rows).det()


def test_det_of_fraction_matrix():
    A = ((Fraction(1, 2), 1), (3, Fraction(2, 3)))
    assert linalg.det(A) == Fraction(1, 3) - 3


@given(square())
def test_charpoly_matches_sympy(rows):
    assert linalg.charpoly(linalg.as_matrix(rows)) == sympy_charpoly(rows)


@given(square())
def test_inverse_is_two_sided(rows):
    A = linalg.as_matrix(rows)
    if linalg.det(A) == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(A)
        return
    inv = linalg.inverse(A)
    n = len(A)
    assert linalg.mat_mul(A, inv) == linalg.identity(n)
    assert linalg.mat_mul(inv, A) == linalg.identity(n)


def test_integer_inverse_rejects_non_unimodular():
    assert linalg.integer_inverse(((1, 1), (0, 1))) == ((1, -1), (0, 1))
    with pytest.raises(ValueError):
        linalg.integer_inverse(((2, 0), (0, 1)))


@settings(max_examples=200)
@given(square(lo=-9, hi=9))
def test_smith_normal_form(rows):
    A = linalg.as_matrix(rows)
    U, diag, V = linalg.smith_normal_form(A)
    n = len(A)
    assert abs(linalg.det(U)) == 1 and abs(linalg.det(V)) == 1
    D = linalg.mat_mul(linalg.mat_mul(U, A), V)
    assert D == tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n))
    assert all(s >= 0 for s in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    expected = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    assert sorted(abs(int(expected[i, i])) for i in range(n)) == sorted(diag)


def test_inf_norm():
    assert linalg.inf_norm(((1, -2), (Fraction(-1, 2), 0))) == 3
