from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnsys.domain import (
    BoxDomain,
    DigitSet,
    Tristate,
    check_cone_conditions,
    check_zero_interior,
    digit_set,
    domain_contains,
    domain_from_residues,
    neighbour_set,
    z_set,
)
from gnsys.errors import InvalidDomain, MissingZeroDigit, NotACompleteResidueSystem, ZeroDivisor
from gnsys.fixtures import gaussian, integers, skew_box, split
from gnsys.opoly import OPoly
from gnsys.order import canonical_residue, inverse_apply, norm
from strategies import ORDERS, elements, nonzero_divisors

Z, ZI, ZZ = integers(), gaussian(), split(2)
half = Fraction(1, 2)


def coords(ds):
    return sorted(d.coords for d in ds)


def test_box_membership_examples():
    F = BoxDomain.unit_cube(Z)
    assert domain_contains(F, (0,)) and not domain_contains(F, (1,))
    assert domain_contains(skew_box(ZZ), (half, half))
    assert skew_box(ZZ).u_coords((half, half)) == (half, 0)
    assert not domain_contains(BoxDomain.symmetric(ZZ), (half, 0))
    assert domain_contains(BoxDomain.symmetric(ZZ), (-half, 0))


def test_box_validation():
    with pytest.raises(InvalidDomain):
        BoxDomain(ZZ, ((2, 0), (0, 1)), (0, 0))
    with pytest.raises(InvalidDomain):
        BoxDomain(ZZ, ((1, 0), (0, 1)), (Fraction(-1), 0))
    with pytest.raises(InvalidDomain):
        BoxDomain(ZZ, ((1, 0), (0, 1)), (Fraction(1, 3), 0))


def test_digit_set_integers():
    assert coords(digit_set(BoxDomain.unit_cube(Z), Z(5))) == [(i,) for i in range(5)]
    assert coords(digit_set(BoxDomain.symmetric(Z), Z(5))) == [(i,) for i in range(-2, 3)]
    assert coords(digit_set(BoxDomain.unit_cube(Z), Z(-5))) == [(i,) for i in range(-4, 1)]
    with pytest.raises(ZeroDivisor):
        digit_set(BoxDomain.unit_cube(ZZ), ZZ(1, 0))


def test_skew_domain_digits():
    # theta = p(2) for p = (x^2, x^2): theta = (4, 4)
    theta = ZZ(4, 4)
    got = coords(digit_set(skew_box(ZZ), theta))
    expected = sorted(
        (x, y)
        for x in range(4)
        for y in range(-8, 12)
        if -half <= Fraction(y, 4) - Fraction(x, 4) < half
    )
    assert got == expected and len(got) == 16


def test_neighbour_sets():
    assert coords(neighbour_set(BoxDomain.unit_cube(Z))) == [(-1,), (0,), (1,)]
    assert coords(neighbour_set(BoxDomain.unit_cube(ZZ))) == sorted(itertools.product((-1, 0, 1), repeat=2))
    skew = coords(neighbour_set(skew_box(ZZ)))
    assert skew == sorted((a, a + b) for a in (-1, 0, 1) for b in (-1, 0, 1))


def test_neighbour_set_structure():
    for O in ORDERS:
        for F in (BoxDomain.unit_cube(O), BoxDomain.symmetric(O)):
            nb = set(neighbour_set(F))
            assert O.zero in nb and len(nb) == 3**O.rank
            assert all(-x in nb for x in nb)
            assert all(O(b) in nb for b in F.basis)


def test_neighbour_set_is_exact_touching_set():
    # translates by lattice vectors with a coordinate of size 2 stay disjoint from the closure
    F = skew_box(ZZ)
    nb = {x.coords for x in neighbour_set(F)}
    for k in itertools.product(range(-2, 3), repeat=2):
        beta = tuple(sum(F.matrix[i][j] * k[j] for j in range(2)) for i in range(2))
        touches = all(abs(kj) <= 1 for kj in k)
        assert (beta in nb) == touches


def test_z_set_examples():
    F = BoxDomain.unit_cube(Z)
    assert coords(z_set(F, OPoly.from_coords(Z, [2, 1]))) == [(-1,), (0,), (1,)]
    assert coords(z_set(F, OPoly.from_coords(Z, [3, 1, 1]))) == [(i,) for i in range(-2, 3)]
    p = OPoly.from_coords(ZI, [(1, 2), (3, -1), 1])
    assert len(z_set(BoxDomain.unit_cube(ZI), p)) <= 3 ** (2 * 2)


def test_zero_interior():
    assert check_zero_interior(BoxDomain.symmetric(ZZ))
    assert not check_zero_interior(BoxDomain.unit_cube(ZZ))
    assert not check_zero_interior(BoxDomain(ZZ, ((1, 0), (0, 1)), (-half, 0)))


def test_cone_conditions_examples():
    r = check_cone_conditions(BoxDomain.unit_cube(Z), Fraction(1, 4))
    assert (r.near_zero, r.cone_at_zero, r.cone_below_one) == (Tristate.HOLDS,) * 3
    r = check_cone_conditions(BoxDomain.symmetric(Z), Fraction(1, 4))
    assert r.cone_below_one == Tristate.FAILS
    assert r.near_zero == Tristate.HOLDS and r.cone_at_zero == Tristate.HOLDS
    with pytest.raises(ValueError):
        check_cone_conditions(BoxDomain.unit_cube(Z), 0)


def test_cone_conditions_split_order():
    # unit (1, 1): [0,1)^2 and [-1,0)^2 miss (e/2, -e/2), so the neighbourhood of 0 fails
    r = check_cone_conditions(BoxDomain.unit_cube(ZZ), Fraction(1, 8))
    assert r.cone_at_zero == Tristate.HOLDS and r.cone_below_one == Tristate.HOLDS
    assert r.near_zero == Tristate.FAILS
    # the skew box has 1 as a basis vector, so F and F - 1 stack along it
    r = check_cone_conditions(skew_box(ZZ), Fraction(1, 8))
    assert (r.near_zero, r.cone_at_zero, r.cone_below_one) == (Tristate.HOLDS,) * 3
    # a large epsilon cannot fit
    r = check_cone_conditions(BoxDomain.unit_cube(ZZ), Fraction(3, 2))
    assert r.cone_at_zero == Tristate.FAILS


def _check_complete(ds: DigitSet, theta):
    N = abs(norm(theta))
    assert len(ds) == N
    assert theta.order.zero in ds
    assert len({canonical_residue(d, theta) for d in ds}) == N


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_digit_sets_are_complete_and_inside(data):
    O = data.draw(st.sampled_from(ORDERS))
    theta = data.draw(nonzero_divisors(O, 4))
    if abs(norm(theta)) > 200:
        return
    F = data.draw(st.sampled_from([BoxDomain.unit_cube(O), BoxDomain.symmetric(O)]))
    ds = digit_set(F, theta)
    _check_complete(ds, theta)
    for d in ds:
        assert domain_contains(F, inverse_apply(theta, d.coords))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_union_domain_round_trip(data):
    O = data.draw(st.sampled_from(ORDERS))
    theta = data.draw(nonzero_divisors(O, 3))
    if abs(norm(theta)) > 100:
        return
    base = digit_set(BoxDomain.unit_cube(O), theta)
    digits = [d if d.is_zero() else d + theta * data.draw(elements(O, 2)) for d in base]
    U = domain_from_residues(theta, digits)
    assert coords(digit_set(U, theta)) == sorted(d.coords for d in digits)
    for d in digits:
        assert domain_contains(U, inverse_apply(theta, d.coords))


def test_union_domain_examples():
    for D in ([0, 1], [0, -1]):
        U = domain_from_residues(Z(2), [Z(x) for x in D])
        assert coords(digit_set(U, Z(2))) == sorted((x,) for x in D)
    U = domain_from_residues(ZI(1, 1), [ZI(0, 0), ZI(1, 0)])
    assert coords(digit_set(U, ZI(1, 1))) == [(0, 0), (1, 0)]


def test_digit_set_validation():
    with pytest.raises(NotACompleteResidueSystem):
        DigitSet.from_digits(Z(3), [Z(0), Z(3), Z(1)])
    with pytest.raises(NotACompleteResidueSystem):
        DigitSet.from_digits(Z(3), [Z(0), Z(1)])
    with pytest.raises(MissingZeroDigit):
        DigitSet.from_digits(Z(2), [Z(2), Z(1)])
    with pytest.raises(ZeroDivisor):
        DigitSet.from_digits(ZZ(0, 2), [ZZ(0, 0)])
