"""Fundamental domains of (O (x) R)/O, induced digit sets and neighbour sets.

Two families are supported, both with exact rational membership:

* :class:`BoxDomain` -- a half-open parallelotope ``{sum u_i b_i : o_i <= u_i < o_i + 1}``
  spanned by a Z-basis ``b_1..b_d`` of O.
* :class:`UnionDomain` -- the union of translated copies of a small box, one per
  digit, built from an arbitrary complete residue system.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    InvalidDomain,
    MissingZeroDigit,
    NotACompleteResidueSystem,
    ZeroDivisor,
)
from .opoly import OPoly
from .order import OElem, Order, inverse_apply, norm


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _floor(x) -> int:
    return math.floor(x)


@dataclass(frozen=True)
class DigitSet:
    """Complete residue system modulo ``modulus`` that contains 0."""

    modulus: OElem
    digits: tuple[OElem, ...]
    _lookup: dict = field(repr=False, compare=False, hash=False)

    @classmethod
    def from_digits(cls, modulus: OElem, digits: Iterable) -> DigitSet:
        order = modulus.order
        elems = [d if isinstance(d, OElem) else _as_elem(order, d) for d in digits]
        N = abs(norm(modulus))
        if N == 0:
            raise ZeroDivisor(f"modulus {modulus.coords} is a zero divisor")
        rm = order.residue_map(modulus.coords)
        lookup: dict[int, OElem] = {}
        for dgt in elems:
            idx = rm.index(dgt.coords)
            if idx in lookup:
                raise NotACompleteResidueSystem(
                    f"digits {lookup[idx].coords} and {dgt.coords} are congruent modulo {modulus.coords}"
                )
            lookup[idx] = dgt
        if len(lookup) != N:
            raise NotACompleteResidueSystem(f"{len(lookup)} digits given, {N} residue classes exist")
        if not any(dgt.is_zero() for dgt in elems):
            raise MissingZeroDigit("digit set must contain 0")
        ordered = tuple(sorted(elems, key=lambda e: e.coords))
        return cls(modulus, ordered, lookup)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __contains__(self, item) -> bool:
        if not isinstance(item, OElem):
            item = _as_elem(self.modulus.order, item)
        return self.digit_for(item.coords) == item

    def digit_for(self, coords: Sequence[int]) -> OElem:
        """The digit congruent to ``coords`` modulo the modulus."""
        rm = self.modulus.order.residue_map(self.modulus.coords)
        return self._lookup[rm.index(coords)]

    def max_norm(self) -> int:
        return max(d.norm_inf() for d in self.digits)

    def coords(self) -> list[tuple[int, ...]]:
        return [d.coords for d in self.digits]

    def to_dict(self) -> dict:
        return {"modulus": list(self.modulus.coords), "digits": [list(d.coords) for d in self.digits]}


def _as_elem(order: Order, value) -> OElem:
    if isinstance(value, int):
        return order.scalar(value) if order.rank > 1 else order(value)
    return order(tuple(value))


@dataclass(frozen=True)
class BoxDomain:
    order: Order
    basis: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        d = self.order.rank
        basis = tuple(tuple(b) for b in self.basis)
        offsets = tuple(_frac(o) for o in self.offsets)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "offsets", offsets)
        if len(basis) != d or any(len(b) != d for b in basis) or len(offsets) != d:
            raise InvalidDomain(f"box domain needs {d} basis vectors of length {d} and {d} offsets")
        if abs(linalg.det(self.matrix)) != 1:
            raise InvalidDomain("basis is not unimodular")
        if any(not (-1 < o <= 0) for o in offsets):
            raise InvalidDomain("offsets must lie in (-1, 0] so that 0 is in the domain")

    @classmethod
    def unit_cube(cls, order: Order) -> BoxDomain:
        d = order.rank
        return cls(order, linalg.identity(d), (Fraction(0),) * d)

    @classmethod
    def symmetric(cls, order: Order) -> BoxDomain:
        d = order.rank
        return cls(order, linalg.identity(d), (Fraction(-1, 2),) * d)

    @cached_property
    def matrix(self) -> linalg.Matrix:
        """U with the basis vectors as columns."""
        return linalg.transpose(self.basis)

    @cached_property
    def matrix_inv(self) -> linalg.Matrix:
        return linalg.integer_inverse(self.matrix)

    def u_coords(self, xi: Sequence) -> tuple:
        return linalg.mat_vec(self.matrix_inv, xi)

    def contains(self, xi: Sequence) -> bool:
        u = self.u_coords(xi)
        return all(o <= ui < o + 1 for ui, o in zip(u, self.offsets))

    def lattice_shift(self, xi: Sequence) -> tuple[int, ...]:
        """The unique lattice point beta with xi - beta in the domain."""
        u = self.u_coords(xi)
        k = [_floor(ui - o) for ui, o in zip(u, self.offsets)]
        return linalg.mat_vec(self.matrix, k)

    def to_dict(self) -> dict:
        return {
            "type": "box",
            "basis": [list(b) for b in self.basis],
            "offsets": [str(o) for o in self.offsets],
        }


@dataclass(frozen=True)
class UnionDomain:
    """``F = union over digits delta of (theta^{-1} delta + G)``.

    ``G`` is the box spanned by ``theta^{-1} w_j`` with offsets 0, so
    ``xi`` lies in F exactly when ``floor(theta * xi)`` (coordinatewise) is a digit.
    """

    order: Order
    theta: OElem
    digits: tuple[OElem, ...]

    @cached_property
    def _digit_set(self) -> DigitSet:
        return DigitSet.from_digits(self.theta, self.digits)

    @cached_property
    def _digit_coords(self) -> frozenset:
        return frozenset(d.coords for d in self.digits)

    def _scaled_floor(self, xi: Sequence) -> tuple[tuple[int, ...], tuple]:
        eta = linalg.mat_vec(self.order.mul_matrix_coords(self.theta.coords), xi)
        return tuple(_floor(e) for e in eta), eta

    def contains(self, xi: Sequence) -> bool:
        f, _ = self._scaled_floor(xi)
        return f in self._digit_coords

    def lattice_shift(self, xi: Sequence) -> tuple[int, ...]:
        f, _ = self._scaled_floor(xi)
        delta = self._digit_set.digit_for(f)
        rm = self.order.residue_map(self.theta.coords)
        return rm.divide(tuple(a - b for a, b in zip(f, delta.coords)))

    def to_dict(self) -> dict:
        return {
            "type": "union",
            "theta": list(self.theta.coords),
            "digits": [list(d.coords) for d in self.digits],
        }


Domain = BoxDomain | UnionDomain


def domain_contains(F: Domain, xi: Sequence) -> bool:
    return F.contains(tuple(_frac(x) for x in xi))


def digit_set(F: Domain, theta: OElem) -> DigitSet:
    """``theta F`` intersected with O: one digit per residue class modulo theta."""
    order = theta.order
    rm = order.residue_map(theta.coords)
    digits = []
    for rep in rm.representatives():
        xi = inverse_apply(theta, rep)
        beta = F.lattice_shift(xi)
        shift = order.mul_coords(theta.coords, beta)
        digits.append(OElem(order, tuple(a - b for a, b in zip(rep, shift))))
    return DigitSet.from_digits(theta, digits)


def domain_from_residues(theta: OElem, digits: Iterable) -> UnionDomain:
    ds = DigitSet.from_digits(theta, digits)
    return UnionDomain(theta.order, theta, ds.digits)


def neighbour_set(F: BoxDomain) -> list[OElem]:
    """Lattice points whose closed translates of F meet the closure of F."""
    order = F.order
    out = []
    for e in itertools.product((-1, 0, 1), repeat=order.rank):
        out.append(OElem(order, linalg.mat_vec(F.matrix, e)))
    return sorted(out, key=lambda x: x.coords)


def z_set(F: BoxDomain, p: OPoly) -> frozenset[OElem]:
    """All sums ``sum_{j=1..n} delta_j p_j`` with each delta_j a neighbour of 0."""
    deltas = neighbour_set(F)
    sums = {p.order.zero}
    for j in range(1, p.degree + 1):
        pj = p.coeffs[j]
        products = {delta * pj for delta in deltas}
        sums = {s + t for s in sums for t in products}
    return frozenset(sums)


def check_zero_interior(F: BoxDomain) -> bool:
    return all(-1 < o < 0 for o in F.offsets)


class Tristate(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConeReport:
    epsilon: Fraction
    near_zero: Tristate
    cone_at_zero: Tristate
    cone_below_one: Tristate

    def to_dict(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "near_zero": self.near_zero.value,
            "cone_at_zero": self.cone_at_zero.value,
            "cone_below_one": self.cone_below_one.value,
        }


def _interval_hull(points: list[tuple]) -> list[tuple[Fraction, Fraction]]:
    return [(min(col), max(col)) for col in zip(*points)]


def _inside_box(hull, lows, highs) -> bool:
    # An open convex set lies in the half-open box iff its closure lies in the closed box.
    return all(lo <= a and b <= hi for (a, b), lo, hi in zip(hull, lows, highs))


def check_cone_conditions(F: BoxDomain, epsilon) -> ConeReport:
    """Certify the three small-neighbourhood conditions on a box for a given epsilon.

    The norm is the max norm in the basis of the order. Each condition asks
    that some open convex set (or a union of two boxes) lie inside the domain;
    the answer is computed from the vertices of the closure in box coordinates.
    """
    eps = _frac(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    order = F.order
    d = order.rank
    one = tuple(Fraction(u) for u in order.unit_coords)
    corners = [tuple(eps * s for s in signs) for signs in itertools.product((-1, 1), repeat=d)]
    lows = [o for o in F.offsets]
    highs = [o + 1 for o in F.offsets]

    # {||xi|| < eps} inside F or F - 1
    cube_u = [F.u_coords(c) for c in corners]
    w = F.u_coords(one)
    hull = _interval_hull(cube_u)
    if _inside_box(hull, lows, highs):
        near_zero = Tristate.HOLDS
    else:
        nonzero = [i for i, wi in enumerate(w) if wi != 0]
        if len(nonzero) == 1:
            k = nonzero[0]
            lo2, hi2 = list(lows), list(highs)
            lo2[k] = min(lows[k], lows[k] - w[k])
            hi2[k] = max(highs[k], highs[k] - w[k])
            near_zero = Tristate.HOLDS if _inside_box(hull, lo2, hi2) else Tristate.FAILS
        else:
            shifted_lows = [lo - wi for lo, wi in zip(lows, w)]
            shifted_highs = [hi - wi for hi, wi in zip(highs, w)]

            def outside_closure(u):
                in_a = all(lo <= x <= hi for x, lo, hi in zip(u, lows, highs))
                in_b = all(lo <= x <= hi for x, lo, hi in zip(u, shifted_lows, shifted_highs))
                return not (in_a or in_b)

            if _inside_box(hull, shifted_lows, shifted_highs):
                near_zero = Tristate.HOLDS
            elif any(outside_closure(u) for u in cube_u):
                near_zero = Tristate.FAILS
            else:
                near_zero = Tristate.UNKNOWN

    # {r (1 + c) : 0 < r < eps, ||c|| < eps}: closure is the hull of 0 and eps*(1 + corners)
    apex0 = [tuple(Fraction(0) for _ in range(d))]
    pts = apex0 + [F.u_coords(tuple(eps * (a + b) for a, b in zip(one, c))) for c in corners]
    cone_at_zero = Tristate.HOLDS if _inside_box(_interval_hull(pts), lows, highs) else Tristate.FAILS

    # {1 - r (1 + c)}: closure is the hull of 1 and 1 - eps*(1 + corners)
    pts = [F.u_coords(one)] + [
        F.u_coords(tuple(a - eps * (a + b) for a, b in zip(one, c))) for c in corners
    ]
    cone_below_one = Tristate.HOLDS if _inside_box(_interval_hull(pts), lows, highs) else Tristate.FAILS

    return ConeReport(eps, near_zero, cone_at_zero, cone_below_one)
