"""Polynomials over an order and over Z."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import linalg
from .errors import DimensionMismatch, ZeroConstantTerm
from .order import OElem, Order, mul_matrix


@dataclass(frozen=True)
class ZPoly:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: ZPoly) -> ZPoly:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ZPoly(tuple(out))

    def reversed(self) -> ZPoly:
        return ZPoly(tuple(reversed(self.coeffs)))

    def l1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = "" if mono and abs(c) == 1 else str(abs(c))
            terms.append(("-" if c < 0 else "+", mag + ("*" if mag and mono else "") + mono))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{sign} {t}" for sign, t in terms[1:]])


@dataclass(frozen=True)
class OPoly:
    """Monic polynomial over an order; coefficients lowest degree first."""

    order: Order
    coeffs: tuple[OElem, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        for c in self.coeffs:
            if c.order is not self.order and c.order != self.order:
                raise DimensionMismatch("coefficient from a different order")
        if self.coeffs[-1].coords != self.order.unit_coords:
            raise ValueError("polynomial must be monic")

    @classmethod
    def from_coords(cls, order: Order, coeffs: Sequence) -> OPoly:
        elems = []
        for c in coeffs:
            if isinstance(c, OElem):
                elems.append(c)
            elif isinstance(c, int):
                elems.append(order.scalar(c))
            else:
                elems.append(order(tuple(c)))
        return cls(order, tuple(elems))

    @classmethod
    def from_components(cls, order: Order, *polys: Sequence[int]) -> OPoly:
        """Polynomial over a split order Z^k from its k integer components."""
        n = len(polys[0]) - 1
        if any(len(q) - 1 != n for q in polys):
            raise ValueError("components must share a degree")
        return cls.from_coords(order, [tuple(q[j] for q in polys) for j in range(n + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> OElem:
        return self.coeffs[j]

    def to_dict(self) -> dict:
        return {"coeffs": [list(c.coords) for c in self.coeffs]}

    def __repr__(self):
        return f"OPoly({[c.coords for c in self.coeffs]})"


def poly_eval(p: OPoly, alpha: OElem) -> OElem:
    acc = p.order.zero
    for c in reversed(p.coeffs):
        acc = acc * alpha + c
    return acc


def taylor_shift(p: OPoly, alpha: OElem | int) -> OPoly:
    """Coefficients of p(x + alpha) by repeated synthetic division by (x - alpha)."""
    if isinstance(alpha, int):
        alpha = p.order.scalar(alpha)
    b = list(p.coeffs)
    n = p.degree
    for j in range(n):
        for i in range(n - 1, j - 1, -1):
            b[i] = b[i] + alpha * b[i + 1]
    return OPoly(p.order, tuple(b))


def divide_linear(p: OPoly, root: OElem | int) -> tuple[list[OElem], OElem]:
    """Synthetic division of p by (x - root): returns (quotient coeffs, remainder)."""
    if isinstance(root, int):
        root = p.order.scalar(root)
    n = p.degree
    q = [p.order.zero] * n
    acc = p.coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = p.coeffs[i] + root * acc
    return q, acc


def companion_operator(order: Order, p: OPoly) -> linalg.Matrix:
    """Matrix of multiplication by x on O[x]/(p) in the basis w_i x^j.

    Basis vector ``w_i x^j`` has index ``j*d + i``.
    """
    d, n = order.rank, p.degree
    size = n * d
    M = [[0] * size for _ in range(size)]
    for j in range(1, n):
        for i in range(d):
            M[j * d + i][(j - 1) * d + i] = 1
    last = (n - 1) * d
    for j in range(n):
        P = mul_matrix(p.coeffs[j])
        for r in range(d):
            for c in range(d):
                M[j * d + r][last + c] = -P[r][c]
    return linalg.as_matrix(M)


def np_polynomial(order: Order, p: OPoly) -> ZPoly:
    return ZPoly(linalg.charpoly(companion_operator(order, p)))


def is_expansive(P: ZPoly | Sequence[int]) -> bool:
    """True iff every complex root of the monic P has modulus > 1.

    Runs the Schur-Cohn reduction on the reversed polynomial, whose roots are
    the reciprocals; any root on the unit circle makes some step non-strict.
    """
    coeffs = P.coeffs if isinstance(P, ZPoly) else tuple(P)
    if coeffs[0] == 0:
        raise ZeroConstantTerm("expansiveness needs a non-zero constant term")
    c = list(reversed(coeffs))
    while len(c) > 1:
        a0, an = c[0], c[-1]
        if abs(a0) >= abs(an):
            return False
        n = len(c) - 1
        c = [an * c[k] - a0 * c[n - k] for k in range(1, n + 1)]
        g = 0
        for x in c:
            g = gcd(g, x)
        if g > 1:
            c = [x // g for x in c]
    return True


def reduce_mod(p: OPoly, coeffs: Sequence[OElem]) -> list[OElem]:
    """Remainder of sum c_j x^j on division by the monic p (degree < deg p)."""
    n = p.degree
    c = list(coeffs)
    for k in range(len(c) - 1, n - 1, -1):
        lead = c[k]
        if lead.is_zero():
            continue
        for j in range(n + 1):
            c[k - n + j] = c[k - n + j] - lead * p.coeffs[j]
    c = c[:n] + [p.order.zero] * max(0, n - len(c))
    return c


__all__ = [
    "ZPoly",
    "OPoly",
    "poly_eval",
    "taylor_shift",
    "divide_linear",
    "companion_operator",
    "np_polynomial",
    "is_expansive",
    "reduce_mod",
]
