"""Orders given by a multiplication table, and arithmetic on their elements.

An order of rank ``d`` is stored through its structure constants: ``table[i][j]``
is the coordinate vector of ``w_i * w_j`` in the basis ``w_1, ..., w_d``.
The unit element is usually ``w_1`` but may be any coordinate vector, which
lets product rings such as Z x Z be written in componentwise coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DimensionMismatch,
    ForeignOrder,
    NotDivisible,
    OrderValidationError,
    ZeroDivisor,
)


@dataclass(frozen=True)
class ValidationReport:
    rank: int
    shape_errors: tuple[str, ...] = ()
    unit_violations: tuple[tuple[int, int], ...] = ()
    commutativity_violations: tuple[tuple[int, int], ...] = ()
    associativity_violations: tuple[tuple[int, int, int], ...] = ()

    @property
    def valid(self) -> bool:
        return not (
            self.shape_errors
            or self.unit_violations
            or self.commutativity_violations
            or self.associativity_violations
        )

    def summary(self) -> str:
        if self.valid:
            return "valid"
        parts = list(self.shape_errors)
        if self.unit_violations:
            parts.append(f"unit law fails for {len(self.unit_violations)} entries")
        if self.commutativity_violations:
            parts.append(f"non-commutative pairs {list(self.commutativity_violations)}")
        if self.associativity_violations:
            parts.append(f"non-associative triples {list(self.associativity_violations)}")
        return "; ".join(parts)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "shape_errors": list(self.shape_errors),
            "unit": [list(v) for v in self.unit_violations],
            "commutativity": [list(v) for v in self.commutativity_violations],
            "associativity": [list(v) for v in self.associativity_violations],
        }


def validate_order(table, rank: int | None = None, unit: Sequence[int] | None = None) -> ValidationReport:
    """Check the ring axioms of a multiplication table.

    Indices in the report are zero based: ``(i, j)`` refers to ``w_{i+1} w_{j+1}``.
    """
    d = len(table) if rank is None else rank
    if d < 1:
        return ValidationReport(rank=d, shape_errors=("rank must be at least 1",))
    shape = []
    if len(table) != d:
        shape.append(f"table has {len(table)} rows, expected {d}")
    for i, row in enumerate(table):
        if len(row) != d:
            shape.append(f"row {i} has {len(row)} entries, expected {d}")
            continue
        for j, vec in enumerate(row):
            if len(vec) != d:
                shape.append(f"entry ({i},{j}) has length {len(vec)}, expected {d}")
            elif not all(isinstance(a, int) and not isinstance(a, bool) for a in vec):
                shape.append(f"entry ({i},{j}) is not an integer vector")
    unit = tuple(unit) if unit is not None else tuple(int(i == 0) for i in range(d))
    if len(unit) != d:
        shape.append(f"unit has length {len(unit)}, expected {d}")
    if shape:
        return ValidationReport(rank=d, shape_errors=tuple(shape))

    def mul(x, y):
        out = [0] * d
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        c = xi * yj
                        for l, a in enumerate(table[i][j]):
                            out[l] += c * a
        return tuple(out)

    basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    unit_bad = []
    for j in range(d):
        if mul(unit, basis[j]) != basis[j]:
            unit_bad.append((-1, j))
        if mul(basis[j], unit) != basis[j]:
            unit_bad.append((j, -1))
    comm = [(i, j) for i in range(d) for j in range(i + 1, d) if tuple(table[i][j]) != tuple(table[j][i])]
    assoc = []
    for i, j, k in itertools.product(range(d), repeat=3):
        if mul(tuple(table[i][j]), basis[k]) != mul(basis[i], tuple(table[j][k])):
            assoc.append((i, j, k))
    return ValidationReport(
        rank=d,
        unit_violations=tuple(unit_bad),
        commutativity_violations=tuple(comm),
        associativity_violations=tuple(assoc),
    )


@dataclass(frozen=True, eq=False)
class ResidueMap:
    """Residue classes of O modulo theta*O via the Smith form of M_theta.

    With ``U M V = diag(s)``, two vectors are congruent iff ``U x`` agree
    modulo every ``s_l``.
    """

    theta: tuple[int, ...]
    U: linalg.Matrix
    V: linalg.Matrix
    divisors: tuple[int, ...]
    U_inv: linalg.Matrix

    @cached_property
    def _active(self) -> tuple[int, ...]:
        return tuple(l for l, s in enumerate(self.divisors) if s != 1)

    @cached_property
    def _radix(self) -> tuple[int, ...]:
        out, r = [], 1
        for l in self._active:
            out.append(r)
            r *= self.divisors[l]
        return tuple(out)

    @property
    def size(self) -> int:
        n = 1
        for s in self.divisors:
            n *= s
        return n

    def index(self, coords: Sequence[int]) -> int:
        idx = 0
        for l, r in zip(self._active, self._radix):
            s = self.divisors[l]
            idx += (sum(u * x for u, x in zip(self.U[l], coords)) % s) * r
        return idx

    def representative(self, index: int) -> tuple[int, ...]:
        y = [0] * len(self.divisors)
        for l in self._active:
            s = self.divisors[l]
            y[l] = index % s
            index //= s
        return linalg.mat_vec(self.U_inv, y)

    def representatives(self) -> list[tuple[int, ...]]:
        return [self.representative(i) for i in range(self.size)]

    def divide(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Return beta with theta * beta = coords, or raise NotDivisible."""
        y = linalg.mat_vec(self.U, coords)
        z = []
        for yl, s in zip(y, self.divisors):
            if yl % s:
                raise NotDivisible(f"{tuple(coords)} is not divisible by {self.theta}")
            z.append(yl // s)
        return linalg.mat_vec(self.V, z)


@dataclass(frozen=True)
class Order:
    """A commutative ring with unit, free of finite rank over Z.

    Construction validates the table eagerly and raises
    :class:`OrderValidationError` on any violated ring axiom.
    """

    table: tuple
    labels: tuple[str, ...] = field(default=(), compare=False)
    unit_coords: tuple[int, ...] = ()

    def __post_init__(self):
        table = tuple(tuple(tuple(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        d = len(table)
        unit = tuple(self.unit_coords) or tuple(int(i == 0) for i in range(d))
        object.__setattr__(self, "unit_coords", unit)
        labels = tuple(self.labels) or tuple(f"w{i + 1}" for i in range(d))
        object.__setattr__(self, "labels", labels)
        report = validate_order(table, d, unit)
        if not report.valid:
            raise OrderValidationError(report)

    @property
    def rank(self) -> int:
        return len(self.table)

    @cached_property
    def _terms(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(
            (i, j, l, a)
            for i, row in enumerate(self.table)
            for j, vec in enumerate(row)
            for l, a in enumerate(vec)
            if a
        )

    def mul_coords(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        out = [0] * self.rank
        for i, j, l, a in self._terms:
            xi = x[i]
            if xi:
                yj = y[j]
                if yj:
                    out[l] += a * xi * yj
        return tuple(out)

    def __call__(self, *coords) -> OElem:
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction)):
            coords = tuple(coords[0])
        return OElem(self, tuple(coords))

    def scalar(self, m: int) -> OElem:
        return OElem(self, tuple(m * u for u in self.unit_coords))

    @property
    def one(self) -> OElem:
        return OElem(self, self.unit_coords)

    @property
    def zero(self) -> OElem:
        return OElem(self, (0,) * self.rank)

    def basis(self) -> list[OElem]:
        d = self.rank
        return [OElem(self, tuple(int(i == j) for j in range(d))) for i in range(d)]

    def mul_matrix_coords(self, coords: Sequence[int]) -> linalg.Matrix:
        cols = [self.mul_coords(coords, w.coords) for w in self.basis()]
        return linalg.transpose(cols)

    @lru_cache(maxsize=256)
    def residue_map(self, theta: tuple[int, ...]) -> ResidueMap:
        M = self.mul_matrix_coords(theta)
        if linalg.det(M) == 0:
            raise ZeroDivisor(f"{theta} is a zero divisor")
        U, diag, V = linalg.smith_normal_form(M)
        return ResidueMap(theta, U, V, diag, linalg.integer_inverse(U))

    @lru_cache(maxsize=256)
    def inverse_matrix(self, theta: tuple[int, ...]) -> linalg.Matrix:
        M = self.mul_matrix_coords(theta)
        if linalg.det(M) == 0:
            raise ZeroDivisor(f"{theta} is a zero divisor")
        return linalg.inverse(M)

    def discriminant(self) -> int:
        """det(Tr(w_i w_j)); non-zero exactly for etale orders."""
        basis = self.basis()
        traces = [[_trace(self, self.mul_coords(a.coords, b.coords)) for b in basis] for a in basis]
        return linalg.det(linalg.as_matrix(traces))

    def to_dict(self) -> dict:
        out = {
            "rank": self.rank,
            "table": [[list(v) for v in row] for row in self.table],
            "labels": list(self.labels),
        }
        if self.unit_coords != tuple(int(i == 0) for i in range(self.rank)):
            out["unit"] = list(self.unit_coords)
        return out


def _trace(order: Order, coords) -> int:
    M = order.mul_matrix_coords(coords)
    return sum(M[i][i] for i in range(order.rank))


@dataclass(frozen=True)
class OElem:
    order: Order = field(repr=False)
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.order.rank:
            raise DimensionMismatch(f"expected {self.order.rank} coordinates, got {len(self.coords)}")

    def __hash__(self):
        return hash(self.coords)

    def _check(self, other: OElem):
        if other.order is not self.order and other.order != self.order:
            raise ForeignOrder("elements belong to different orders")

    def _coerce(self, other) -> OElem:
        if isinstance(other, OElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.order.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OElem(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OElem(self.order, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return OElem(self.order, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return OElem(self.order, tuple(other * a for a in self.coords))
        if not isinstance(other, OElem):
            return NotImplemented
        self._check(other)
        return OElem(self.order, self.order.mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> OElem:
        result = self.order.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def norm_inf(self) -> int:
        return max(abs(a) for a in self.coords)

    def __repr__(self):
        return f"OElem{self.coords}"


def elem_mul(x: OElem, y: OElem) -> OElem:
    return x * y


def mul_matrix(alpha: OElem) -> linalg.Matrix:
    """Matrix of x -> alpha*x; column j holds the coordinates of alpha*w_j."""
    return alpha.order.mul_matrix_coords(alpha.coords)


def norm(alpha: OElem) -> int:
    return linalg.det(mul_matrix(alpha))


def is_zero_divisor(alpha: OElem) -> bool:
    return norm(alpha) == 0


def residues_mod(theta: OElem) -> list[OElem]:
    """One representative per class of O / theta*O, ordered by residue index."""
    rm = theta.order.residue_map(theta.coords)
    return [OElem(theta.order, r) for r in rm.representatives()]


def canonical_residue(alpha: OElem, theta: OElem) -> int:
    alpha._check(theta)
    return theta.order.residue_map(theta.coords).index(alpha.coords)


def solve_divide(alpha: OElem, theta: OElem) -> OElem:
    alpha._check(theta)
    return OElem(theta.order, theta.order.residue_map(theta.coords).divide(alpha.coords))


def inverse_apply(theta: OElem, xi: Iterable) -> tuple:
    """Coordinates of theta^{-1} * xi in O (x) Q, exactly."""
    return linalg.mat_vec(theta.order.inverse_matrix(theta.coords), tuple(xi))
