"""Sufficient conditions, shift-family scans and constructive witnesses."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .domain import BoxDomain, digit_set, domain_contains, neighbour_set, z_set
from .engine import (
    DEFAULT_STATE_CAP,
    DEFAULT_STEP_CAP,
    Gns,
    LatticeState,
    Verdict,
    Witness,
    decide_finiteness,
    make_gns,
    verify_cycle_witness,
)
from .errors import (
    DigitSetMismatch,
    EmptyRange,
    NotACompleteResidueSystem,
    NotAGenerator,
    StateSpaceExceeded,
    ZeroDivisor,
)
from .fixtures import integers
from .opoly import OPoly, ZPoly, divide_linear, poly_eval, taylor_shift
from .order import OElem, Order, inverse_apply, mul_matrix, norm

_MAX_LISTED = 20


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the three set inclusions that together imply finiteness.

    (i)   Z + D lies in the union of D + p_0*delta over neighbours delta;
    (ii)  Z lies in D or D - p_0;
    (iii) every subset sum of p_1, .., p_n is a digit.
    Offending elements are listed (at most a few per condition).
    """

    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    failures_i: tuple = ()
    failures_ii: tuple = ()
    failures_iii: tuple = ()

    @property
    def holds(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "i": {"holds": self.condition_i, "failures": [list(x) for x in self.failures_i]},
            "ii": {"holds": self.condition_ii, "failures": [list(x) for x in self.failures_ii]},
            "iii": {"holds": self.condition_iii, "failures": [list(x) for x in self.failures_iii]},
        }


def check_finiteness_conditions(gns: Gns, F: BoxDomain) -> ConditionReport:
    p, D = gns.poly, gns.digits
    p0 = p.coeffs[0]
    if set(digit_set(F, p0).coords()) != set(D.coords()):
        raise DigitSetMismatch("digit set is not the one induced by the domain")
    Z = sorted(z_set(F, p), key=lambda e: e.coords)
    delta = {e.coords for e in neighbour_set(F)}
    rm = gns.order.residue_map(p0.coords)

    bad_i = []
    for z in Z:
        for dg in D:
            s = z + dg
            shift = rm.divide(tuple(a - b for a, b in zip(s.coords, D.digit_for(s.coords).coords)))
            if shift not in delta:
                bad_i.append(s.coords)
    bad_ii = [z.coords for z in Z if z not in D and (z + p0) not in D]
    bad_iii = []
    tail = p.coeffs[1:]
    for r in range(1, len(tail) + 1):
        for subset in itertools.combinations(tail, r):
            s = sum(subset[1:], subset[0])
            if s not in D:
                bad_iii.append(s.coords)
    return ConditionReport(
        not bad_i,
        not bad_ii,
        not bad_iii,
        tuple(sorted(set(bad_i))[:_MAX_LISTED]),
        tuple(bad_ii[:_MAX_LISTED]),
        tuple(sorted(set(bad_iii))[:_MAX_LISTED]),
    )


def cns_linf_criterion(p: ZPoly | Sequence[int]) -> bool:
    """Non-negative coefficients and coefficient sum below 2*p(0).

    When true, ``(p, {0, .., p(0) - 1})`` has the finiteness property.
    """
    c = p.coeffs if isinstance(p, ZPoly) else tuple(p)
    return all(a >= 0 for a in c) and sum(c) < 2 * c[0]


@dataclass(frozen=True)
class ScanRow:
    m: int
    poly: tuple
    digits: int
    verdict: str
    witness: dict | None = None
    witness_source: str | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"m": self.m, "poly": [list(c) for c in self.poly], "verdict": self.verdict, "digits": self.digits}
        if self.witness is not None:
            out["witness"] = self.witness
            out["witness_source"] = self.witness_source
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ScanReport:
    """Rows for a contiguous range of m.

    ``empirical_N`` is the least m in range from which every row up to the end
    of the range is Finite; it says nothing about m beyond the range.
    """

    direction: str
    rows: tuple[ScanRow, ...]
    empirical_N: int | None = field(init=False)

    def __post_init__(self):
        n = None
        for row in reversed(self.rows):
            if row.verdict != Verdict.FINITE.value:
                break
            n = row.m
        object.__setattr__(self, "empirical_N", n)

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "rows": [r.to_dict() for r in self.rows],
            "empirical_N": self.empirical_N,
        }


def _scan_row(order, p, F, m, sign, state_cap, step_cap) -> ScanRow:
    alpha = sign * m
    shifted = taylor_shift(p, alpha)
    p0 = shifted.coeffs[0]
    coeffs = tuple(c.coords for c in shifted.coeffs)
    N = norm(p0)
    if N == 0:
        return ScanRow(m, coeffs, 0, "Degenerate", note="shifted constant term is a zero divisor")
    D = digit_set(F, p0)
    gns = Gns(order, shifted, D)
    shortcut = None
    if sign < 0 and m >= 1 and norm(poly_eval(p, order.scalar(-m))) != 0:
        shortcut = negative_shift_witness(order, p, F, m - 1)
    try:
        report = decide_finiteness(gns, state_cap=state_cap, step_cap=step_cap)
    except StateSpaceExceeded as exc:
        if shortcut is not None:
            return ScanRow(m, coeffs, len(D), Verdict.INFINITE.value, shortcut.to_dict(), "shift", note=str(exc))
        return ScanRow(m, coeffs, len(D), "Undecided", note=str(exc))
    note = "only 0 is representable" if abs(N) == 1 else ""
    if report.witness is not None:
        if shortcut is not None:
            return ScanRow(m, coeffs, len(D), report.verdict.value, shortcut.to_dict(), "shift", note)
        return ScanRow(m, coeffs, len(D), report.verdict.value, report.witness.to_dict(), "engine", note)
    return ScanRow(m, coeffs, len(D), report.verdict.value, note=note)


def _scan(order, p, F, m_lo, m_hi, sign, jobs, state_cap, step_cap) -> ScanReport:
    if m_lo > m_hi:
        raise EmptyRange(f"empty range [{m_lo}, {m_hi}]")
    ms = range(m_lo, m_hi + 1)
    args = [(order, p, F, m, sign, state_cap, step_cap) for m in ms]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_row, *zip(*args)))
    else:
        rows = [_scan_row(*a) for a in args]
    return ScanReport("positive" if sign > 0 else "negative", tuple(rows))


def scan_positive_shifts(
    order: Order,
    p: OPoly,
    F: BoxDomain,
    m_lo: int,
    m_hi: int,
    *,
    jobs: int = 1,
    state_cap: int = DEFAULT_STATE_CAP,
    step_cap: int = DEFAULT_STEP_CAP,
) -> ScanReport:
    """Decide ``(p(x + m), D_{F, p(m)})`` for every m in ``[m_lo, m_hi]``."""
    return _scan(order, p, F, m_lo, m_hi, 1, jobs, state_cap, step_cap)


def scan_negative_shifts(
    order: Order,
    p: OPoly,
    F: BoxDomain,
    m_lo: int,
    m_hi: int,
    *,
    jobs: int = 1,
    state_cap: int = DEFAULT_STATE_CAP,
    step_cap: int = DEFAULT_STEP_CAP,
) -> ScanReport:
    """Decide ``(p(x - m), D_{F, p(-m)})``; rows with an explicit fixed-point
    witness from :func:`negative_shift_witness` carry that witness."""
    return _scan(order, p, F, m_lo, m_hi, -1, jobs, state_cap, step_cap)


@dataclass(frozen=True)
class ShiftWitness:
    """A fixed point of backward division for ``p(x - m - 1)``."""

    m: int
    gns: Gns
    witness: Witness
    verified: bool

    def to_dict(self) -> dict:
        out = self.witness.to_dict()
        out["m"] = self.m
        out["verified"] = self.verified
        return out


def negative_shift_witness(order: Order, p: OPoly, F: BoxDomain, m: int) -> ShiftWitness | None:
    """Fixed-point witness that ``(p(x - m - 1), D_{F, p(-m-1)})`` is not finite.

    Applies when ``p(-m)`` is a digit for modulus ``p(-m-1)``. Then dividing
    ``p(x - m - 1) = (x - 1) s(x) + p(-m)`` gives ``x*s + p(-m) = s`` modulo
    ``p(x - m - 1)``. Returns ``None`` when ``p(-m)`` is not a digit.
    """
    theta = poly_eval(p, order.scalar(-m - 1))
    if norm(theta) == 0:
        raise ZeroDivisor(f"p({-m - 1}) is a zero divisor")
    d0 = poly_eval(p, order.scalar(-m))
    if not domain_contains(F, inverse_apply(theta, d0.coords)):
        return None
    shifted = taylor_shift(p, -m - 1)
    quotient, remainder = divide_linear(shifted, 1)
    assert remainder == d0
    gns = Gns(order, shifted, digit_set(F, theta))
    state = LatticeState(tuple(c.coords for c in quotient))
    witness = Witness("cycle", (state,), (d0,))
    ok = verify_cycle_witness(gns, witness)
    assert ok, "fixed-point witness failed verification"
    return ShiftWitness(m, gns, witness, ok)


@dataclass(frozen=True)
class GeneratorReduction:
    """GNS over Z attached to a generator alpha of an order.

    ``index`` is ``[O : Z[alpha]]``. The verdict of ``gns`` describes
    ``(alpha, D)`` on all of O only when ``monogenic`` is true.
    """

    alpha: OElem
    poly: ZPoly
    gns: Gns
    index: int
    etale: bool

    @property
    def monogenic(self) -> bool:
        return self.index == 1

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha.coords),
            "poly": list(self.poly.coeffs),
            "digits": [d.coords[0] for d in self.gns.digits],
            "index": self.index,
            "monogenic": self.monogenic,
            "etale": self.etale,
        }


def number_system_from_generator(order: Order, alpha: OElem, digits: Sequence[int]) -> GeneratorReduction:
    N = norm(alpha)
    if N == 0:
        raise ZeroDivisor(f"{alpha.coords} is a zero divisor")
    d = order.rank
    powers = [order.one]
    for _ in range(d - 1):
        powers.append(powers[-1] * alpha)
    index = abs(linalg.det(linalg.transpose([w.coords for w in powers])))
    if index == 0:
        raise NotAGenerator(f"powers of {alpha.coords} are linearly dependent")
    if len(set(digits)) != abs(N) or len(digits) != abs(N):
        raise NotACompleteResidueSystem(f"need {abs(N)} distinct digits, got {len(digits)}")
    P = ZPoly(linalg.charpoly(mul_matrix(alpha)))
    Z = integers()
    gns = make_gns(Z, OPoly.from_coords(Z, P.coeffs), [Z(x) for x in digits])
    return GeneratorReduction(alpha, P, gns, index, order.discriminant() != 0)
