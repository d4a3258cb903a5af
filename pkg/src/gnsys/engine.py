"""Generalized number systems: digit expansion and the finiteness decision.

A state of ``O[x]/(p)`` is kept as its reduced representative
``a_0 + a_1 x + ... + a_{n-1} x^{n-1}``. Internally states are flat integer
tuples with ``a_j``'s coordinates at positions ``j*d .. j*d + d - 1``, the same
ordering as the basis of :func:`gnsys.opoly.companion_operator`.
"""

from __future__ import annotations

import enum
import itertools
import math
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .domain import DigitSet
from .errors import (
    ContractionSearchExceeded,
    ForeignDigit,
    StateSpaceExceeded,
    StepLimitExceeded,
    TrivialDigitSetWarning,
    ZeroDivisor,
    ZeroDivisorConstantTerm,
)
from .opoly import OPoly, ZPoly, companion_operator, is_expansive, np_polynomial, reduce_mod
from .order import OElem, Order, mul_matrix, norm

DEFAULT_STATE_CAP = 10**7
DEFAULT_STEP_CAP = 10**6
DEFAULT_CONTRACTION_CAP = 10_000


@dataclass(frozen=True)
class LatticeState:
    """Reduced element of O[x]/(p): ``coeffs[j]`` is the coordinate vector of a_j."""

    coeffs: tuple[tuple[int, ...], ...]

    @classmethod
    def from_flat(cls, flat: Sequence[int], d: int) -> LatticeState:
        return cls(tuple(tuple(flat[j : j + d]) for j in range(0, len(flat), d)))

    @classmethod
    def zero(cls, d: int, n: int) -> LatticeState:
        return cls(((0,) * d,) * n)

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.coeffs))

    def norm(self) -> int:
        return max((abs(a) for a in self.flat), default=0)

    def is_zero(self) -> bool:
        return not any(self.flat)

    def to_list(self) -> list[list[int]]:
        return [list(c) for c in self.coeffs]


@dataclass(frozen=True)
class Gns:
    order: Order
    poly: OPoly
    digits: DigitSet

    @property
    def d(self) -> int:
        return self.order.rank

    @property
    def n(self) -> int:
        return self.poly.degree

    @cached_property
    def phi(self) -> linalg.Matrix:
        return companion_operator(self.order, self.poly)

    @cached_property
    def np_poly(self) -> ZPoly:
        return np_polynomial(self.order, self.poly)

    @cached_property
    def _stepper(self) -> _Stepper:
        return _Stepper(self)

    def state(self, value) -> LatticeState:
        """Coerce a state, an element, or a coefficient list into a reduced LatticeState."""
        if isinstance(value, LatticeState):
            return value
        if isinstance(value, OElem):
            coeffs = [value]
        elif isinstance(value, int):
            coeffs = [self.order.scalar(value)]
        else:
            coeffs = [c if isinstance(c, OElem) else _elem(self.order, c) for c in value]
        reduced = reduce_mod(self.poly, coeffs)
        return LatticeState(tuple(c.coords for c in reduced))

    def to_dict(self) -> dict:
        return {"poly": self.poly.to_dict(), "digits": self.digits.to_dict()}


def _elem(order: Order, c) -> OElem:
    if isinstance(c, int):
        return order.scalar(c) if order.rank > 1 else order(c)
    return order(tuple(c))


class _Stepper:
    """Precomputed integer data for one backward-division step on flat states."""

    def __init__(self, gns: Gns):
        order, p, ds = gns.order, gns.poly, gns.digits
        self.d, self.n = order.rank, p.degree
        rm = order.residue_map(p.coeffs[0].coords)
        self.U = rm.U
        self.V = rm.V
        self.divisors = rm.divisors
        self.active = [(l, rm.divisors[l], r) for l, r in zip(rm._active, rm._radix)]
        self.digit_coords = [dg.coords for dg in ds.digits]
        pos = {dg.coords: i for i, dg in enumerate(ds.digits)}
        self.by_residue = [0] * rm.size
        for idx, dg in ds._lookup.items():
            self.by_residue[idx] = pos[dg.coords]
        self.digit_images = [linalg.mat_vec(self.U, c) for c in self.digit_coords]
        self.coef_mats = [mul_matrix(p.coeffs[j]) for j in range(1, self.n)]

    def step(self, s: tuple) -> tuple[int, tuple]:
        d = self.d
        a0 = s[:d]
        y = [sum(u * x for u, x in zip(row, a0)) for row in self.U]
        idx = 0
        for l, div, radix in self.active:
            idx += (y[l] % div) * radix
        k = self.by_residue[idx]
        yd = self.digit_images[k]
        z = [(a - b) // div for a, b, div in zip(y, yd, self.divisors)]
        q = [sum(v * x for v, x in zip(row, z)) for row in self.V]
        out = []
        for j, P in enumerate(self.coef_mats, start=1):
            aj = s[j * d : j * d + d]
            out.extend(a - sum(m * x for m, x in zip(row, q)) for a, row in zip(aj, P))
        out.extend(-x for x in q)
        return k, tuple(out)


def make_gns(order: Order, p: OPoly, digits: DigitSet | Iterable) -> Gns:
    """Validate and bundle a GNS ``(p, digits)`` over ``order``."""
    p0 = p.coeffs[0]
    N = norm(p0)
    if N == 0:
        raise ZeroDivisorConstantTerm(f"constant term {p0.coords} is a zero divisor")
    if not isinstance(digits, DigitSet) or digits.modulus.coords != p0.coords:
        source = digits.digits if isinstance(digits, DigitSet) else digits
        digits = DigitSet.from_digits(p0, source)
    if abs(N) == 1:
        warnings.warn("|N(p(0))| = 1: only 0 is representable", TrivialDigitSetWarning, stacklevel=2)
    return Gns(order, p, digits)


def expand_step(gns: Gns, v) -> tuple[OElem, LatticeState]:
    """One backward division: ``v = x * next + digit`` in O[x]/(p)."""
    v = gns.state(v)
    k, nxt = gns._stepper.step(v.flat)
    return gns.digits.digits[k], LatticeState.from_flat(nxt, gns.d)


@dataclass(frozen=True)
class Expansion:
    """Either a finite digit string or an eventually periodic orbit."""

    digits: tuple[OElem, ...]
    preperiod: tuple[tuple[LatticeState, OElem], ...] = ()
    cycle: tuple[tuple[LatticeState, OElem], ...] = ()

    @property
    def finite(self) -> bool:
        return not self.cycle

    @property
    def period(self) -> int:
        return len(self.cycle)

    def to_dict(self) -> dict:
        if self.finite:
            return {"finite": True, "digits": [list(d.coords) for d in self.digits]}
        return {
            "finite": False,
            "preperiod": [{"state": s.to_list(), "digit": list(d.coords)} for s, d in self.preperiod],
            "cycle": [{"state": s.to_list(), "digit": list(d.coords)} for s, d in self.cycle],
        }


def expand(gns: Gns, a, max_steps: int = DEFAULT_STEP_CAP) -> Expansion:
    state = gns.state(a)
    step = gns._stepper.step
    digits = gns.digits.digits
    s = state.flat
    seen: dict[tuple, int] = {}
    trail: list[tuple[tuple, int]] = []
    while any(s):
        if s in seen:
            start = seen[s]
            pairs = [(LatticeState.from_flat(t, gns.d), digits[k]) for t, k in trail]
            return Expansion(
                digits=tuple(dg for _, dg in pairs),
                preperiod=tuple(pairs[:start]),
                cycle=tuple(pairs[start:]),
            )
        if len(trail) >= max_steps:
            raise StepLimitExceeded(f"no zero or cycle within {max_steps} steps")
        seen[s] = len(trail)
        k, nxt = step(s)
        trail.append((s, k))
        s = nxt
    return Expansion(digits=tuple(digits[k] for _, k in trail))


def evaluate_digits(gns: Gns, digit_string: Sequence) -> LatticeState:
    """Reduce ``sum d_j x^j`` modulo p (least significant digit first)."""
    d, n = gns.d, gns.n
    s = (0,) * (n * d)
    for raw in reversed(list(digit_string)):
        dg = raw if isinstance(raw, OElem) else _elem(gns.order, raw)
        if dg not in gns.digits:
            raise ForeignDigit(f"{dg.coords} is not a digit")
        s = linalg.mat_vec(gns.phi, s)
        s = tuple(a + b for a, b in zip(s, dg.coords + (0,) * (n * d - d)))
    return LatticeState.from_flat(s, d)


class Verdict(str, enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    NOT_EXPANSIVE = "NotExpansive"


@dataclass(frozen=True)
class Witness:
    """Evidence that the finiteness property fails.

    ``kind == "cycle"``: ``states[i] = x * states[i+1] + digits[i]`` cyclically,
    with some state non-zero. ``kind == "unrepresentable"``: the digit set is
    ``{0}`` and ``states[0]`` is a non-zero state, which no digit string reaches.
    """

    kind: str
    states: tuple[LatticeState, ...]
    digits: tuple[OElem, ...]

    @property
    def period(self) -> int:
        return len(self.states)

    def pairs(self) -> list[tuple[LatticeState, OElem]]:
        return list(zip(self.states, self.digits))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "period": self.period,
            "states": [s.to_list() for s in self.states],
            "digits": [list(dg.coords) for dg in self.digits],
        }


@dataclass(frozen=True)
class ContractionBound:
    """Bounds from the first power of phi^{-1} that contracts in the max norm."""

    k: int
    rho_k: Fraction
    digit_max: int
    C: Fraction
    C2: Fraction
    power_norms: tuple[Fraction, ...]  # ||phi^{-t}||, t = 0..k


def contraction_bound(
    phi_inv: linalg.Matrix, digit_max: int, cap: int = DEFAULT_CONTRACTION_CAP
) -> ContractionBound:
    """Least k with ``rho_k = ||phi^{-k}|| < 1``, then

    ``B_j = D_max * sum_{t=1..j} ||phi^{-t}||``, ``C = B_k / (1 - rho_k)``,
    ``C'' = max_{0<=j<k} (||phi^{-j}|| C + B_j)``.

    Every orbit eventually stays within ``C`` at multiples of k and within
    ``C''`` in between, so every cycle lies in the ball of radius ``C''``.
    """
    size = len(phi_inv)
    norms = [Fraction(1)]
    power = linalg.identity(size)
    for _ in range(cap):
        power = linalg.mat_mul(power, phi_inv)
        norms.append(Fraction(linalg.inf_norm(power)))
        if norms[-1] < 1:
            break
    else:
        raise ContractionSearchExceeded(f"no contracting power of phi^-1 up to {cap}")
    k = len(norms) - 1
    rho = norms[k]
    partial = [Fraction(0)]
    for t in range(1, k + 1):
        partial.append(partial[-1] + norms[t] * digit_max)
    C = partial[k] / (1 - rho)
    C2 = max(norms[j] * C + partial[j] for j in range(k))
    return ContractionBound(k, rho, digit_max, C, C2, tuple(norms))


def cycle_box(
    phi_inv: linalg.Matrix,
    digit_vectors: Sequence[Sequence[int]],
    bound: ContractionBound,
    max_terms: int = 512,
) -> tuple[int, ...]:
    """Per-coordinate bounds containing every periodic state.

    A periodic state equals ``-sum_{t>=1} phi^{-t} d_t`` for its digit sequence,
    so coordinate l is at most ``sum_t max_d |(phi^{-t} d)_l|``. The sum is
    taken exactly up to ``J*k`` terms and the tail is bounded by ``rho_k^J * C``.
    """
    size = len(phi_inv)
    d = len(digit_vectors[0])
    k, rho, C = bound.k, bound.rho_k, bound.C
    J = 1
    tail = rho * C
    while tail > Fraction(1, 2) and (J + 1) * k <= max_terms:
        J += 1
        tail *= rho
    # phi^{-t} = A^t / q^t with A integral; only the first d columns meet digits
    q = math.lcm(*(Fraction(x).denominator for row in phi_inv for x in row))
    A = tuple(tuple(int(x * q) for x in row) for row in phi_inv)
    cols = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(size))
    extremes = _extreme_points(digit_vectors)
    sums = [0] * size  # sum_t q^{T-t} max_d |(A^t d)_l|
    for _ in range(J * k):
        cols = linalg.mat_mul(A, cols)
        for l, row in enumerate(cols):
            best = max(abs(sum(a * b for a, b in zip(row, dv))) for dv in extremes)
            sums[l] = sums[l] * q + best
    denom = q ** (J * k)
    return tuple(int((Fraction(s, denom) + tail).__floor__()) for s in sums)


def _extreme_points(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """A subset of the vectors whose convex hull equals that of all of them."""
    pts = sorted(set(tuple(v) for v in vectors))
    if len(pts[0]) == 1:
        return [pts[0], pts[-1]]
    if len(pts[0]) != 2 or len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    hull: list[tuple[int, ...]] = []
    for seq in (pts, pts[::-1]):
        part: list[tuple[int, ...]] = []
        for p in seq:
            while len(part) >= 2 and cross(part[-2], part[-1], p) <= 0:
                part.pop()
            part.append(p)
        hull.extend(part[:-1])
    return hull


@dataclass(frozen=True)
class DecisionReport:
    verdict: Verdict
    np_poly: ZPoly
    strategy: str
    C2: Fraction | None = None
    k: int | None = None
    rho_k: Fraction | None = None
    search_bounds: tuple[int, ...] = ()
    states: int = 0
    cycles_found: int = 0
    witness: Witness | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "Np": list(self.np_poly.coeffs),
            "strategy": self.strategy,
            "C2": None if self.C2 is None else str(self.C2),
            "k": self.k,
            "rho_k": None if self.rho_k is None else str(self.rho_k),
            "search_bounds": list(self.search_bounds),
            "states": self.states,
            "cycles_found": self.cycles_found,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "elapsed_s": round(self.elapsed, 6),
        }


_IN_PROGRESS, _FINITE, _INFINITE = 0, 1, 2


def decide_finiteness(
    gns: Gns,
    *,
    strategy: str = "cycles",
    state_cap: int = DEFAULT_STATE_CAP,
    step_cap: int = DEFAULT_STEP_CAP,
    contraction_cap: int = DEFAULT_CONTRACTION_CAP,
) -> DecisionReport:
    """Decide whether every element of O[x]/(p) has a finite expansion.

    ``strategy="ball"`` classifies every state of max norm at most ``C''``.
    ``strategy="cycles"`` (default) classifies only the states inside
    :func:`cycle_box`, which already contains every cycle; both give the same
    verdict and witness, the second on far fewer states.
    """
    if strategy not in ("cycles", "ball"):
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    d, n = gns.d, gns.n
    size = n * d
    Np = gns.np_poly

    if abs(norm(gns.poly.coeffs[0])) == 1:
        e0 = LatticeState.from_flat((1,) + (0,) * (size - 1), d)
        wit = Witness("unrepresentable", (e0,), (gns.order.zero,))
        return DecisionReport(Verdict.INFINITE, Np, strategy, witness=wit, elapsed=time.perf_counter() - t0)
    if not is_expansive(Np):
        return DecisionReport(Verdict.NOT_EXPANSIVE, Np, strategy, elapsed=time.perf_counter() - t0)

    phi_inv = linalg.inverse(gns.phi)
    digit_vectors = [dg.coords for dg in gns.digits.digits]
    bound = contraction_bound(phi_inv, gns.digits.max_norm(), contraction_cap)
    if strategy == "ball":
        r = int(bound.C2.__floor__())
        bounds = (r,) * size
    else:
        bounds = cycle_box(phi_inv, digit_vectors, bound)
    total = 1
    for b in bounds:
        total *= 2 * b + 1
    if total > state_cap:
        raise StateSpaceExceeded(total, state_cap)

    status, cycles = _classify(gns, bounds, step_cap)
    witness = None
    if cycles:
        witness = _select_witness(gns, cycles)
    verdict = Verdict.INFINITE if cycles else Verdict.FINITE
    return DecisionReport(
        verdict,
        Np,
        strategy,
        C2=bound.C2,
        k=bound.k,
        rho_k=bound.rho_k,
        search_bounds=bounds,
        states=total,
        cycles_found=len(cycles),
        witness=witness,
        elapsed=time.perf_counter() - t0,
    )


def _classify(gns: Gns, bounds: Sequence[int], step_cap: int):
    step = gns._stepper.step
    zero = (0,) * len(bounds)
    status = {zero: _FINITE}
    cycles: list[list[tuple]] = []
    ranges = [range(-b, b + 1) for b in bounds]
    for start in itertools.product(*ranges):
        if start in status:
            continue
        path = []
        pos = {}
        s = start
        while s not in status:
            status[s] = _IN_PROGRESS
            pos[s] = len(path)
            path.append(s)
            if len(path) > step_cap:
                raise StepLimitExceeded(f"orbit longer than {step_cap} steps")
            s = step(s)[1]
        outcome = status[s]
        if outcome == _IN_PROGRESS:
            cycles.append(path[pos[s] :])
            outcome = _INFINITE
        for t in path:
            status[t] = outcome
    return status, cycles


def _select_witness(gns: Gns, cycles: list[list[tuple]]) -> Witness:
    best = min(cycles, key=lambda c: (min(c), len(c)))
    i = best.index(min(best))
    ordered = best[i:] + best[:i]
    step = gns._stepper.step
    digits = tuple(gns.digits.digits[step(s)[0]] for s in ordered)
    states = tuple(LatticeState.from_flat(s, gns.d) for s in ordered)
    return Witness("cycle", states, digits)


def verify_cycle_witness(gns: Gns, cycle) -> bool:
    """Check a claimed periodic orbit directly against ``state = x*next + digit``.

    Accepts a :class:`Witness` or a sequence of ``(state, digit)`` pairs. Any
    malformed input gives ``False``.
    """
    try:
        pairs = cycle.pairs() if isinstance(cycle, Witness) else list(cycle)
        if not pairs:
            return False
        d, size = gns.d, gns.d * gns.n
        flats, digs = [], []
        for state, dg in pairs:
            st = gns.state(state) if not isinstance(state, LatticeState) else state
            if len(st.flat) != size:
                return False
            dg = dg if isinstance(dg, OElem) else _elem(gns.order, dg)
            if dg not in gns.digits:
                return False
            flats.append(st.flat)
            digs.append(dg.coords + (0,) * (size - d))
        h = len(flats)
        for i in range(h):
            image = linalg.mat_vec(gns.phi, flats[(i + 1) % h])
            if tuple(a + b for a, b in zip(image, digs[i])) != flats[i]:
                return False
        return any(any(f) for f in flats)
    except (ValueError, TypeError, KeyError, IndexError, ZeroDivisor):
        return False
