"""Independent reference computations used by the tests.

Nothing here calls the engine's stepper, SNF residue map, or Schur-Cohn test.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import sympy

from gnsys import linalg
from gnsys.domain import BoxDomain, digit_set
from gnsys.fixtures import cubic_root_two, dual_numbers, gaussian, integers, split
from gnsys.opoly import OPoly, companion_operator
from gnsys.order import norm


def quadratic_cns(B: int, C: int) -> bool:
    """x^2 + Bx + C with digits {0..C-1}, C >= 2: finite iff -1 <= B <= C."""
    assert C >= 2
    return -1 <= B <= C


def sympy_charpoly(M) -> tuple[int, ...]:
    x = sympy.Symbol("x")
    P = sympy.Matrix(M).charpoly(x).all_coeffs()
    return tuple(int(c) for c in reversed(P))


def _box_side(box) -> int:
    """+1 if the closed rectangle lies outside the closed unit disk, -1 if inside
    the open disk, 0 if undecided."""
    (x0, y0), (x1, y1) = box
    xs = (Fraction(str(x0)), Fraction(str(x1)))
    ys = (Fraction(str(y0)), Fraction(str(y1)))
    near = (min(v * v for v in xs) if xs[0] * xs[1] > 0 else 0) + (
        min(v * v for v in ys) if ys[0] * ys[1] > 0 else 0
    )
    far = max(v * v for v in xs) + max(v * v for v in ys)
    return 1 if near > 1 else (-1 if far < 1 else 0)


def roots_outside_unit_disk(coeffs) -> bool:
    """Exact check via sympy: every root has modulus > 1.

    Roots on the unit circle are caught by a common factor with the reciprocal
    polynomial. The others are isolated in rational rectangles, refined until
    each rectangle is clearly inside or outside the circle.
    """
    x = sympy.Symbol("x")
    P = sympy.Poly(list(reversed(coeffs)), x)
    if sympy.gcd(P, sympy.Poly(list(coeffs), x)).degree() > 0:
        return False
    eps = Fraction(1, 4)
    while True:
        real, cplx = P.intervals(all=True, eps=eps)
        boxes = [((a, 0), (b, 0)) for (a, b), _ in real]
        boxes += [((sympy.re(a), sympy.im(a)), (sympy.re(b), sympy.im(b))) for (a, b), _ in cplx]
        sides = [_box_side(b) for b in boxes]
        if -1 in sides:
            return False
        if all(v == 1 for v in sides):
            return True
        eps /= 16


def substitute_shift(p: OPoly, alpha) -> list:
    """p(x + alpha) by expanding each (x + alpha)^j with binomial coefficients."""
    O = p.order
    n = p.degree
    out = [O.zero] * (n + 1)
    for j, c in enumerate(p.coeffs):
        for i in range(j + 1):
            out[i] = out[i] + c * (alpha ** (j - i)) * math.comb(j, i)
    return out


def brute_residue_count(theta, box: int) -> int:
    """Number of classes mod theta*O met by coordinate vectors in [0, box)^d."""
    O = theta.order
    Minv = linalg.inverse(O.mul_matrix_coords(theta.coords))
    seen = []
    for v in itertools.product(range(box), repeat=O.rank):
        for w in seen:
            diff = tuple(a - b for a, b in zip(v, w))
            if all(Fraction(x).denominator == 1 for x in linalg.mat_vec(Minv, diff)):
                break
        else:
            seen.append(v)
    return len(seen)


class NaiveClassifier:
    """Brute-force finiteness check over every state of max norm <= radius.

    Each step tries every digit and keeps the one making
    ``adj(phi) (v - d)`` divisible by ``det(phi)``; that quotient is the next
    state. Each start state is iterated with its own visited set.
    """

    def __init__(self, gns):
        phi = companion_operator(gns.order, gns.poly)
        self.det = linalg.det(phi)
        inv = linalg.inverse(phi)
        self.adj = tuple(tuple(int(x * self.det) for x in row) for row in inv)
        size = len(phi)
        d = gns.order.rank
        self.digits = [dg.coords + (0,) * (size - d) for dg in gns.digits.digits]
        self.size = size

    def step(self, v):
        hits = []
        for dg in self.digits:
            w = [sum(a * (x - y) for a, x, y in zip(row, v, dg)) for row in self.adj]
            if all(c % self.det == 0 for c in w):
                hits.append(tuple(c // self.det for c in w))
        assert len(hits) == 1, "digit set is not a residue system"
        return hits[0]

    def classify(self, radius: int, step_cap: int = 100_000):
        """Return (all_finite, cyclic_states)."""
        zero = (0,) * self.size
        finite = {zero}
        cyclic: set = set()
        doomed: set = set()  # states whose orbit reaches a cycle
        rng = range(-radius, radius + 1)
        for start in itertools.product(rng, repeat=self.size):
            visited = []
            seen = set()
            v = start
            while v not in finite and v not in seen and v not in doomed:
                seen.add(v)
                visited.append(v)
                assert len(visited) <= step_cap
                v = self.step(v)
            if v in finite:
                finite.update(visited)
                continue
            if v in seen:
                # walk the new loop once to record its members
                u = v
                while True:
                    cyclic.add(u)
                    u = self.step(u)
                    if u == v:
                        break
            doomed.update(visited)
        return not cyclic, cyclic


def contraction_radius(gns) -> Fraction:
    """C'' recomputed from its defining formula with sympy matrices."""
    phi = sympy.Matrix(companion_operator(gns.order, gns.poly))
    inv = phi.inv()
    Dmax = max(max(abs(c) for c in dg.coords) for dg in gns.digits.digits)

    def nrm(M):
        return max(sum(abs(M[i, j]) for j in range(M.cols)) for i in range(M.rows))

    norms = [sympy.Integer(1)]
    P = sympy.eye(phi.rows)
    while True:
        P = P * inv
        norms.append(nrm(P))
        if norms[-1] < 1:
            break
    k = len(norms) - 1
    B = [sum(norms[1 : j + 1], sympy.Integer(0)) * Dmax for j in range(k + 1)]
    C = B[k] / (1 - norms[k])
    C2 = max(norms[j] * C + B[j] for j in range(k))
    return Fraction(int(sympy.fraction(C2)[0]), int(sympy.fraction(C2)[1]))


CORPUS_ORDERS = {
    "Z": integers,
    "Z[i]": gaussian,
    "ZxZ": split,
    "Z[cbrt2]": cubic_root_two,
    "dual": dual_numbers,
}


def gns_corpus(count: int, seed: int, ball_cap: int):
    """Seeded random GNS with nd <= 4, 2 <= |N(p_0)| <= 6, coefficients in
    [-4, 4], and digit sets from unit or symmetric boxes, sometimes with
    digits moved by small multiples of p_0.

    Returns ``(instances, skipped)``. Each instance is ``(label, gns, radius)``
    with radius = floor(C''), or ``None`` for non-expansive ones. Generation
    stops once ``count`` expansive instances are collected. Expansive
    instances whose C''-ball has more than ``ball_cap`` states go to
    ``skipped`` instead.
    """
    from gnsys.engine import make_gns
    from gnsys.opoly import is_expansive

    rng = random.Random(seed)
    orders = {name: f() for name, f in CORPUS_ORDERS.items()}
    out, skipped = [], []
    seen = set()
    expansive = 0
    while expansive < count:
        name = rng.choice(sorted(orders))
        O = orders[name]
        d = O.rank
        n = rng.randint(1, 4 // d)
        coeffs = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(n)] + [O.unit_coords]
        key = (name, tuple(coeffs))
        p = OPoly.from_coords(O, coeffs)
        N = abs(norm(p.coeffs[0]))
        if not 2 <= N <= 6:
            continue
        F = rng.choice([BoxDomain.unit_cube(O), BoxDomain.symmetric(O)])
        D = digit_set(F, p.coeffs[0])
        if rng.random() < 0.3:
            # move each non-zero digit by a random small multiple of p_0
            D = [dg + p.coeffs[0] * O(tuple(rng.randint(-1, 1) for _ in range(d))) if not dg.is_zero() else dg for dg in D]
            if any(max(abs(c) for c in dg.coords) > 6 for dg in D):
                continue
        gns = make_gns(O, p, D)
        key = key + (tuple(sorted(dg.coords for dg in gns.digits)),)
        if key in seen:
            continue
        seen.add(key)
        if not is_expansive(gns.np_poly):
            out.append((f"{name} {coeffs}", gns, None))
            continue
        radius = math.floor(contraction_radius(gns))
        if (2 * radius + 1) ** (n * d) > ball_cap:
            skipped.append(f"{name} {coeffs}")
            continue
        out.append((f"{name} {coeffs}", gns, radius))
        expansive += 1
    return out, skipped
