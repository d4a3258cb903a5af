"""Radix systems over the integers: expansions, decisions, and the quadratic grid.

Run with ``python3 notebooks/01_integer_bases.py``.
"""

from __future__ import annotations

from gnsys import BoxDomain, OPoly, Verdict, decide_finiteness, digit_set, expand, make_gns
from gnsys.fixtures import integers

Z = integers()
UNIT = BoxDomain.unit_cube(Z)


def gns(coeffs):
    p = OPoly.from_coords(Z, coeffs)
    return make_gns(Z, p, digit_set(UNIT, p.coeffs[0]))


# base -2 with digits {0, 1}: every integer has a finite expansion
g = gns([2, 1])
for a in (-5, -1, 0, 7):
    digits = "".join(str(d.coords[0]) for d in expand(g, a).digits)
    print(f"{a:>3} = {digits or '(empty)'} in base -2 (least significant first)")

# base 2 with the induced digits {-1, 0} (p(0) = -2): 1 = 2*1 - 1 is a fixed point
r = decide_finiteness(gns([-2, 1]))
print("base 2:", r.verdict.value, "witness", [s.to_list() for s in r.witness.states])

# quadratics x^2 + Bx + C with digits {0..C-1}
print("\n    C=" + "".join(f"{C:>3}" for C in range(2, 9)))
for B in range(-3, 10):
    row = "".join("  F" if decide_finiteness(gns([C, B, 1])).verdict == Verdict.FINITE else "  ." for C in range(2, 9))
    print(f"B={B:>3} {row}")
