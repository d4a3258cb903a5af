"""Shifts p(x + m) and p(x - m) over Z x Z and over Z.

Run with ``python3 notebooks/02_split_order_shifts.py``.
"""

from __future__ import annotations

from gnsys import BoxDomain, OPoly, negative_shift_witness, scan_negative_shifts, scan_positive_shifts
from gnsys.fixtures import integers, skew_box, split

Z, ZZ = integers(), split(2)

p = OPoly.from_components(ZZ, (1, 1, 1), (3, 0, 1))  # (x^2 + x + 1, x^2 + 3)
for name, F in (("unit square", BoxDomain.unit_cube(ZZ)), ("skew box", skew_box(ZZ))):
    rep = scan_positive_shifts(ZZ, p, F, 1, 5)
    print(f"{name}: " + ", ".join(f"m={r.m}:{r.verdict}({r.digits})" for r in rep.rows))
    print("  empirical N =", rep.empirical_N)

x2 = OPoly.from_coords(Z, [0, 0, 1])
rep = scan_negative_shifts(Z, x2, BoxDomain.unit_cube(Z), 1, 8)
print("\nx^2, negative shifts:", [(r.m, r.verdict, r.witness_source) for r in rep.rows])
w = negative_shift_witness(Z, x2, BoxDomain.unit_cube(Z), 4)
print("fixed point for m=4:", w.to_dict())
