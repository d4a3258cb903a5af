"""Number systems in Z[i] built from a generator alpha and integer digits.

Run with ``python3 notebooks/03_generators.py``.
"""

from __future__ import annotations

from gnsys import decide_finiteness, number_system_from_generator
from gnsys.errors import GnsError
from gnsys.fixtures import gaussian

ZI = gaussian()

for a, b in [(-1, 1), (1, 1), (-2, 1), (-3, 1), (0, 2), (2, 0)]:
    alpha = ZI(a, b)
    n = abs(a * a + b * b)
    try:
        red = number_system_from_generator(ZI, alpha, list(range(n)))
    except GnsError as exc:
        print(f"alpha={a}+{b}i: {type(exc).__name__}")
        continue
    verdict = decide_finiteness(red.gns).verdict.value
    print(f"alpha={a}+{b}i: min poly {list(red.poly.coeffs)}, index {red.index}, {verdict}")
