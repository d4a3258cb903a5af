from __future__ import annotations

from hypothesis import strategies as st

from gnsys.fixtures import cubic_root_two, dual_numbers, gaussian, integers, split
from gnsys.order import norm

ORDERS = [integers(), gaussian(), split(2), cubic_root_two(), dual_numbers()]

orders = st.sampled_from(ORDERS)


def elements(order, bound: int = 5):
    return st.tuples(*[st.integers(-bound, bound)] * order.rank).map(order)


def nonzero_divisors(order, bound: int = 4):
    return elements(order, bound).filter(lambda a: norm(a) != 0)


def monic_polys(order, max_degree: int = 3, bound: int = 4):
    from gnsys.opoly import OPoly

    return st.integers(1, max_degree).flatmap(
        lambda n: st.lists(elements(order, bound), min_size=n, max_size=n).map(
            lambda cs: OPoly(order, tuple(cs) + (order.one,))
        )
    )
