"""Small standard orders and fundamental domains."""

from __future__ import annotations

from fractions import Fraction

from .domain import BoxDomain
from .order import Order


def integers() -> Order:
    return Order((((1,),),), labels=("1",))


def gaussian() -> Order:
    """Z[i] with basis 1, i."""
    return Order((((1, 0), (0, 1)), ((0, 1), (-1, 0))), labels=("1", "i"))


def split(k: int = 2) -> Order:
    """Z^k with componentwise product; coordinates are the components, unit (1, .., 1)."""
    table = tuple(
        tuple(tuple(int(i == j == l) for l in range(k)) for j in range(k)) for i in range(k)
    )
    return Order(table, labels=tuple(f"e{i + 1}" for i in range(k)), unit_coords=(1,) * k)


def cubic_root_two() -> Order:
    """Z[t] with t^3 = 2, basis 1, t, t^2."""
    def power(e):
        v = [0, 0, 0]
        if e < 3:
            v[e] = 1
        else:
            v[e - 3] = 2
        return tuple(v)

    table = tuple(tuple(power(i + j) for j in range(3)) for i in range(3))
    return Order(table, labels=("1", "t", "t^2"))


def dual_numbers() -> Order:
    """Z[e] with e^2 = 0; not etale."""
    return Order((((1, 0), (0, 1)), ((0, 1), (0, 0))), labels=("1", "e"))


def skew_box(order: Order | None = None) -> BoxDomain:
    """Box on Z x Z spanned by (1, 1) and (0, 1) with offsets (0, -1/2)."""
    order = order or split(2)
    return BoxDomain(order, ((1, 1), (0, 1)), (Fraction(0), Fraction(-1, 2)))


ORDERS = {
    "Z": integers,
    "Z[i]": gaussian,
    "ZxZ": split,
    "Z[cbrt2]": cubic_root_two,
    "dual": dual_numbers,
}
