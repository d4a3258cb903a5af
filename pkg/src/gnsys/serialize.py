"""JSON round-tripping for orders, polynomials, domains and problem specs.

Rationals are strings ``"p/q"`` (or plain integers). Coefficients and
elements are coordinate lists; a bare integer ``m`` stands for ``m * 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .domain import BoxDomain, UnionDomain, domain_from_residues
from .fixtures import ORDERS
from .opoly import OPoly
from .order import OElem, Order


def rational(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an integer or a 'p/q' string, got {value!r}")


def rational_str(x) -> str:
    return str(Fraction(x))


def order_from_json(obj) -> Order:
    if isinstance(obj, str):
        if obj not in ORDERS:
            raise ValueError(f"unknown order name {obj!r}; known: {sorted(ORDERS)}")
        return ORDERS[obj]()
    table = obj["table"]
    rank = obj.get("rank", len(table))
    if rank != len(table):
        raise ValueError(f"declared rank {rank} but table has {len(table)} rows")
    return Order(table, labels=tuple(obj.get("labels", ())), unit_coords=tuple(obj.get("unit", ())))


def elem_from_json(order: Order, value) -> OElem:
    if isinstance(value, bool):
        raise TypeError("booleans are not elements")
    if isinstance(value, int):
        return order.scalar(value)
    coords = tuple(value)
    if len(coords) != order.rank:
        raise ValueError(f"element {list(coords)} has wrong length for rank {order.rank}")
    return order(coords)


def poly_from_json(order: Order, obj) -> OPoly:
    coeffs = obj["coeffs"] if isinstance(obj, dict) else obj
    return OPoly(order, tuple(elem_from_json(order, c) for c in coeffs))


def domain_from_json(order: Order, obj) -> BoxDomain | UnionDomain:
    kind = obj.get("type", "box")
    if kind == "box":
        if obj.get("name") == "unit":
            return BoxDomain.unit_cube(order)
        if obj.get("name") == "symmetric":
            return BoxDomain.symmetric(order)
        basis = obj.get("basis") or [[int(i == j) for j in range(order.rank)] for i in range(order.rank)]
        offsets = [rational(o) for o in obj["offsets"]]
        return BoxDomain(order, tuple(tuple(b) for b in basis), tuple(offsets))
    if kind == "union":
        theta = elem_from_json(order, obj["theta"])
        return domain_from_residues(theta, [elem_from_json(order, d) for d in obj["digits"]])
    raise ValueError(f"unknown domain type {kind!r}")


@dataclass(frozen=True)
class ProblemSpec:
    """A parsed problem description; only the fields a command needs are required."""

    raw: dict
    order: Order

    @classmethod
    def from_json(cls, obj: dict) -> ProblemSpec:
        if not isinstance(obj, dict):
            raise ValueError("problem description must be a JSON object")
        if "order" not in obj:
            raise ValueError("problem description needs an 'order'")
        if "domain" in obj and "digits" in obj and "alpha" not in obj:
            raise ValueError("give either a domain or explicit digits, not both")
        return cls(obj, order_from_json(obj["order"]))

    def require(self, key: str) -> Any:
        if key not in self.raw:
            raise ValueError(f"problem description needs {key!r}")
        return self.raw[key]

    @property
    def poly(self) -> OPoly:
        return poly_from_json(self.order, self.require("poly"))

    @property
    def domain(self):
        return domain_from_json(self.order, self.require("domain"))

    def elem(self, key: str) -> OElem:
        return elem_from_json(self.order, self.require(key))

    def digit_elems(self) -> list[OElem]:
        return [elem_from_json(self.order, d) for d in self.require("digits")]
