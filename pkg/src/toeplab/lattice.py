"""Lattice characters of the torus and linear group orders on the dual.

A character of T^d (or of T^infinity with finite support) is identified with
its integer exponent vector, stored sparsely.  Three order families are
built in:

* ``lex(d)``   -- lexicographic on Z^d, first nonzero coordinate decides;
* ``colex()``  -- on finitely supported integer sequences, last nonzero
  coordinate decides;
* ``weight(p, q)`` -- rank-one weight order on Z^2 comparing p*x0 + q*x1
  exactly in integer arithmetic (p/q a high-precision approximant of an
  irrational slope), with a lexicographic tiebreak on the null set.

Order comparisons never touch floating point, so they are exact and
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import product
from typing import Iterable, Iterator, Mapping

LESS, EQUAL, GREATER = -1, 0, 1

# weight orders store alpha as p/q with q at least this large, so order
# decisions inside any desk-scale box agree with the true irrational slope
MIN_WEIGHT_DENOMINATOR = 10**12
_DEFAULT_WEIGHT_DENOMINATOR = 10**15


class DimensionMismatchError(ValueError):
    """Point support exceeds the order's dimension."""


class CountNotEnumerableError(ValueError):
    """The order has no enumerable ladder of smallest positive points."""


@dataclass(frozen=True)
class LatticePoint:
    """Finitely supported integer vector in canonical sparse form.

    ``entries`` holds (axis, exponent) pairs, sorted by axis, with no zero
    exponent stored.
    """

    entries: tuple[tuple[int, int], ...]

    @staticmethod
    def of(vector: Iterable[int]) -> "LatticePoint":
        """Build from a dense vector, e.g. ``LatticePoint.of((0, 3))``."""
        return LatticePoint(
            tuple((i, int(v)) for i, v in enumerate(vector) if int(v) != 0)
        )

    @staticmethod
    def from_entries(entries: Mapping[int, int]) -> "LatticePoint":
        return LatticePoint(
            tuple(sorted((int(i), int(v)) for i, v in entries.items() if int(v) != 0))
        )

    @staticmethod
    def unit(axis: int) -> "LatticePoint":
        return LatticePoint(((axis, 1),))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    @property
    def active_dim(self) -> int:
        """1 + max support axis; 0 for the zero point."""
        return self.entries[-1][0] + 1 if self.entries else 0

    def exponent(self, axis: int) -> int:
        for i, v in self.entries:
            if i == axis:
                return v
        return 0

    def to_vector(self, dim: int | None = None) -> tuple[int, ...]:
        n = self.active_dim if dim is None else dim
        if n < self.active_dim:
            raise ValueError(f"dim {n} too small for support {self.support}")
        vec = [0] * n
        for i, v in self.entries:
            vec[i] = v
        return tuple(vec)

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        acc = dict(self.entries)
        for i, v in other.entries:
            acc[i] = acc.get(i, 0) + v
        return LatticePoint.from_entries(acc)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(tuple((i, -v) for i, v in self.entries))

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return self + (-other)

    def __mul__(self, k: int) -> "LatticePoint":
        if k == 0:
            return ZERO
        return LatticePoint(tuple((i, k * v) for i, v in self.entries))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.is_zero:
            return "LatticePoint(0)"
        return f"LatticePoint{self.to_vector()}"


ZERO = LatticePoint(())


@dataclass(frozen=True)
class OrderSpec:
    """A linear group order on the dual lattice.

    Only the three built-in families are accepted; general weight-matrix
    orders are rejected at construction because finiteness of order
    intervals is not uniformly decidable.
    """

    family: str
    d: int | None = None
    alpha_num: int | None = None
    alpha_den: int | None = None

    def __post_init__(self) -> None:
        if self.family == "lex":
            if not isinstance(self.d, int) or self.d < 1:
                raise ValueError("lex order needs a dimension d >= 1")
        elif self.family == "colex":
            if self.d is not None:
                raise ValueError("colex order has unbounded dimension")
        elif self.family == "weight":
            if self.d not in (None, 2):
                raise ValueError("weight order is two-dimensional")
            object.__setattr__(self, "d", 2)
            num, den = self.alpha_num, self.alpha_den
            if not isinstance(num, int) or not isinstance(den, int) or den <= 0 or num <= 0:
                raise ValueError("weight order needs positive integers alpha_num, alpha_den")
            if den < MIN_WEIGHT_DENOMINATOR:
                raise ValueError(
                    f"weight denominator must be >= {MIN_WEIGHT_DENOMINATOR} "
                    "to pin the slope to high precision"
                )
        else:
            raise ValueError(f"unknown order family {self.family!r}")

    @staticmethod
    def lex(d: int) -> "OrderSpec":
        return OrderSpec("lex", d=d)

    @staticmethod
    def colex() -> "OrderSpec":
        return OrderSpec("colex")

    @staticmethod
    def weight(alpha_num: int, alpha_den: int) -> "OrderSpec":
        return OrderSpec("weight", alpha_num=alpha_num, alpha_den=alpha_den)

    @staticmethod
    def weight_sqrt(n: int, den: int = _DEFAULT_WEIGHT_DENOMINATOR) -> "OrderSpec":
        """Weight order with slope sqrt(n), n a non-square positive integer."""
        if n < 2 or math.isqrt(n) ** 2 == n:
            raise ValueError("slope must be the square root of a non-square integer > 1")
        return OrderSpec("weight", alpha_num=math.isqrt(n * den * den), alpha_den=den)

    @property
    def bounded_dim(self) -> int | None:
        """Dimension bound on point support, or None for colex."""
        return self.d

    def to_json_dict(self) -> dict:
        if self.family == "lex":
            return {"family": "lex", "d": self.d}
        if self.family == "colex":
            return {"family": "colex"}
        return {"family": "weight", "alpha_num": self.alpha_num, "alpha_den": self.alpha_den}

    @staticmethod
    def from_json_dict(obj: Mapping) -> "OrderSpec":
        family = obj.get("family")
        if family == "lex":
            return OrderSpec.lex(int(obj["d"]))
        if family == "colex":
            return OrderSpec.colex()
        if family == "weight":
            return OrderSpec.weight(int(obj["alpha_num"]), int(obj["alpha_den"]))
        raise ValueError(f"unknown order family {family!r}")


@dataclass(frozen=True)
class XiSubgroup:
    """The subgroup of characters with finite order interval below them.

    Either trivial or infinite cyclic with a positive generator of index 1.
    """

    generator: LatticePoint | None

    @property
    def is_trivial(self) -> bool:
        return self.generator is None


def _check_dims(order: OrderSpec, *points: LatticePoint) -> None:
    bound = order.bounded_dim
    if bound is None:
        return
    for p in points:
        if p.active_dim > bound:
            raise DimensionMismatchError(
                f"point with support {p.support} exceeds order dimension {bound}"
            )


def _sign(order: OrderSpec, x: LatticePoint) -> int:
    if x.is_zero:
        return EQUAL
    if order.family == "lex":
        # first nonzero coordinate decides
        return GREATER if x.entries[0][1] > 0 else LESS
    if order.family == "colex":
        # last nonzero coordinate decides
        return GREATER if x.entries[-1][1] > 0 else LESS
    # weight: exact sign of alpha*x0 + x1, scaled by the denominator
    value = order.alpha_num * x.exponent(0) + order.alpha_den * x.exponent(1)
    if value > 0:
        return GREATER
    if value < 0:
        return LESS
    # rational tie (unreachable for desk-scale points): lex tiebreak keeps
    # the comparison a total group order
    return GREATER if x.entries[0][1] > 0 else LESS


def compare(x: LatticePoint, y: LatticePoint, order: OrderSpec) -> int:
    """Total, translation-invariant comparison; returns LESS/EQUAL/GREATER."""
    _check_dims(order, x, y)
    return _sign(order, x - y)


def is_positive(x: LatticePoint, order: OrderSpec) -> bool:
    """Membership in the positive cone (the zero point included)."""
    _check_dims(order, x)
    return _sign(order, x) >= EQUAL


def sort_key(order: OrderSpec):
    """Sort key putting lattice points in ascending order."""
    return cmp_to_key(lambda a, b: compare(a, b, order))


def xi_subgroup(order: OrderSpec) -> XiSubgroup:
    """Subgroup of finite-index characters: trivial for weight orders,
    infinite cyclic along the slowest axis otherwise."""
    if order.family == "lex":
        return XiSubgroup(LatticePoint.unit(order.d - 1))
    if order.family == "colex":
        return XiSubgroup(LatticePoint.unit(0))
    return XiSubgroup(None)


def ind_character(chi: LatticePoint, order: OrderSpec) -> int | None:
    """Index of a character: the number of cone points strictly below it.

    Returns the (signed) count for characters on the finite-index axis,
    extended to negative characters by ind(-chi) = -ind(chi); None when the
    count is infinite.
    """
    _check_dims(order, chi)
    if chi.is_zero:
        return 0
    xi = xi_subgroup(order)
    if xi.is_trivial:
        return None
    axis = xi.generator.entries[0][0]
    if chi.support != (axis,):
        return None
    return chi.exponent(axis)


def brute_interval_points(
    chi: LatticePoint,
    order: OrderSpec,
    box_radius: int,
    dims: int | None = None,
) -> list[LatticePoint]:
    """Exhaustive-scan oracle for the order interval [0, chi).

    Enumerates every cone point strictly below ``chi`` with sup-norm at most
    ``box_radius``, sorted ascending.  The count is a lower-bound witness for
    the character index; it stabilizes as the box grows exactly when the
    index is finite.
    """
    if box_radius < 1:
        raise ValueError("box_radius must be positive")
    _check_dims(order, chi)
    if _sign(order, chi) < EQUAL:
        raise ValueError("chi must be in the positive cone")
    if dims is None:
        dims = order.bounded_dim if order.bounded_dim is not None else chi.active_dim + 1
        dims = max(dims, 1)
    found = []
    rng = range(-box_radius, box_radius + 1)
    for vec in product(rng, repeat=dims):
        tau = LatticePoint.of(vec)
        if _sign(order, tau) >= EQUAL and _sign(order, chi - tau) == GREATER:
            found.append(tau)
    found.sort(key=sort_key(order))
    return found


def cone_box_points(order: OrderSpec, box_radius: int, dims: int | None = None) -> Iterator[LatticePoint]:
    """All positive-cone points of the sup-norm box, in scan order."""
    if dims is None:
        if order.bounded_dim is None:
            raise ValueError("colex box enumeration needs an explicit dims")
        dims = order.bounded_dim
    rng = range(-box_radius, box_radius + 1)
    for vec in product(rng, repeat=dims):
        p = LatticePoint.of(vec)
        if _sign(order, p) >= EQUAL:
            yield p
