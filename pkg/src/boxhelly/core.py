"""Exact rational intervals, axis-parallel boxes and their combinatorial parts.

Coordinates are :class:`fractions.Fraction` values throughout. Intervals are
closed and may be degenerate (``lo == hi``); this is how faces arise.

Axis indices are 0-based in code. Orderings are fixed so that every search
built on top of this module is reproducible:

* faces are axis-major, the ``lo`` face before the ``hi`` face;
* vertices follow a binary counter whose bit ``j`` selects the ``hi`` end
  on axis ``j``;
* a diagonal pair is listed once, from the vertex whose last-axis selector
  is ``lo``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionError

RationalLike = Union[int, str, Fraction]
Point = tuple[Fraction, ...]


def rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts integers, ``Fraction`` and strings in ``"p/q"`` or finite decimal
    form (``"1.25"`` becomes ``5/4``). Floats are refused: the library has no
    floating-point mode.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) or isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a finite rational: {value!r}") from None
    if isinstance(value, float):
        raise TypeError(f"float {value!r} refused; pass the exact value as a string or Fraction")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def point(coords: Iterable[RationalLike]) -> Point:
    p = tuple(rational(c) for c in coords)
    if not p:
        raise DimensionError("a point needs at least one coordinate")
    return p


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rational(self.lo))
        object.__setattr__(self, "hi", rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x: RationalLike) -> bool:
        x = rational(x)
        return self.lo <= x <= self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class AxisBox:
    """Product of closed rational intervals, one per axis."""

    sides: tuple[Interval, ...]

    def __post_init__(self):
        sides = tuple(s if isinstance(s, Interval) else Interval(*s) for s in self.sides)
        if not sides:
            raise DimensionError("a box needs at least one side")
        object.__setattr__(self, "sides", sides)

    @classmethod
    def from_bounds(cls, *bounds: tuple[RationalLike, RationalLike]) -> "AxisBox":
        """``AxisBox.from_bounds((0, 1), ("1/2", "3/2"))`` builds ``[0,1]x[1/2,3/2]``."""
        return cls(tuple(Interval(rational(lo), rational(hi)) for lo, hi in bounds))

    @property
    def dim(self) -> int:
        return len(self.sides)

    @property
    def lower(self) -> Point:
        return tuple(s.lo for s in self.sides)

    @property
    def upper(self) -> Point:
        return tuple(s.hi for s in self.sides)

    def projection(self, j: int) -> Interval:
        _check_axis(self.dim, j)
        return self.sides[j]

    def __str__(self):
        return " x ".join(str(s) for s in self.sides)


@dataclass(frozen=True)
class Vertex:
    point: Point
    selector: tuple[bool, ...]  # True selects the hi end on that axis


@dataclass(frozen=True)
class DiagonalPair:
    p: Vertex
    q: Vertex


def _check_axis(dim: int, j: int) -> None:
    if not isinstance(j, int) or not 0 <= j < dim:
        raise DimensionError(f"axis index {j!r} out of range for dimension {dim}")


def _same_dim(a: AxisBox, b: Union[AxisBox, Sequence]) -> None:
    db = b.dim if isinstance(b, AxisBox) else len(b)
    if a.dim != db:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {db}")


def interval_intersect(a: Interval, b: Interval) -> Optional[Interval]:
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo <= hi:
        return Interval(lo, hi)
    return None


def box_intersect(a: AxisBox, b: AxisBox) -> Optional[AxisBox]:
    _same_dim(a, b)
    sides = []
    for sa, sb in zip(a.sides, b.sides):
        s = interval_intersect(sa, sb)
        if s is None:
            return None
        sides.append(s)
    return AxisBox(tuple(sides))


def common_intersection(boxes: Iterable[AxisBox]) -> Optional[AxisBox]:
    """Fold :func:`box_intersect` over ``boxes``; ``None`` if empty at any step."""
    boxes = list(boxes)
    if not boxes:
        raise ValueError("common_intersection of no boxes")

    def step(acc, b):
        return None if acc is None else box_intersect(acc, b)

    return reduce(step, boxes[1:], boxes[0])


def intersects(a: AxisBox, b: AxisBox) -> bool:
    _same_dim(a, b)
    return all(sa.lo <= sb.hi and sb.lo <= sa.hi for sa, sb in zip(a.sides, b.sides))


def contains_point(b: AxisBox, p: Sequence[RationalLike]) -> bool:
    _same_dim(b, p)
    return all(s.lo <= rational(x) <= s.hi for s, x in zip(b.sides, p))


def axis_gap(a: AxisBox, b: AxisBox, j: int) -> Optional[Fraction]:
    """Distance between the projections of ``a`` and ``b`` on axis ``j``.

    ``None`` when the projections overlap (touching counts as overlap).
    """
    _same_dim(a, b)
    _check_axis(a.dim, j)
    pa, pb = a.sides[j], b.sides[j]
    if pa.hi < pb.lo:
        return pb.lo - pa.hi
    if pb.hi < pa.lo:
        return pa.lo - pb.hi
    return None


def faces(b: AxisBox) -> list[AxisBox]:
    out = []
    for j, side in enumerate(b.sides):
        for end in (side.lo, side.hi):
            sides = list(b.sides)
            sides[j] = Interval(end, end)
            out.append(AxisBox(tuple(sides)))
    return out


def vertices(b: AxisBox) -> list[Vertex]:
    d = b.dim
    out = []
    for code in range(1 << d):
        selector = tuple(bool(code >> j & 1) for j in range(d))
        coords = tuple(s.hi if sel else s.lo for s, sel in zip(b.sides, selector))
        out.append(Vertex(coords, selector))
    return out


def diagonal_pairs(b: AxisBox) -> list[DiagonalPair]:
    verts = vertices(b)
    full = (1 << b.dim) - 1
    # codes below 2^(d-1) have the last-axis selector at lo
    return [DiagonalPair(verts[code], verts[code ^ full]) for code in range(1 << (b.dim - 1))]


def vertex_of(b: AxisBox, selector: Sequence[bool]) -> Vertex:
    if len(selector) != b.dim:
        raise DimensionError("selector length must equal the box dimension")
    sel = tuple(bool(s) for s in selector)
    return Vertex(tuple(s.hi if x else s.lo for s, x in zip(b.sides, sel)), sel)


def box_from_corners(lo: Sequence[RationalLike], hi: Sequence[RationalLike]) -> AxisBox:
    if len(lo) != len(hi):
        raise DimensionError("corner dimensions differ")
    return AxisBox(tuple(Interval(rational(a), rational(b)) for a, b in zip(lo, hi)))
