"""Tight instances for the Helly-type numbers of boxes.

The 2-piercing lower-bound system in R^d has 3d - 1 classes of three boxes.
Classes are numbered from 1 in names (``B[k, c]`` is box ``c`` of class
``k``), and from 0 in the ``ColorSystem``.

For each axis i the pair of classes 2i-1, 2i restricts only coordinate i
(every other axis spans [-4, 4]):

    class 2i-1:  [-4, -2]   [-1, 0]     [5/4, 3]
    class 2i:    [2, 4]     [1, 3/2]    [-5/2, -3/2]

and for k = 1 .. d-1 class 2d+k restricts axis 1 and axis a = d-k+1
(every other axis spans [-5, 5]):

    box 1:  x_1 in [-5, 1/4],  x_a in [-5, 1/4]
    box 2:  x_1 in [-5, 1/4],  x_a in [3/4, 5]
    box 3:  x_1 in [3/4, 5],   x_a in [3/4, 5]

With these coordinates the colorful tuple (B[1,2], B[2,3], ..., B[2d+1,3])
is not 2-pierceable once d >= 2: on axis 1 the three boxes occupy
[-1, 0], [-5/2, -3/2] and [3/4, 5]. ``variant="amended"`` widens
B[2i, 3] on its axis to [-5/2, -1], the smallest change that makes the
per-axis lookup (``AXIS_TABLE``) hit both boxes of every pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import AxisBox, Interval, Point, contains_point
from .errors import WitnessError
from .piercing import ColorSystem, Family

F = Fraction

ODD_SIDES = ((F(-4), F(-2)), (F(-1), F(0)), (F(5, 4), F(3)))
EVEN_SIDES = ((F(2), F(4)), (F(1), F(3, 2)), (F(-5, 2), F(-3, 2)))
EVEN_SIDES_AMENDED = ((F(2), F(4)), (F(1), F(3, 2)), (F(-5, 2), F(-1)))
AXIS_SPAN = (F(-4), F(4))

LOW = (F(-5), F(1, 4))
HIGH = (F(3, 4), F(5))
EXTRA_PATTERNS = ((LOW, LOW), (LOW, HIGH), (HIGH, HIGH))  # (axis 1, axis d-k+1)
EXTRA_SPAN = (F(-5), F(5))

# (choice in class 2j-1, choice in class 2j) -> (alpha_j, beta_j); choices 1-based
AXIS_TABLE = {
    (1, 1): (F(-2), F(2)),
    (1, 2): (F(-2), F(1)),
    (1, 3): (F(-2), F(2)),
    (2, 1): (F(0), F(2)),
    (2, 2): (F(0), F(1)),
    (2, 3): (F(-1), F(1)),
    (3, 1): (F(0), F(2)),
    (3, 2): (F(0), F(3, 2)),
    (3, 3): (F(-2), F(2)),
}

# choice in class 2d+k -> whether X takes beta (instead of alpha) on axis d-k+1
SWAP_TABLE = {1: False, 2: True, 3: False}

VARIANTS = ("paper", "amended")


@dataclass(frozen=True)
class LowerBoundSystem:
    system: ColorSystem
    d: int
    variant: str = "paper"

    def box(self, k: int, c: int) -> AxisBox:
        """Box ``c`` of class ``k``, both 1-based as in ``B[k, c]``."""
        return self.system.classes[k - 1][c - 1]


def gen_interval_tight(n: int) -> Family:
    """n + 1 pairwise disjoint unit intervals [2i, 2i+1]."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return Family(tuple(AxisBox((Interval(F(2 * i), F(2 * i + 1)),)) for i in range(n + 1)))


def extra_axis(d: int, k: int) -> int:
    """0-based axis restricted (besides axis 0) by class 2d+k."""
    return d - k


def gen_lowerbound_2piercing(d: int, variant: str = "paper") -> LowerBoundSystem:
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive integer")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    even = EVEN_SIDES if variant == "paper" else EVEN_SIDES_AMENDED
    classes = []
    for i in range(d):
        for pattern in (ODD_SIDES, even):
            boxes = []
            for lo, hi in pattern:
                sides = [Interval(*AXIS_SPAN)] * d
                sides[i] = Interval(lo, hi)
                boxes.append(AxisBox(tuple(sides)))
            classes.append(Family(tuple(boxes)))
    for k in range(1, d):
        a = extra_axis(d, k)
        boxes = []
        for first, other in EXTRA_PATTERNS:
            sides = [Interval(*EXTRA_SPAN)] * d
            sides[0] = Interval(*first)
            sides[a] = Interval(*other)
            boxes.append(AxisBox(tuple(sides)))
        classes.append(Family(tuple(boxes)))
    return LowerBoundSystem(ColorSystem(tuple(classes)), d, variant)


def axis_values(sys: LowerBoundSystem, choice: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """(alpha_j, beta_j) for every axis, from the first 2d picks (0-based)."""
    return [AXIS_TABLE[(choice[2 * j] + 1, choice[2 * j + 1] + 1)] for j in range(sys.d)]


def witness_from_tables(
    sys: LowerBoundSystem, choice: Sequence[int], reading: str = "axis"
) -> tuple[Point, Point]:
    """Diagonal pair (X, Y) of D = prod [alpha_j, beta_j] hitting the tuple.

    ``choice`` holds one 0-based box index per class. On each extra axis the
    swap table decides whether X takes alpha or beta there. ``reading``
    picks which axis values feed that lookup: ``"axis"`` uses the values of
    the axis being set (d-k+1), ``"literal"`` uses those of axis k. Raises
    :class:`WitnessError` naming the first missed box if validation fails.
    """
    d = sys.d
    if len(choice) != 3 * d - 1:
        raise ValueError(f"need {3 * d - 1} picks, got {len(choice)}")
    if any(not 0 <= c <= 2 for c in choice):
        raise ValueError("picks must be 0, 1 or 2")
    if reading not in ("axis", "literal"):
        raise ValueError("reading must be 'axis' or 'literal'")
    vals = axis_values(sys, choice)
    x = [v[0] for v in vals]
    y = [v[1] for v in vals]
    for k in range(1, d):
        a = extra_axis(d, k)
        alpha, beta = vals[a] if reading == "axis" else vals[k - 1]
        if SWAP_TABLE[choice[2 * d + k - 1] + 1]:
            x[a], y[a] = beta, alpha
        else:
            x[a], y[a] = alpha, beta
    X, Y = tuple(x), tuple(y)
    for k, box in enumerate(sys.system.tuple_boxes(choice)):
        if not (contains_point(box, X) or contains_point(box, Y)):
            raise WitnessError(
                f"table witness misses B[{k + 1},{choice[k] + 1}] = {box} ({reading} reading)",
                offending=(k, choice[k]),
            )
    return X, Y


def table_box(sys: LowerBoundSystem, choice: Sequence[int]) -> AxisBox:
    """The box D spanned by the table values of ``choice``."""
    return AxisBox(tuple(Interval(a, b) for a, b in axis_values(sys, choice)))


def all_choices(sys: LowerBoundSystem):
    return itertools.product(range(3), repeat=3 * sys.d - 1)
