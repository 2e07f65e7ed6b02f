"""Exact n-piercing decisions for families of axis-parallel boxes.

Every predicate used here depends only on the relative order of coordinates,
so each family is first replaced by its per-axis rank image (small integers).
Witness points are mapped back to the original rationals before they leave
the module. Nothing is ever rounded.

Two deciders are available:

``grid``
    The candidate-grid recursion. Some piercing point hits the first
    unpierced box; snapping it to the coordinate-wise maximum of the lower
    endpoints of the boxes it hits keeps every hit, so candidates are grid
    points of lower endpoints lying in that box. The family is n-pierceable
    iff the boxes missed by some candidate are (n-1)-pierceable. Base case
    n = 1 is a common-intersection test.
``auto``
    Same recursion, but n <= 2 is decided on the disjointness graph: boxes
    are 1-pierceable iff pairwise intersecting, so a family is 2-pierceable
    iff its disjointness graph is bipartite. One-dimensional families use
    the right-endpoint greedy sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .core import AxisBox, Interval, Point, contains_point
from .errors import DimensionError, PremiseViolation, WitnessError

VIOLATION_BUDGET = 200_000  # subset checks spent looking for a small violation
MEMO_LIMIT = 24


@dataclass(frozen=True)
class Family:
    """An ordered family of boxes of a common dimension."""

    boxes: tuple[AxisBox, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        boxes = tuple(self.boxes)
        object.__setattr__(self, "boxes", boxes)
        dims = {b.dim for b in boxes}
        if len(dims) > 1:
            raise DimensionError(f"mixed dimensions in family: {sorted(dims)}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(boxes):
                raise ValueError("labels must match boxes one to one")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        if not self.boxes:
            raise ValueError("empty family has no dimension")
        return self.boxes[0].dim

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    def __getitem__(self, i):
        return self.boxes[i]

    def subfamily(self, indices: Iterable[int]) -> "Family":
        idx = list(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return Family(tuple(self.boxes[i] for i in idx), labels)


@dataclass(frozen=True)
class ColorSystem:
    """Ordered color classes; every class is non-empty."""

    classes: tuple[Family, ...]

    def __post_init__(self):
        classes = tuple(as_family(c) for c in self.classes)
        for k, c in enumerate(classes):
            if len(c) == 0:
                raise ValueError(f"color class {k} is empty")
        dims = {c.dim for c in classes}
        if len(dims) > 1:
            raise DimensionError(f"mixed dimensions across classes: {sorted(dims)}")
        object.__setattr__(self, "classes", classes)

    @property
    def dim(self) -> int:
        return self.classes[0].dim

    def __len__(self):
        return len(self.classes)

    def tuple_boxes(self, choice: Sequence[int]) -> list[AxisBox]:
        if len(choice) != len(self.classes):
            raise ValueError("colorful tuple must pick one box per class")
        return [self.classes[k][i] for k, i in enumerate(choice)]

    def flatten(self) -> Family:
        boxes, labels = [], []
        for k, c in enumerate(self.classes):
            for i, b in enumerate(c):
                boxes.append(b)
                labels.append(f"{k}:{i}")
        return Family(tuple(boxes), tuple(labels))


@dataclass(frozen=True)
class PiercingCertificate:
    pierceable: bool
    witness: Optional[tuple[Point, ...]] = None
    violation: Optional[tuple[int, ...]] = None

    @property
    def verdict(self) -> str:
        return "pierceable" if self.pierceable else "not-pierceable"


def as_family(f: Union[Family, Iterable[AxisBox]]) -> Family:
    if isinstance(f, Family):
        return f
    return Family(tuple(f))


def helly_number(d: int, n: int) -> Optional[int]:
    """Smallest h for which h-wise n-pierceability of boxes in R^d is global.

    ``None`` stands for the infinite cases (d >= 2, n >= 3 except (2, 3)).
    """
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if n == 1:
        return 2
    if d == 1:
        return n + 1
    if n == 2:
        return 3 * d if d % 2 else 3 * d - 1
    if (d, n) == (2, 3):
        return 16
    return None


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Engine:
    """Rank image of a box list plus its disjointness graph as bitmasks."""

    def __init__(self, boxes: Sequence[AxisBox]):
        if not boxes:
            raise ValueError("empty family")
        d = boxes[0].dim
        for b in boxes:
            if b.dim != d:
                raise DimensionError("mixed dimensions")
        m = len(boxes)
        self.m, self.d = m, d
        self.values: list[list[Fraction]] = []
        lo = np.empty((m, d), dtype=np.int64)
        hi = np.empty((m, d), dtype=np.int64)
        for j in range(d):
            vals = sorted({b.sides[j].lo for b in boxes} | {b.sides[j].hi for b in boxes})
            rank = {v: r for r, v in enumerate(vals)}
            self.values.append(vals)
            for i, b in enumerate(boxes):
                lo[i, j] = rank[b.sides[j].lo]
                hi[i, j] = rank[b.sides[j].hi]
        self.lo, self.hi = lo, hi
        self._lo_rows = [tuple(int(x) for x in row) for row in lo]
        self._hi_rows = [tuple(int(x) for x in row) for row in hi]
        apart = ((hi[:, None, :] < lo[None, :, :]) | (hi[None, :, :] < lo[:, None, :])).any(axis=2)
        self.dis = [sum(1 << int(k) for k in np.flatnonzero(row)) for row in apart]
        self.full = (1 << m) - 1

    def to_point(self, ranks: Sequence[int]) -> Point:
        return tuple(self.values[j][r] for j, r in enumerate(ranks))

    # -- primitive tests on index bitmasks ------------------------------------

    def common_point(self, mask: int) -> Optional[tuple[int, ...]]:
        """Max-of-lower-endpoints point if the boxes in ``mask`` share a point."""
        top = None
        bottom = None
        for i in _bits(mask):
            lo, hi = self._lo_rows[i], self._hi_rows[i]
            if top is None:
                top, bottom = list(lo), list(hi)
            else:
                for j in range(self.d):
                    if lo[j] > top[j]:
                        top[j] = lo[j]
                    if hi[j] < bottom[j]:
                        bottom[j] = hi[j]
        if top is None:
            return None
        if all(t <= b for t, b in zip(top, bottom)):
            return tuple(top)
        return None

    def pairwise_intersecting(self, mask: int) -> bool:
        return all(not (self.dis[i] & mask) for i in _bits(mask))

    def two_coloring(self, mask: int) -> Optional[tuple[int, int]]:
        color: dict[int, int] = {}
        parts = [0, 0]
        for s in _bits(mask):
            if s in color:
                continue
            color[s] = 0
            parts[0] |= 1 << s
            stack = [s]
            while stack:
                v = stack.pop()
                for u in _bits(self.dis[v] & mask):
                    if u not in color:
                        color[u] = 1 - color[v]
                        parts[color[u]] |= 1 << u
                        stack.append(u)
                    elif color[u] == color[v]:
                        return None
        return parts[0], parts[1]

    # -- deciders ----------------------------------------------------------------

    def pierce(self, mask: int, n: int, method: str = "auto") -> Optional[list[tuple[int, ...]]]:
        """Rank-space piercing points (at most ``n``) for ``mask``, or ``None``."""
        if method not in ("auto", "grid"):
            raise ValueError(f"unknown method {method!r}")
        memo: Optional[dict] = {} if self.m <= MEMO_LIMIT else None
        return self._pierce(mask, n, method, memo)

    def _pierce(self, mask, n, method, memo):
        if mask == 0:
            return []
        if n <= 0:
            return None
        if memo is not None and (mask, n) in memo:
            return memo[(mask, n)]
        result = self._pierce_uncached(mask, n, method, memo)
        if memo is not None:
            memo[(mask, n)] = result
        return result

    def _pierce_uncached(self, mask, n, method, memo):
        if n == 1:
            p = self.common_point(mask)
            return None if p is None else [p]
        if method == "auto":
            if self.d == 1:
                return self._greedy(mask, n)
            if n == 2:
                parts = self.two_coloring(mask)
                if parts is None:
                    return None
                return [self.common_point(p) for p in parts if p]
        idx = list(_bits(mask))
        first = idx[0]
        lo = self.lo[idx]
        hi = self.hi[idx]
        axes = []
        for j in range(self.d):
            col = np.unique(lo[:, j])
            axes.append(col[(col >= self.lo[first, j]) & (col <= self.hi[first, j])])
        grid = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
        hit = ((lo[None, :, :] <= grid[:, None, :]) & (grid[:, None, :] <= hi[None, :, :])).all(axis=2)
        missed_rows = ~hit
        if self.m <= 62:
            weights = np.array([1 << i for i in idx], dtype=np.int64)
            missed = [int(x) for x in missed_rows.astype(np.int64) @ weights]
        else:
            missed = [sum(1 << idx[k] for k in np.flatnonzero(row)) for row in missed_rows]
        # keep the first candidate for each distinct missed set, then drop
        # missed sets that strictly contain another one (monotonicity)
        first_at: dict[int, int] = {}
        for c, ms in enumerate(missed):
            first_at.setdefault(ms, c)
        distinct = list(first_at)
        minimal = [a for a in distinct if not any(b != a and (b & a) == b for b in distinct)]
        for ms in minimal:
            rest = self._pierce(ms, n - 1, method, memo)
            if rest is not None:
                return [tuple(int(x) for x in grid[first_at[ms]])] + rest
        return None

    def _greedy(self, mask, n):
        order = sorted(_bits(mask), key=lambda i: (self._hi_rows[i][0], self._lo_rows[i][0], i))
        stabs: list[int] = []
        for i in order:
            if not stabs or self._lo_rows[i][0] > stabs[-1]:
                stabs.append(self._hi_rows[i][0])
                if len(stabs) > n:
                    return None
        return [(s,) for s in stabs]

    def pierceable(self, mask: int, n: int, method: str = "auto") -> bool:
        if n == 1:
            return self.pairwise_intersecting(mask) if method == "auto" else self.common_point(mask) is not None
        if n == 2 and method == "auto" and self.d > 1:
            return self.two_coloring(mask) is not None
        return self.pierce(mask, n, method) is not None

    def minimal_violation(self, mask: int, n: int, method: str = "auto") -> tuple[int, ...]:
        idx = list(_bits(mask))
        h = helly_number(self.d, n)
        if h is not None:
            spent = 0
            for size in range(n + 1, min(h, len(idx)) + 1):
                spent += comb(len(idx), size)
                if spent > VIOLATION_BUDGET:
                    break
                for sub in itertools.combinations(idx, size):
                    sm = sum(1 << i for i in sub)
                    if not self.pierceable(sm, n, method):
                        return tuple(sub)
        return tuple(idx)


def _engine_for(f: Family) -> _Engine:
    return _Engine(f.boxes)


def _check_witness(boxes: Sequence[AxisBox], witness: Sequence[Point]) -> None:
    for k, b in enumerate(boxes):
        if not any(contains_point(b, p) for p in witness):
            raise WitnessError(f"witness misses box {k}: {b}", offending=k)


def pierce1(f: Union[Family, Iterable[AxisBox]]) -> PiercingCertificate:
    """Decide 1-pierceability by folding per-axis intersections."""
    f = as_family(f)
    if len(f) == 0:
        raise ValueError("pierce1 needs a non-empty family")
    d = f.dim
    top = [max(b.sides[j].lo for b in f) for j in range(d)]
    bottom = [min(b.sides[j].hi for b in f) for j in range(d)]
    if all(t <= u for t, u in zip(top, bottom)):
        return PiercingCertificate(True, witness=(tuple(top),))
    for a, b in itertools.combinations(range(len(f)), 2):
        fa, fb = f[a], f[b]
        if any(sa.hi < sb.lo or sb.hi < sa.lo for sa, sb in zip(fa.sides, fb.sides)):
            return PiercingCertificate(False, violation=(a, b))
    raise AssertionError("pairwise intersecting boxes must share a point")


def min_stab_intervals(f: Union[Family, Iterable[AxisBox]]) -> tuple[int, list[Point]]:
    """Minimum number of points stabbing a family of intervals.

    Sweeps intervals by right endpoint and stabs at the right endpoint of each
    interval not yet stabbed.
    """
    f = as_family(f)
    if len(f) == 0:
        raise ValueError("empty family")
    if f.dim != 1:
        raise DimensionError("min_stab_intervals needs dimension 1")
    order = sorted(range(len(f)), key=lambda i: (f[i].sides[0].hi, f[i].sides[0].lo, i))
    stabs: list[Fraction] = []
    for i in order:
        s = f[i].sides[0]
        if not stabs or s.lo > stabs[-1]:
            stabs.append(s.hi)
    return len(stabs), [(x,) for x in stabs]


def pierce_n(f: Union[Family, Iterable[AxisBox]], n: int, method: str = "auto") -> PiercingCertificate:
    """Exact n-piercing decision with a witness or a small violating subset.

    On failure the violation is the first non-n-pierceable subset found by a
    breadth-first scan over subset sizes n+1 .. h(d, n) in lexicographic
    order; when h(d, n) is infinite or the scan exceeds its budget the whole
    index list is returned.
    """
    f = as_family(f)
    if len(f) == 0:
        raise ValueError("pierce_n needs a non-empty family")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    eng = _engine_for(f)
    pts = eng.pierce(eng.full, n, method)
    if pts is not None:
        witness = tuple(dict.fromkeys(eng.to_point(p) for p in pts))
        _check_witness(f.boxes, witness)
        return PiercingCertificate(True, witness=witness)
    return PiercingCertificate(False, violation=eng.minimal_violation(eng.full, n, method))


def is_pierceable(f: Union[Family, Iterable[AxisBox]], n: int, method: str = "auto") -> bool:
    f = as_family(f)
    if len(f) == 0:
        return True
    eng = _engine_for(f)
    return eng.pierceable(eng.full, n, method)


def colorful_tuples(c: ColorSystem) -> Iterator[tuple[int, ...]]:
    """All colorful tuples (one box index per class), lexicographically."""
    return itertools.product(*(range(len(cls)) for cls in c.classes))


class _SystemEngine:
    """Engine over the flattened system with per-class offsets."""

    def __init__(self, c: ColorSystem):
        self.system = c
        flat = [b for cls in c.classes for b in cls]
        self.engine = _Engine(flat)
        self.offsets = list(itertools.accumulate([0] + [len(cls) for cls in c.classes]))[:-1]

    def mask(self, choice: Sequence[int]) -> int:
        m = 0
        for off, i in zip(self.offsets, choice):
            m |= 1 << (off + i)
        return m

    def class_mask(self, k: int) -> int:
        size = len(self.system.classes[k])
        return ((1 << size) - 1) << self.offsets[k]

    def flat_index(self, k: int, i: int) -> int:
        return self.offsets[k] + i


def colorful_violations(c: ColorSystem, n: int, method: str = "auto") -> Iterator[tuple[int, ...]]:
    """Every colorful tuple that is not n-pierceable, lexicographically."""
    se = _SystemEngine(c)
    eng = se.engine
    for choice in colorful_tuples(c):
        if not eng.pierceable(se.mask(choice), n, method):
            yield tuple(choice)


def check_all_colorful(c: ColorSystem, n: int, method: str = "auto") -> Optional[tuple[int, ...]]:
    """First colorful tuple that is not n-pierceable, or ``None`` if all are."""
    return next(colorful_violations(c, n, method), None)


@dataclass(frozen=True)
class IntervalColorfulWitness:
    """Outcome of the constructive one-dimensional colorful argument.

    ``representatives`` maps every class other than ``class_index`` to the
    index of its chosen interval. ``chain`` lists the intervals J_1 < ... < J_r
    as (class, index) pairs in the disjoint-chain case.
    """

    case: str
    class_index: int
    representatives: dict[int, int]
    witness: tuple[Point, ...]
    chain: tuple[tuple[int, int], ...] = field(default=())

    @property
    def r(self) -> int:
        return len(self.chain)

    def extended_family(self, c: ColorSystem) -> Family:
        boxes = list(c.classes[self.class_index].boxes)
        boxes += [c.classes[k][i] for k, i in sorted(self.representatives.items())]
        return Family(tuple(boxes))


def _disjoint_chains(items: list[tuple[Interval, int, int]]) -> list[tuple[int, ...]]:
    """All chains I_1 < I_2 < ... with pairwise distinct classes.

    ``items`` is (interval, class, index); chains are tuples of positions.
    """
    order = sorted(range(len(items)), key=lambda p: (items[p][0].lo, items[p][0].hi, items[p][1], items[p][2]))
    chains: list[tuple[int, ...]] = []

    def extend(chain, used):
        chains.append(chain)
        last = items[chain[-1]][0]
        for p in order:
            iv, k, _ = items[p]
            if k in used or not last.hi < iv.lo:
                continue
            extend(chain + (p,), used | {k})

    for p in order:
        extend((p,), {items[p][1]})
    return chains


def interval_colorful_witness(c: ColorSystem, n: int) -> IntervalColorfulWitness:
    """Constructive colorful Helly for n-piercing intervals.

    Given n + 1 classes of intervals whose colorful (n+1)-tuples are all
    n-pierceable, returns a class ``i``, one representative from each other
    class and at most ``n`` points piercing class ``i`` together with the
    representatives.

    If every colorful pair meets, a class with a common point exists and the
    representatives share a second point. Otherwise let r be the length of the
    longest pairwise-disjoint colorful chain; the left endpoints a_1..a_r of
    the lexicographically maximal chain J_1 < ... < J_r pierce every class not
    used by the chain, so one of those classes, extended by the chain
    intervals (and arbitrary members of the remaining unused classes), is
    pierced by a_1..a_r.
    """
    if c.dim != 1:
        raise DimensionError("interval_colorful_witness needs dimension 1")
    if len(c) != n + 1:
        raise ValueError(f"need n + 1 = {n + 1} classes, got {len(c)}")
    bad = check_all_colorful(c, n)
    if bad is not None:
        raise PremiseViolation(f"colorful tuple {bad} is not {n}-pierceable", bad)

    classes = c.classes
    ivs = [[b.sides[0] for b in cls] for cls in classes]
    all_pairs_meet = all(
        a.lo <= b.hi and b.lo <= a.hi
        for k1, k2 in itertools.combinations(range(len(ivs)), 2)
        for a in ivs[k1]
        for b in ivs[k2]
    )

    if all_pairs_meet:
        result = _case_all_pairs_meet(c, ivs, n)
    else:
        result = _case_disjoint_chain(c, ivs, n)

    ext = result.extended_family(c)
    _check_witness(ext.boxes, result.witness)
    if len(result.witness) > n:
        raise WitnessError(f"witness uses {len(result.witness)} > {n} points")
    return result


def _case_all_pairs_meet(c: ColorSystem, ivs, n) -> IntervalColorfulWitness:
    k_total = len(ivs)
    if n == 1:
        # two classes: search a class and a partner interval sharing a point
        for i in range(k_total):
            others = [k for k in range(k_total) if k != i]
            for pick in itertools.product(*(range(len(ivs[k])) for k in others)):
                group = ivs[i] + [ivs[k][p] for k, p in zip(others, pick)]
                lo = max(g.lo for g in group)
                if lo <= min(g.hi for g in group):
                    return IntervalColorfulWitness("pairs-meet", i, dict(zip(others, pick)), ((lo,),))
        raise WitnessError("no class extends to a 1-pierceable family")
    for i in range(k_total):
        lo = max(x.lo for x in ivs[i])
        if lo <= min(x.hi for x in ivs[i]):
            reps = {k: 0 for k in range(k_total) if k != i}
            rep_lo = max(ivs[k][0].lo for k in reps)
            pts = tuple(dict.fromkeys([(lo,), (rep_lo,)]))
            return IntervalColorfulWitness("pairs-meet", i, reps, pts)
    raise WitnessError("pairwise meeting classes but no class has a common point")


def _case_disjoint_chain(c: ColorSystem, ivs, n) -> IntervalColorfulWitness:
    items = [(iv, k, i) for k, cls in enumerate(ivs) for i, iv in enumerate(cls)]
    chains = _disjoint_chains(items)
    r = max(len(ch) for ch in chains)
    if r > n:
        raise PremiseViolation("pairwise disjoint colorful chain longer than n", tuple())
    pool = [ch for ch in chains if len(ch) == r]
    chosen: list[int] = []
    anchors: list[Fraction] = []
    for level in range(r):
        best = max(items[ch[level]][0].lo for ch in pool)
        # tie-break: lowest (class, index) among intervals attaining the max
        pick = min(
            (items[ch[level]][1], items[ch[level]][2], ch[level]) for ch in pool if items[ch[level]][0].lo == best
        )[2]
        pool = [ch for ch in pool if ch[level] == pick]
        chosen.append(pick)
        anchors.append(best)
    used = {items[p][1] for p in chosen}
    unused = [k for k in range(len(ivs)) if k not in used]
    i = unused[0]
    reps = {items[p][1]: items[p][2] for p in chosen}
    for k in unused[1:]:
        reps[k] = 0
    case = "chain-full" if r == n else "chain-short"
    chain = tuple((items[p][1], items[p][2]) for p in chosen)
    return IntervalColorfulWitness(case, i, reps, tuple((a,) for a in anchors), chain)
