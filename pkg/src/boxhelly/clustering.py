"""Testing (n, B)-clusterability of point sets with a constant number of queries.

A point set fits in one translate of an axis-parallel box B exactly when the
translates of B centred at its points share a point, and any shared point is
a valid centre. Covering by n translates is therefore n-piercing of the
centred translates, which lets the tester reuse the exact piercing engine.

The tester draws ``ceil((1/gamma) ln(1/delta))`` uniform samples of
``h_c(d, n)`` points and rejects on the first sample that cannot be covered.
Coverable inputs are never rejected. No closed form for ``gamma`` is
available, so it is an input, normally measured with :func:`calibrate_gamma`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .core import AxisBox, Interval, Point, RationalLike, point, rational
from .errors import DimensionError, UnsupportedParameters, check_cap
from .helly import sample_subset_masks
from .piercing import Family, _Engine, pierce_n

ORACLE_SIZE_CAP = 12
DISTANCE_SIZE_CAP = 20
LN_SLACK = Fraction(1, 10**6)
COORD_DENOMINATOR = 1000


@dataclass(frozen=True)
class BaseBox:
    extents: tuple[Fraction, ...]

    def __post_init__(self):
        ext = tuple(rational(e) for e in self.extents)
        if not ext:
            raise DimensionError("base box needs at least one extent")
        if any(e <= 0 for e in ext):
            raise ValueError("extents must be positive")
        object.__setattr__(self, "extents", ext)

    @property
    def dim(self) -> int:
        return len(self.extents)


@dataclass(frozen=True)
class ClusterInstance:
    points: tuple[Point, ...]
    base: BaseBox
    n: int
    epsilon: Fraction = Fraction(1, 10)
    delta: Fraction = Fraction(1, 10)
    gamma: Optional[Fraction] = None

    def __post_init__(self):
        pts = tuple(point(p) for p in self.points)
        for p in pts:
            if len(p) != self.base.dim:
                raise DimensionError("point dimension differs from the base box")
        object.__setattr__(self, "points", pts)
        for name in ("epsilon", "delta", "gamma"):
            value = getattr(self, name)
            if value is None:
                continue
            value = rational(value)
            if not 0 < value <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {value}")
            object.__setattr__(self, name, value)
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def m(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class CoverResult:
    coverable: bool
    centers: Optional[tuple[Point, ...]] = None
    assignment: Optional[tuple[int, ...]] = None  # translate index for each point


@dataclass(frozen=True)
class TesterReport:
    verdict: str
    trials_run: int
    trials_planned: int
    seed: int
    witness: Optional[tuple[Point, ...]] = None
    witness_indices: Optional[tuple[int, ...]] = None


def translate_centered(base: BaseBox, s: Sequence[RationalLike]) -> AxisBox:
    s = point(s)
    if len(s) != base.dim:
        raise DimensionError(f"point has dimension {len(s)}, base box {base.dim}")
    return AxisBox(tuple(Interval(c - e / 2, c + e / 2) for c, e in zip(s, base.extents)))


def _translates(w: Sequence[Point], base: BaseBox) -> Family:
    return Family(tuple(translate_centered(base, p) for p in w))


def cover_check(w: Sequence[Sequence[RationalLike]], base: BaseBox, n: int) -> CoverResult:
    """Can ``w`` be covered by ``n`` translates of the base box?"""
    w = [point(p) for p in w]
    if not w:
        raise ValueError("cover_check needs at least one point")
    cert = pierce_n(_translates(w, base), n)
    if not cert.pierceable:
        return CoverResult(False)
    centers = cert.witness
    assignment = []
    for p in w:
        for k, c in enumerate(centers):
            if all(abs(x - y) * 2 <= e for x, y, e in zip(p, c, base.extents)):
                assignment.append(k)
                break
        else:
            raise AssertionError("centre set does not cover every point")
    return CoverResult(True, centers, tuple(assignment))


def coverable_oracle(w: Sequence[Sequence[RationalLike]], base: BaseBox, n: int) -> bool:
    """Partition enumeration: some split into <= n groups of small spread.

    A group fits in one translate iff on every axis its spread is at most the
    extent. Groups are grown point by point and abandoned as soon as a spread
    exceeds the extent.
    """
    w = [point(p) for p in w]
    check_cap(len(w), ORACLE_SIZE_CAP, "coverable_oracle")
    if not w:
        return True
    ext = base.extents
    d = base.dim
    groups: list[list[list[Fraction]]] = []  # per group: [mins, maxs]

    def place(i: int) -> bool:
        if i == len(w):
            return True
        p = w[i]
        for g in groups:
            lo, hi = g
            new_lo = [min(a, x) for a, x in zip(lo, p)]
            new_hi = [max(b, x) for b, x in zip(hi, p)]
            if all(new_hi[j] - new_lo[j] <= ext[j] for j in range(d)):
                g[0], g[1] = new_lo, new_hi
                if place(i + 1):
                    return True
                g[0], g[1] = lo, hi
        if len(groups) < n:
            groups.append([list(p), list(p)])
            if place(i + 1):
                return True
            groups.pop()
        return False

    return place(0)


def distance_to_clusterable(s: Sequence[Sequence[RationalLike]], base: BaseBox, n: int) -> int:
    """Fewest points to delete so that the rest is coverable by n translates."""
    s = [point(p) for p in s]
    check_cap(len(s), DISTANCE_SIZE_CAP, "distance_to_clusterable")
    m = len(s)
    if m == 0:
        return 0
    eng = _Engine(_translates(s, base).boxes)
    for r in range(m + 1):
        for removed in combinations(range(m), r):
            keep = eng.full
            for i in removed:
                keep &= ~(1 << i)
            if keep == 0 or eng.pierceable(keep, n):
                return r
    return m


def default_tuple_size(d: int, n: int) -> int:
    """Sample size h_c(d, n) used by the tester."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if d == 1:
        return n + 1
    if n == 2:
        return 3 * d
    if n == 1:
        return 2
    raise UnsupportedParameters(
        f"no finite sample size for d={d}, n={n}: the Helly number of boxes is infinite "
        "for d >= 2 and n >= 3 (and no colorful bound is known for (2, 3))"
    )


def trial_count(gamma: RationalLike, delta: RationalLike) -> int:
    """ceil((1/gamma) * ln(1/delta)) with ln bounded from above.

    ln(1/delta) is replaced by ``math.log(1/delta) + 1e-6``, an upper bound
    within about 1e-6. Over-counting trials never weakens the guarantee.
    """
    gamma, delta = rational(gamma), rational(delta)
    if not 0 < gamma <= 1 or not 0 < delta <= 1:
        raise ValueError("gamma and delta must lie in (0, 1]")
    if delta == 1:
        return 0
    ln_upper = Fraction(math.log(1 / delta)) + LN_SLACK
    return math.ceil(ln_upper / gamma)


def _covers(w, base, n) -> bool:
    return cover_check(w, base, n).coverable


def _sample_fails(eng: _Engine, mask: int, n: int) -> bool:
    return not eng.pierceable(mask, n)


def calibrate_gamma(inst: ClusterInstance, k: int, seed: int) -> Fraction:
    """Fraction of ``k`` uniform h_c-subsets of the points that cannot be covered."""
    if k < 1:
        raise ValueError("k must be at least 1")
    h = default_tuple_size(inst.dim, inst.n)
    if inst.m < h:
        raise ValueError(f"need at least h_c = {h} points, got {inst.m}")
    eng = _Engine(_translates(inst.points, inst.base).boxes)
    fails = sum(_sample_fails(eng, mk, inst.n) for mk in sample_subset_masks(inst.m, h, k, seed))
    return Fraction(fails, k)


def exact_gamma(inst: ClusterInstance) -> Fraction:
    """Exact fraction of uncoverable h_c-subsets (exhaustive; small m only)."""
    h = default_tuple_size(inst.dim, inst.n)
    check_cap(inst.m, 40, "exact_gamma")
    eng = _Engine(_translates(inst.points, inst.base).boxes)
    fails = sum(
        _sample_fails(eng, sum(1 << i for i in sub), inst.n) for sub in combinations(range(inst.m), h)
    )
    return Fraction(fails, math.comb(inst.m, h))


def cluster_test(inst: ClusterInstance, seed: int, gamma: Optional[RationalLike] = None) -> TesterReport:
    """One-sided randomized tester for (n, B)-clusterability.

    Each trial draws h_c distinct points uniformly (a fresh subset per trial
    from one seeded generator) and checks them exactly. A reject carries the
    uncoverable sample, re-verified before it is returned.
    """
    gamma = inst.gamma if gamma is None else rational(gamma)
    if gamma is None:
        raise ValueError("gamma is required (pass it or calibrate it first)")
    h = default_tuple_size(inst.dim, inst.n)
    if inst.m < h:
        raise ValueError(f"need at least h_c = {h} points, got {inst.m}")
    planned = trial_count(gamma, inst.delta)
    rng = np.random.default_rng(seed)
    for trial in range(planned):
        idx = tuple(sorted(int(i) for i in rng.choice(inst.m, size=h, replace=False)))
        sample = [inst.points[i] for i in idx]
        if not cover_check(sample, inst.base, inst.n).coverable:
            recheck = coverable_oracle if h <= ORACLE_SIZE_CAP else _covers
            if recheck(sample, inst.base, inst.n):
                raise AssertionError("reject witness is coverable")
            return TesterReport("reject", trial + 1, planned, seed, tuple(sample), idx)
    return TesterReport("accept", planned, planned, seed)


def gen_cluster_instance(
    kind: str,
    d: int,
    n: int,
    m: int,
    seed: int,
    epsilon: Optional[RationalLike] = None,
    extents: Optional[Sequence[RationalLike]] = None,
    delta: RationalLike = Fraction(1, 10),
) -> ClusterInstance:
    """Seeded synthetic instance.

    ``kind="coverable"`` puts all m points in n well separated translates of
    the base box. ``kind="far"`` adds an (n+1)-th far cluster holding
    ``ceil(epsilon * m)`` points and gives every cluster at least that many,
    so fewer than ``epsilon * m`` deletions cannot make the set coverable.
    Clusters sit along axis 0, spaced ten extents apart.
    """
    if kind not in ("coverable", "far"):
        raise ValueError("kind must be 'coverable' or 'far'")
    base = BaseBox(tuple(rational(e) for e in extents) if extents is not None else (Fraction(1),) * d)
    if base.dim != d:
        raise DimensionError("extents must have length d")
    h = default_tuple_size(d, n)
    if m < h:
        raise ValueError(f"m must be at least h_c = {h}")
    rng = np.random.default_rng(seed)
    if kind == "coverable":
        eps = rational(epsilon) if epsilon is not None else Fraction(1, 10)
        sizes = [m // n + (1 if k < m % n else 0) for k in range(n)]
    else:
        if epsilon is None:
            raise ValueError("kind='far' needs epsilon")
        eps = rational(epsilon)
        if not 0 < eps <= 1:
            raise ValueError("epsilon must lie in (0, 1]")
        q = math.ceil(eps * m)
        if (n + 1) * q > m:
            raise ValueError(f"infeasible: {n + 1} clusters of at least {q} points need m >= {(n + 1) * q}")
        rest = m - q
        sizes = [rest // n + (1 if k < rest % n else 0) for k in range(n)] + [q]
    spacing = 10 * max(base.extents)
    pts: list[Point] = []
    for k, size in enumerate(sizes):
        centre = [spacing * k] + [Fraction(0)] * (d - 1)
        u = rng.integers(0, COORD_DENOMINATOR + 1, size=(size, d))
        for row in u:
            pts.append(
                tuple(
                    c - e / 2 + e * Fraction(int(x), COORD_DENOMINATOR)
                    for c, e, x in zip(centre, base.extents, row)
                )
            )
    order = rng.permutation(len(pts))
    return ClusterInstance(tuple(pts[i] for i in order), base, n, epsilon=eps, delta=rational(delta))
