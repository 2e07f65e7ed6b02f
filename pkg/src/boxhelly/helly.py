"""Instance-level checks of Helly-type statements for box families.

Every check here is exhaustive on the instance it is given. The fractional
machinery measures (alpha, beta) pairs; it never evaluates a bound for beta.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .core import AxisBox, Point
from .errors import CapExceeded, check_cap
from .piercing import (
    ColorSystem,
    Family,
    _bits,
    _Engine,
    _SystemEngine,
    as_family,
    check_all_colorful,
    helly_number,
    pierce_n,
)

SUBSET_CHECK_CAP = 2_000_000
FALLBACK_SIZE_CAP = 20
MISSING_TUPLE_SIZE_CAP = 15
MISSING_TUPLE_T_CAP = 3


@dataclass(frozen=True)
class ColorfulCertificate:
    class_index: Optional[int]
    representatives: dict[int, int]
    witness: tuple[Point, ...]


@dataclass(frozen=True)
class HellyReport:
    premise_holds: bool
    conclusion_holds: bool
    premise_violation: Optional[tuple[int, ...]] = None
    conclusion_certificate: Optional[ColorfulCertificate] = None
    weak_class: Optional[int] = None
    notes: tuple[str, ...] = ()


def check_helly(f: Union[Family, Iterable[AxisBox]], h: int, n: int) -> HellyReport:
    """Test "every h boxes are n-pierceable" and "all boxes are n-pierceable"."""
    f = as_family(f)
    if h < 1:
        raise ValueError("h must be positive")
    if len(f) < h:
        raise ValueError(f"family has {len(f)} boxes, fewer than h = {h}")
    total = comb(len(f), h)
    if total > SUBSET_CHECK_CAP:
        raise CapExceeded(f"{total} subsets of size {h} exceed the check cap {SUBSET_CHECK_CAP}")
    eng = _Engine(f.boxes)
    violation = None
    for sub in itertools.combinations(range(len(f)), h):
        if not eng.pierceable(sum(1 << i for i in sub), n):
            violation = sub
            break
    cert = pierce_n(f, n)
    notes = []
    hn = helly_number(f.dim, n)
    if hn is not None and h >= hn:
        notes.append(f"h >= h(d,n) = {hn}: premise forces the conclusion")
    return HellyReport(
        premise_holds=violation is None,
        conclusion_holds=cert.pierceable,
        premise_violation=violation,
        conclusion_certificate=ColorfulCertificate(None, {}, cert.witness) if cert.pierceable else None,
        notes=tuple(notes),
    )


def colorful_helly_number(d: int, n: int) -> Optional[int]:
    """h_c(d, n) where known: n + 1 on the line, 3d for two points, 2 for one."""
    if d == 1:
        return n + 1
    if n == 2:
        return 3 * d
    if n == 1:
        return 2
    return None


def check_colorful_helly(c: ColorSystem, n: int, strong: bool = False) -> HellyReport:
    """Check the colorful premise and search for a (strong) certificate.

    The weak conclusion asks for one n-pierceable class. The strong one
    additionally picks a representative from every other class, searched in
    lexicographic order, so that the extended family stays n-pierceable.
    Class counts other than the colorful Helly number are accepted and noted.
    """
    notes = []
    expected = colorful_helly_number(c.dim, n)
    if expected is None or len(c) != expected:
        msg = f"{len(c)} classes for (d={c.dim}, n={n}); the colorful Helly number is {expected}"
        notes.append(msg)
        warnings.warn(msg, stacklevel=2)
    violation = check_all_colorful(c, n)
    se = _SystemEngine(c)
    eng = se.engine
    pierceable_classes = [k for k in range(len(c)) if eng.pierceable(se.class_mask(k), n)]
    weak = pierceable_classes[0] if pierceable_classes else None
    cert = None
    if weak is not None and not strong:
        pts = eng.pierce(se.class_mask(weak), n)
        cert = ColorfulCertificate(weak, {}, tuple(dict.fromkeys(eng.to_point(p) for p in pts)))
    if strong:
        cert = _strong_certificate(c, se, n, pierceable_classes)
    return HellyReport(
        premise_holds=violation is None,
        conclusion_holds=cert is not None,
        premise_violation=violation,
        conclusion_certificate=cert,
        weak_class=weak,
        notes=tuple(notes),
    )


def _strong_certificate(c, se, n, candidates) -> Optional[ColorfulCertificate]:
    eng = se.engine
    for i in candidates:
        others = [k for k in range(len(c)) if k != i]
        base = se.class_mask(i)
        for pick in itertools.product(*(range(len(c.classes[k])) for k in others)):
            mask = base
            for k, p in zip(others, pick):
                mask |= 1 << se.flat_index(k, p)
            pts = eng.pierce(mask, n)
            if pts is not None:
                witness = tuple(dict.fromkeys(eng.to_point(p) for p in pts))
                return ColorfulCertificate(i, dict(zip(others, pick)), witness)
    return None


@dataclass(frozen=True)
class FractionEstimate:
    hits: int
    samples: int
    seed: int

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.hits, self.samples)


class _SubsetOracle:
    """Memoised n-pierceability of index subsets of one family."""

    def __init__(self, f: Family, n: int):
        self.engine = _Engine(f.boxes)
        self.n = n
        self.cache: dict[int, bool] = {}

    def __call__(self, mask: int) -> bool:
        hit = self.cache.get(mask)
        if hit is None:
            hit = self.cache[mask] = self.engine.pierceable(mask, self.n)
        return hit


@lru_cache(maxsize=16)
def _oracle(f: Family, n: int) -> _SubsetOracle:
    return _SubsetOracle(f, n)


def fraction_pierceable(
    f: Union[Family, Iterable[AxisBox]],
    t: int,
    n: int,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Union[Fraction, FractionEstimate]:
    """Fraction of t-subsets of ``f`` that are n-pierceable.

    Exhaustive (an exact ``Fraction``) unless ``samples`` is given; then
    ``samples`` uniform t-subsets are drawn with a seeded generator and a
    :class:`FractionEstimate` is returned.
    """
    f = as_family(f)
    if t < 1 or len(f) < t:
        raise ValueError(f"need 1 <= t <= |f| (t={t}, |f|={len(f)})")
    oracle = _oracle(f, n)
    m = len(f)
    if samples is None:
        total = comb(m, t)
        if total > SUBSET_CHECK_CAP:
            raise CapExceeded(f"{total} subsets exceed the exhaustive cap; use sampling")
        good = sum(oracle(sum(1 << i for i in sub)) for sub in itertools.combinations(range(m), t))
        return Fraction(good, total)
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if seed is None:
        raise ValueError("sampled mode needs an explicit seed")
    masks = sample_subset_masks(m, t, samples, seed)
    hits = sum(oracle(mk) for mk in masks)
    return FractionEstimate(hits, samples, seed)


def sample_subset_masks(m: int, t: int, k: int, seed: int) -> list[int]:
    """``k`` independent uniform t-subsets of range(m), as bitmasks."""
    rng = np.random.default_rng(seed)
    picks = np.argsort(rng.random((k, m)), axis=1)[:, :t]
    return [sum(1 << int(i) for i in row) for row in picks]


def max_pierceable_subfamily(f: Union[Family, Iterable[AxisBox]], n: int) -> tuple[tuple[int, ...], tuple[Point, ...]]:
    """Largest n-pierceable subfamily (indices) and a witness for it.

    For n = 1 and n = 2 the candidate grid of lower endpoints is scanned
    directly (single points, then pairs of hit sets). Larger n fall back to
    a subset search in decreasing size, capped at 20 boxes.
    """
    f = as_family(f)
    if len(f) == 0:
        return (), ()
    eng = _Engine(f.boxes)
    if n in (1, 2):
        grid = _grid_points(eng)
        hit = ((eng.lo[None, :, :] <= grid[:, None, :]) & (grid[:, None, :] <= eng.hi[None, :, :])).all(axis=2)
        masks: dict[int, int] = {}
        for row, hits in enumerate(hit):
            mk = sum(1 << int(i) for i in np.flatnonzero(hits))
            masks.setdefault(mk, row)
        items = sorted(masks.items(), key=lambda kv: (-bin(kv[0]).count("1"), kv[1]))
        if n == 1:
            mk, row = items[0]
            return tuple(_bits(mk)), (eng.to_point(grid[row]),)
        best = (-1, None)
        for a in range(len(items)):
            ma, ra = items[a]
            if bin(ma).count("1") * 2 <= best[0]:
                break
            for b in range(a, len(items)):
                mb, rb = items[b]
                size = bin(ma | mb).count("1")
                if size > best[0]:
                    best = (size, (ma | mb, ra, rb))
        mk, ra, rb = best[1]
        witness = tuple(dict.fromkeys([eng.to_point(grid[ra]), eng.to_point(grid[rb])]))
        return tuple(_bits(mk)), witness
    check_cap(len(f), FALLBACK_SIZE_CAP, "max_pierceable_subfamily fallback")
    m = len(f)
    for size in range(m, 0, -1):
        for sub in itertools.combinations(range(m), size):
            pts = eng.pierce(sum(1 << i for i in sub), n)
            if pts is not None:
                return sub, tuple(dict.fromkeys(eng.to_point(p) for p in pts))
    return (), ()


def _grid_points(eng: _Engine) -> np.ndarray:
    axes = [np.unique(eng.lo[:, j]) for j in range(eng.d)]
    return np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)


@dataclass(frozen=True)
class MissingTuple:
    """m pairwise disjoint non-edges whose transversals are all cliques.

    ``vacuous`` is set when m < t: a transversal then has fewer than t
    elements and counts as a clique by convention.
    """

    parts: tuple[tuple[int, ...], ...]
    vacuous: bool = False


def find_complete_missing_tuple(
    f: Union[Family, Iterable[AxisBox]], t: int, n: int, m: int
) -> Optional[MissingTuple]:
    """Search the t-uniform piercing hypergraph of ``f`` for a complete m-tuple of missing edges.

    Hyperedges are the n-pierceable t-subsets. Returns the lexicographically
    first tuple, or ``None``. When m * t exceeds |f| no m disjoint t-sets
    exist and the answer is ``None`` without any search.
    """
    f = as_family(f)
    if min(t, n, m) < 1:
        raise ValueError("t, n and m must be positive")
    if m * t > len(f):
        return None
    check_cap(len(f), MISSING_TUPLE_SIZE_CAP, "find_complete_missing_tuple family size")
    check_cap(t, MISSING_TUPLE_T_CAP, "find_complete_missing_tuple uniformity t")
    oracle = _SubsetOracle(f, n)
    size = len(f)
    missing = [sub for sub in itertools.combinations(range(size), t) if not oracle(sum(1 << i for i in sub))]

    def is_clique(selection: Sequence[int]) -> bool:
        if len(selection) < t:
            return True
        return all(oracle(sum(1 << i for i in sub)) for sub in itertools.combinations(sorted(selection), t))

    def transversals_ok(parts) -> bool:
        return all(is_clique(sel) for sel in itertools.product(*parts))

    def search(start: int, parts: list, used: int):
        if len(parts) == m:
            return tuple(parts)
        for p in range(start, len(missing)):
            cand = missing[p]
            cm = sum(1 << i for i in cand)
            if cm & used:
                continue
            # prune: partial transversals must already be cliques
            trial = parts + [cand]
            if not transversals_ok(trial):
                continue
            found = search(p + 1, trial, used | cm)
            if found is not None:
                return found
        return None

    found = search(0, [], 0)
    if found is None:
        return None
    return MissingTuple(found, vacuous=m < t)
