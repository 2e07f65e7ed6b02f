import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxhelly.constructions import gen_lowerbound_2piercing
from boxhelly.core import AxisBox, Interval, contains_point, interval_intersect
from boxhelly.errors import DimensionError, PremiseViolation
from boxhelly.piercing import (
    ColorSystem,
    Family,
    check_all_colorful,
    colorful_tuples,
    helly_number,
    interval_colorful_witness,
    is_pierceable,
    min_stab_intervals,
    pierce1,
    pierce_n,
)

from oracles import brute_min_stab, brute_pierceable, colorful_premise, interval_system, rand_family


def iv(a, b):
    return AxisBox((Interval(F(a), F(b)),))


def box(*sides):
    return AxisBox(tuple(Interval(F(a), F(b)) for a, b in sides))


def fam(*boxes):
    return Family(tuple(boxes))


def pierced(boxes, witness):
    return all(any(contains_point(b, p) for p in witness) for b in boxes)


# --- pierce1 -------------------------------------------------------------------

def test_pierce1_examples():
    c = pierce1(fam(iv(0, 2), iv(1, 3)))
    assert c.pierceable and c.witness == ((1,),)
    c = pierce1(fam(box((-4, -2), (-4, 4)), box((-1, 0), (-4, 4))))
    assert not c.pierceable and c.violation == (0, 1)
    single = box((1, 2), (3, 4))
    assert pierce1(fam(single)).witness == ((1, 3),)


def test_pierce1_first_disjoint_pair():
    c = pierce1(fam(iv(0, 5), iv(1, 2), iv(3, 4), iv(6, 7)))
    assert c.violation == (0, 3)


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        pierce1(Family(()))
    with pytest.raises(ValueError):
        pierce_n(Family(()), 2)
    with pytest.raises(ValueError):
        pierce_n(fam(iv(0, 1)), 0)


# --- min_stab_intervals --------------------------------------------------------

def test_min_stab_examples():
    assert min_stab_intervals(fam(iv(0, 1), iv(2, 3), iv(4, 5)))[0] == 3
    count, witness = min_stab_intervals(fam(iv(0, 1), iv(F(1, 2), 2), iv(F(3, 2), 3)))
    assert count == 2 and witness == [(1,), (3,)]
    assert min_stab_intervals(fam(iv(0, 1)))[0] == 1
    with pytest.raises(DimensionError):
        min_stab_intervals(fam(box((0, 1), (0, 1))))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_min_stab_matches_brute_force(seed):
    rng = random.Random(seed)
    f = rand_family(rng, 1, rng.randint(1, 7))
    count, witness = min_stab_intervals(f)
    assert count == brute_min_stab(list(b.sides[0] for b in f))
    assert len(witness) == count and pierced(f, witness)
    for n in range(1, 5):
        assert (count <= n) == is_pierceable(f, n)


# --- pierce_n ------------------------------------------------------------------

def test_pierce_n_examples():
    three = fam(iv(0, 1), iv(2, 3), iv(4, 5))
    assert not pierce_n(three, 2).pierceable
    assert pierce_n(three, 3).pierceable
    assert not pierce_n(gen_lowerbound_2piercing(2).system.classes[0], 2).pierceable
    lb = gen_lowerbound_2piercing(2, "amended").system
    for choice in [(0, 0, 0, 0, 0), (2, 1, 0, 2, 1), (1, 2, 2, 0, 2)]:
        assert pierce_n(lb.tuple_boxes(choice), 2).pierceable


def test_violation_is_small_and_not_pierceable():
    three = fam(iv(0, 1), iv(10, 20), iv(2, 3), iv(11, 12), iv(4, 5))
    c = pierce_n(three, 2)
    assert c.violation == (0, 1, 2)
    assert not is_pierceable(three.subfamily(c.violation), 2)


@pytest.mark.parametrize("method", ["auto", "grid"])
@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_pierce_n_matches_brute_force(method, seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    f = rand_family(rng, d, rng.randint(1, 7), max_len=rng.choice([3, 8, 20]))
    for n in (1, 2, 3):
        c = pierce_n(f, n, method=method)
        assert c.pierceable == brute_pierceable(f, n)
        if c.pierceable:
            assert len(c.witness) <= n and pierced(f, c.witness)
            for p in c.witness:
                for j, x in enumerate(p):
                    lows = {b.sides[j].lo for b in f}
                    highs = {b.sides[j].hi for b in f}
                    assert x in (lows if method == "grid" else lows | highs)
        else:
            assert not brute_pierceable(f.subfamily(c.violation), n)
            hn = helly_number(d, n)
            if hn is not None:
                assert len(c.violation) <= hn


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_monotonicity(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    f = rand_family(rng, d, rng.randint(2, 7), max_len=8)
    for n in (1, 2):
        if is_pierceable(f, n):
            assert is_pierceable(f, n + 1)
            for size in range(1, len(f)):
                for sub in itertools.combinations(range(len(f)), size):
                    assert is_pierceable(f.subfamily(sub), n)


def test_helly_numbers():
    assert helly_number(3, 1) == 2
    assert helly_number(1, 4) == 5
    assert helly_number(3, 2) == 9
    assert helly_number(4, 2) == 11
    assert helly_number(2, 3) == 16
    assert helly_number(3, 3) is None


# --- colorful tuples -----------------------------------------------------------

def test_colorful_tuples_counts():
    c = ColorSystem((fam(iv(0, 1), iv(1, 2)), fam(iv(0, 1), iv(1, 2), iv(2, 3))))
    tuples = list(colorful_tuples(c))
    assert len(tuples) == 6 and tuples[0] == (0, 0) and tuples[-1] == (1, 2)
    five = ColorSystem(tuple(fam(iv(0, 1), iv(2, 3), iv(4, 5)) for _ in range(5)))
    assert sum(1 for _ in colorful_tuples(five)) == 243
    with pytest.raises(ValueError):
        ColorSystem((fam(iv(0, 1)), Family(())))


def test_check_all_colorful_examples():
    assert check_all_colorful(gen_lowerbound_2piercing(2, "amended").system, 2) is None
    assert check_all_colorful(ColorSystem((fam(iv(0, 1)), fam(iv(2, 3)))), 1) == (0, 0)
    assert check_all_colorful(ColorSystem((fam(iv(0, 1)), fam(iv(0, 1)))), 1) is None


# --- constructive interval witness ----------------------------------------------

def test_interval_witness_common_point():
    for n in (1, 2, 4):
        c = ColorSystem(tuple(fam(iv(0, 1)) for _ in range(n + 1)))
        w = interval_colorful_witness(c, n)
        assert w.case == "pairs-meet" and w.witness == ((0,),)


def test_interval_witness_disjoint_chain():
    c = ColorSystem((fam(iv(0, 1)), fam(iv(2, 3)), fam(iv(0, 1), iv(2, 3))))
    w = interval_colorful_witness(c, 2)
    assert w.r == 2
    assert w.witness == ((0,), (2,))
    assert w.class_index == 2
    assert is_pierceable(w.extended_family(c), 2)


def test_interval_witness_premise_violation():
    c = ColorSystem((fam(iv(0, 1)), fam(iv(2, 3)), fam(iv(4, 5))))
    with pytest.raises(PremiseViolation) as exc:
        interval_colorful_witness(c, 2)
    assert exc.value.violation == (0, 0, 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_interval_witness_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    c = interval_system(rng, n + 1, 4)
    if not colorful_premise(c, n):
        with pytest.raises(PremiseViolation):
            interval_colorful_witness(c, n)
        return
    w = interval_colorful_witness(c, n)
    ext = w.extended_family(c)
    assert len(w.witness) <= n
    assert pierced(ext, w.witness)
    assert sorted(w.representatives) == [k for k in range(n + 1) if k != w.class_index]
    assert brute_pierceable(ext, n)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_at_most_one_class_without_common_value(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    j = rng.randrange(d)
    classes = [rand_family(rng, d, rng.randint(1, 3), max_len=12) for _ in range(rng.randint(2, 4))]
    meet = all(
        interval_intersect(a.sides[j], b.sides[j]) is not None
        for c1, c2 in itertools.combinations(classes, 2)
        for a in c1
        for b in c2
    )
    if not meet:
        return
    lacking = 0
    for cls in classes:
        common = cls[0].sides[j]
        for b in cls[1:]:
            common = common and interval_intersect(common, b.sides[j])
        lacking += common is None
    assert lacking <= 1
