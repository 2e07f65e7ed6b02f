import itertools
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxhelly.clustering import (
    BaseBox,
    ClusterInstance,
    calibrate_gamma,
    cluster_test,
    cover_check,
    coverable_oracle,
    default_tuple_size,
    distance_to_clusterable,
    exact_gamma,
    gen_cluster_instance,
    translate_centered,
    trial_count,
)
from boxhelly.core import AxisBox, Interval, contains_point
from boxhelly.errors import CapExceeded, UnsupportedParameters


def spread_ok(pts, ext):
    return all(max(p[j] for p in pts) - min(p[j] for p in pts) <= ext[j] for j in range(len(ext)))


def brute_distance(s, ext, n):
    """Smallest removal count by trying every removal set and every labelling."""
    m = len(s)
    for r in range(m + 1):
        for removed in itertools.combinations(range(m), r):
            keep = [s[i] for i in range(m) if i not in removed]
            if not keep:
                return r
            for labels in itertools.product(range(n), repeat=len(keep)):
                parts = [[p for p, l in zip(keep, labels) if l == k] for k in range(n)]
                if all(not part or spread_ok(part, ext) for part in parts):
                    return r
    return m


def rand_points(rng, d, k, scale=6):
    return [tuple(F(rng.randint(0, scale * 4), 4) for _ in range(d)) for _ in range(k)]


def test_translate_centered_examples():
    assert translate_centered(BaseBox((2, 2)), (0, 0)) == AxisBox((Interval(F(-1), F(1)),) * 2)
    assert translate_centered(BaseBox((1,)), (5,)) == AxisBox((Interval(F(9, 2), F(11, 2)),))
    assert translate_centered(BaseBox((3, 1)), (0, 0)) == AxisBox(
        (Interval(F(-3, 2), F(3, 2)), Interval(F(-1, 2), F(1, 2)))
    )


def test_cover_check_examples():
    r = cover_check([(0, 0), (1, 1)], BaseBox((2, 2)), 1)
    assert r.coverable
    far = [(0,), (10,)]
    assert not cover_check(far, BaseBox((2,)), 1).coverable
    r = cover_check(far, BaseBox((2,)), 2)
    assert r.coverable and len(r.centers) <= 2
    for p, k in zip(far, r.assignment):
        assert contains_point(translate_centered(BaseBox((2,)), r.centers[k]), p)


def test_oracle_examples():
    assert coverable_oracle([(3, 4)], BaseBox((1, 1)), 1)
    assert coverable_oracle([(0,), (10,)], BaseBox((2,)), 2)
    with pytest.raises(CapExceeded):
        coverable_oracle([(i,) for i in range(13)], BaseBox((1,)), 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_cover_check_matches_oracle(seed):
    rng = random.Random(seed)
    d, n = rng.randint(1, 3), rng.randint(1, 3)
    w = rand_points(rng, d, rng.randint(1, 8))
    base = BaseBox(tuple(F(rng.randint(1, 12), 4) for _ in range(d)))
    res = cover_check(w, base, n)
    assert res.coverable == coverable_oracle(w, base, n)
    if res.coverable:
        for p, k in zip(w, res.assignment):
            assert contains_point(translate_centered(base, res.centers[k]), p)


def test_distance_examples():
    assert distance_to_clusterable([(0,), (F(1, 2),)], BaseBox((1,)), 1) == 0
    assert distance_to_clusterable([(0,), (10,), (20,)], BaseBox((2,)), 2) == 1
    with pytest.raises(CapExceeded):
        distance_to_clusterable([(i,) for i in range(21)], BaseBox((1,)), 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_distance_matches_brute_force(seed):
    rng = random.Random(seed)
    d, n = rng.randint(1, 2), rng.randint(1, 2)
    s = rand_points(rng, d, rng.randint(1, 6), scale=5)
    ext = tuple(F(rng.randint(2, 8), 4) for _ in range(d))
    assert distance_to_clusterable(s, BaseBox(ext), n) == brute_distance(s, ext, n)


def test_default_tuple_size():
    assert default_tuple_size(3, 2) == 9
    assert default_tuple_size(1, 5) == 6
    assert default_tuple_size(4, 1) == 2
    with pytest.raises(UnsupportedParameters):
        default_tuple_size(4, 3)


def test_trial_count():
    assert trial_count(F(1, 10), F(1, 10)) == math.ceil(10 * math.log(10))
    assert trial_count(1, F(1, 2)) == 1
    assert trial_count(F(1, 2), 1) == 0
    for g, dl in [(F(1, 7), F(1, 20)), (F(3, 11), F(1, 3)), (F(1, 100), F(1, 1000))]:
        exact = math.log(1 / dl) / g
        assert exact <= trial_count(g, dl) <= exact + 1
    with pytest.raises(ValueError):
        trial_count(0, F(1, 2))


def test_calibrate_examples():
    inst = gen_cluster_instance("coverable", 1, 2, 30, seed=1)
    assert calibrate_gamma(inst, 500, seed=0) == 0
    with pytest.raises(ValueError):
        calibrate_gamma(inst, 0, seed=0)


def test_calibrate_three_clusters_close_to_exact():
    rng = random.Random(5)
    pts = [(F(rng.randint(0, 1000), 1000) + 10 * c,) for c, size in enumerate((8, 7, 5)) for _ in range(size)]
    inst = ClusterInstance(tuple(pts), BaseBox((1,)), 2)
    exact = exact_gamma(inst)
    # three points miss one cluster unless all three clusters are sampled
    assert exact == F(8 * 7 * 5, math.comb(20, 3))
    assert abs(calibrate_gamma(inst, 10_000, seed=3) - exact) <= F(1, 20)


def test_cluster_test_soundness_and_errors():
    inst = gen_cluster_instance("coverable", 2, 1, 40, seed=2)
    for seed in range(5):
        rep = cluster_test(inst, seed, gamma=F(1, 5))
        assert rep.verdict == "accept" and rep.trials_run == rep.trials_planned
    small = ClusterInstance(((0,),), BaseBox((1,)), 2, gamma=F(1, 2))
    with pytest.raises(ValueError):
        cluster_test(small, 0)
    with pytest.raises(ValueError):
        cluster_test(inst, 0)


def test_cluster_test_reject_witness():
    inst = gen_cluster_instance("far", 1, 2, 60, seed=4, epsilon=F(1, 5))
    rep = cluster_test(inst, 0, gamma=F(1, 10))
    assert rep.verdict == "reject"
    assert len(rep.witness) == default_tuple_size(1, 2)
    assert not coverable_oracle(rep.witness, inst.base, 2)
    assert rep.witness == tuple(inst.points[i] for i in rep.witness_indices)
    assert cluster_test(inst, 0, gamma=F(1, 10)) == rep


def test_gen_far_distance():
    inst = gen_cluster_instance("far", 1, 2, 20, seed=0, epsilon=F(1, 5))
    assert distance_to_clusterable(inst.points, inst.base, 2) >= 4
    with pytest.raises(ValueError):
        gen_cluster_instance("far", 1, 2, 20, seed=0, epsilon=F(1, 2))


def test_gen_coverable_subsample_distance_zero():
    inst = gen_cluster_instance("coverable", 2, 2, 100, seed=3)
    assert distance_to_clusterable(inst.points[:20], inst.base, 2) == 0
    assert gen_cluster_instance("coverable", 2, 2, 100, seed=3) == inst
    assert gen_cluster_instance("coverable", 2, 2, 100, seed=4) != inst


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_coverable_subsets_stay_coverable(seed):
    rng = random.Random(seed)
    d, n = rng.randint(1, 3), rng.randint(1, 2)
    inst = gen_cluster_instance("coverable", d, n, 30, seed=seed)
    sub = rng.sample(inst.points, rng.randint(default_tuple_size(d, n), 30))
    assert cover_check(sub, inst.base, n).coverable
    sub_inst = ClusterInstance(tuple(sub), inst.base, n, gamma=F(1, 4))
    assert cluster_test(sub_inst, seed).verdict == "accept"
