import itertools
import random

import pytest

from macforge.strip import (
    Pattern,
    StripSet,
    blocks,
    inner_outer_range,
    lift,
    min_consecutive_length,
    project,
    shape_list,
    x_support,
)
from macforge.zset import ZSet, disjoint_union
from oracles import exhaustive_ell, random_strip

N = ZSet.up_ray(0)
FIGURE = StripSet.from_columns(4, {0: N | ZSet.finite([-3, -2]), 2: ZSet.finite([1]), 3: ZSet.finite([0])})


def test_project_single_points():
    s, collided = project(Pattern({3: ZSet.finite([0])}), 4)
    assert s == StripSet.from_integers(4, [3]) and not collided
    s, _ = project(Pattern({0: ZSet.finite([1])}), 4)
    assert s == StripSet.from_integers(4, [4])


def test_project_carries_heights():
    s, _ = project(Pattern({6: ZSet.finite([0]), -1: ZSet.finite([0])}), 4)
    assert 6 in s and -1 in s and s.integers_in(-10, 10) == [-1, 6]


def test_figure_set_columns():
    # 4N u {-8,-12} u {3,6}
    assert 0 in FIGURE and -8 in FIGURE and -12 in FIGURE and -4 not in FIGURE
    assert FIGURE.integers_in(-13, 8) == [-12, -8, 0, 3, 4, 6, 8]
    assert x_support(lift(FIGURE)) == [0, 2, 3]


def test_project_flags_collisions_and_accumulates():
    p = Pattern({0: ZSet.finite([0]), 4: ZSet.finite([-1])})
    s, collided = project(p, 4)
    assert collided and s.mult_at(0) == 2


def test_lift_examples():
    s = StripSet.from_columns(3, {0: N, 1: ZSet.finite([0])})
    assert lift(s) == Pattern({0: N, 1: ZSet.finite([0])})
    assert lift(StripSet.empty(5)) == Pattern({})
    p = Pattern({0: N, 2: ZSet.finite([4])})
    assert lift(project(p, 3)[0]) == p


def test_project_lift_round_trip_random():
    rng = random.Random(3)
    for _ in range(100):
        m = rng.randint(1, 6)
        s = random_strip(rng, m)
        back, collided = project(lift(s), m)
        assert back == s and not collided


def test_project_is_a_monoid_map():
    rng = random.Random(4)
    for _ in range(50):
        m = rng.randint(1, 5)
        p1 = lift(random_strip(rng, m))
        p2 = Pattern({x + rng.randint(-3, 3) * m: c for x, c in lift(random_strip(rng, m)).columns.items()})
        lhs, _ = project(p1.union(p2), m)
        a, _ = project(p1, m)
        b, _ = project(p2, m)
        assert lhs == a.disjoint_union(b)


def test_x_support_examples():
    assert x_support(Pattern({5: ZSet.finite([0])})) == [5]
    assert x_support(Pattern({})) == []


def test_inner_outer_range():
    assert inner_outer_range([0, 2]) == (2, 2)
    assert inner_outer_range([0, 1]) == (0, 1)
    assert inner_outer_range([0]) == (0, 0)
    assert blocks([4, 0, 1, 7, 8, 9]) == [[0, 1], [4], [7, 8, 9]]
    with pytest.raises(ValueError):
        inner_outer_range([])


def test_min_consecutive_length_examples():
    assert min_consecutive_length([0]).ell == 1
    lw = min_consecutive_length([0, 2])
    assert lw.ell == 4 and sorted(lw.shifts) == [0, 1]
    lw = min_consecutive_length([0, 1])
    assert lw.ell == 2 and lw.shifts == (0,)


def test_min_consecutive_length_witness_is_exact():
    for r in range(1, 6):
        for xs in itertools.combinations(range(6), r):
            lw = min_consecutive_length(xs)
            # a sumset: translates may overlap but must not leave the interval
            covered = {x + q for x in xs for q in lw.shifts}
            assert covered == set(range(lw.ell)), xs
            assert lw.ell == exhaustive_ell(xs), xs


def test_shape_list():
    s = StripSet.from_columns(3, {0: N, 1: ZSet.finite([0])})
    assert shape_list(s) == [(N, 0), (ZSet.finite([0]), 1)]
    assert shape_list(StripSet.empty(3)) == []


def test_with_period_refines_columns():
    s = StripSet.from_columns(2, {0: N})  # 2N
    t = s.with_period(4)
    assert t.integers_in(-8, 12) == s.integers_in(-8, 12)
    assert t.residues() == [0, 2]


def test_translate_moves_integers():
    rng = random.Random(5)
    for _ in range(30):
        m = rng.randint(1, 5)
        s = random_strip(rng, m, plain=True)
        k = rng.randint(-9, 9)
        t = s.translate(k)
        for n in range(-30, 30):
            assert t.mult_at(n + k) == s.mult_at(n)


def test_disjoint_union_columnwise():
    a = StripSet.from_integers(2, [0, 1])
    assert a.disjoint_union(a).mult_at(0) == 2
    assert a.union(a) == a
    assert disjoint_union(a.cols[0], a.cols[0]).mult_at(0) == 2
