import pytest

from capc.bench import (
    band,
    best_time,
    exponential_pair,
    loglog_slope,
    measure_blowup,
    measure_point,
    report,
    width_family,
)
from capc.gfp import EQUIVALENCE, SUBTYPE, gfp
from capc.naive import eqtype_naive
from capc.types import check_sort, flatten_union, size, unfold_mu


def test_width_family_is_linear_in_width_and_depth():
    for d in range(2, 9):
        for k in (1, 2, 4, 8):
            t = width_family(d, k)
            check_sort(t)
            # per level: binder, d - 1 unions, d applications, d atoms, d - 1 variables
            assert size(t) == k * (4 * d - 1) + 1
    assert len(flatten_union(unfold_mu(width_family(5, 3)))) == 5


def test_width_family_matches_its_reversal():
    for d, k in ((2, 2), (3, 3), (5, 2)):
        a, b = width_family(d, k), width_family(d, k, reverse=True)
        assert a != b
        assert gfp(a, b, EQUIVALENCE) and gfp(b, a, SUBTYPE)
        assert eqtype_naive(a, b)


def test_width_family_rejects_empty_shapes():
    with pytest.raises(ValueError):
        width_family(0, 3)


def test_band_and_slope():
    assert band([2.0, 3.0, 6.0]) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        band([1.0, 0.0])
    xs = [1, 2, 4, 8]
    assert loglog_slope(xs, [x**2 for x in xs]) == pytest.approx(2.0)
    assert loglog_slope(xs, [5 * x for x in xs]) == pytest.approx(1.0)


def test_best_time_is_positive():
    assert 0 < best_time(lambda: sum(range(100)), 3) < 1


def test_measure_point_counters():
    p = measure_point(3, 2, EQUIVALENCE, repeats=1)
    assert p.holds and p.iterations <= p.size
    assert p.universe < p.size
    assert p.per_node_width == pytest.approx(p.seconds / (p.universe * 3))
    assert "equivalence" in report([p])


def test_exponential_pair_and_blowup():
    a, b = exponential_pair(3)
    assert b == unfold_mu(a)
    pts = measure_blowup(range(2, 5), repeats=1)
    assert [p.n for p in pts] == [2, 3, 4]
    assert [p.naive_calls for p in pts] == [9, 14, 20]
    assert all(p.automata_seconds < 1 for p in pts)
