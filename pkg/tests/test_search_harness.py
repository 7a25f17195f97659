import io
import math
import os
import random

import pytest

from perimax import metric_plane as mp
from perimax import convex_body as cb
from perimax import simple_polygon as sp
from perimax import search_harness as sh
from perimax import triangle_bound as tb


def test_generator_triangle_always_simple(unit_disk):
    for seed in range(20):
        P = sh.random_simple_polygon(unit_disk, 3, seed)
        assert sp.is_simple(P).simple


def test_generator_deterministic(unit_disk):
    P1 = sh.random_simple_polygon(unit_disk, 9, 42)
    P2 = sh.random_simple_polygon(unit_disk, 9, 42)
    assert all(mp.distance(a, b) == 0 for a, b in zip(P1.vertices, P2.vertices))


def test_generator_campaign_valid(unit_disk, unit_square, h2_disk):
    for C in (unit_disk, unit_square, h2_disk):
        for seed in range(100):
            P = sh.random_simple_polygon(C, 9, seed)
            assert sp.is_simple(P).simple
            assert sp.contained_in(P, C)


def test_climb_zero_steps_identity(unit_disk):
    P0 = sh.random_simple_polygon(unit_disk, 5, 1)
    P = sh.local_search_max_perimeter(P0, unit_disk, 0, 0.3, 2)
    assert all(mp.distance(a, b) == 0 for a, b in zip(P0.vertices, P.vertices))


def test_climb_never_decreases_and_stays_valid(unit_disk, h2_disk):
    for C in (unit_disk, h2_disk):
        for seed in (3, 4):
            P0 = sh.random_simple_polygon(C, 7, seed)
            P = sh.local_search_max_perimeter(P0, C, 20000, 0.4, seed)
            assert sp.perimeter(P) >= sp.perimeter(P0)
            assert sp.is_simple(P).simple
            assert sp.contained_in(P, C)


def test_climb_even_n4_approaches_diameter_bound(unit_disk):
    best = 0.0
    for seed in range(6):
        P0 = sh.random_simple_polygon(unit_disk, 4, seed)
        P = sh.local_search_max_perimeter(P0, unit_disk, 100000, 0.5, seed + 100)
        best = max(best, sp.perimeter(P))
        assert sp.perimeter(P) <= 8.0 + 1e-9
    assert best >= 7.9


def test_near_extremal_odd_n3_is_optimizer_triangle(unit_disk):
    P = sh.near_extremal_odd(unit_disk, 3, 1e-4)
    assert abs(sp.perimeter(P) - tb.bound_for(unit_disk, 3).value) < 1e-9


def test_near_extremal_odd_gap(unit_disk, unit_square, h2_disk):
    for C in (unit_disk, unit_square, h2_disk):
        for n in (5, 7):
            bound = tb.bound_for(C, n).value
            P = sh.near_extremal_odd(C, n, 1e-4)
            assert sp.is_simple(P).simple and sp.contained_in(P, C)
            assert sp.perimeter(P) >= bound - 1e-2


def test_near_extremal_odd_eps_monotone(unit_disk):
    bound = tb.bound_for(unit_disk, 5).value
    gap1 = bound - sp.perimeter(sh.near_extremal_odd(unit_disk, 5, 1e-4))
    gap2 = bound - sp.perimeter(sh.near_extremal_odd(unit_disk, 5, 5e-5))
    assert gap2 <= gap1 + 1e-12


def test_near_extremal_odd_rejects_bad_eps(unit_disk):
    with pytest.raises(sh.ConstructionError):
        sh.near_extremal_odd(unit_disk, 9, 0.5)


def test_near_extremal_even_gap(unit_disk, unit_square):
    for C in (unit_disk, unit_square):
        for n in (4, 6):
            target = n * cb.diameter(C)
            P = sh.near_extremal_even(C, n, 1e-4)
            assert sp.is_simple(P).simple and sp.contained_in(P, C)
            assert sp.perimeter(P) >= target - 1e-2


def test_near_extremal_even_disk_n4_coarse_eps(unit_disk):
    P = sh.near_extremal_even(unit_disk, 4, 1e-3)
    assert sp.perimeter(P) >= 8 - 1e-1


def test_near_extremal_even_eps_sequence_increases(unit_disk, unit_square):
    for C, n in ((unit_disk, 4), (unit_square, 6)):
        pers = [sp.perimeter(sh.near_extremal_even(C, n, e))
                for e in (1e-2, 1e-3, 1e-4)]
        assert pers[0] < pers[1] < pers[2]


def test_near_extremal_even_hyperbolic(h2_disk):
    P = sh.near_extremal_even(h2_disk, 6, 1e-4)
    assert sp.perimeter(P) >= 6 * cb.diameter(h2_disk) - 1e-2


def test_near_extremal_parity_validation(unit_disk):
    with pytest.raises(mp.GeometryError):
        sh.near_extremal_odd(unit_disk, 4, 1e-4)
    with pytest.raises(mp.GeometryError):
        sh.near_extremal_even(unit_disk, 5, 1e-4)


def test_verify_no_counterexample_empty(unit_disk):
    rep = sh.verify_no_counterexample(unit_disk, 5, trials=0, steps=10,
                                      seed=1, progress=io.StringIO())
    assert rep.trials == 0
    assert rep.best_perimeter is None and rep.best_polygon is None


def test_verify_no_counterexample_small(unit_disk):
    buf = io.StringIO()
    rep = sh.verify_no_counterexample(unit_disk, 5, trials=4, steps=10000,
                                      seed=7, progress=buf)
    assert rep.max_slack_violation <= 1e-9
    assert rep.best_perimeter <= rep.bound + 1e-9
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("restart=0 best=")


def test_verify_deterministic_and_parallel_merge_equal(unit_disk):
    rep1 = sh.verify_no_counterexample(unit_disk, 5, trials=4, steps=5000,
                                       seed=9, progress=io.StringIO())
    rep2 = sh.verify_no_counterexample(unit_disk, 5, trials=4, steps=5000,
                                       seed=9, progress=io.StringIO())
    assert rep1.best_perimeter == rep2.best_perimeter
    old = os.environ.get("PERIMAX_THREADS")
    os.environ["PERIMAX_THREADS"] = "4"
    try:
        rep3 = sh.verify_no_counterexample(unit_disk, 5, trials=4, steps=5000,
                                           seed=9, progress=io.StringIO())
    finally:
        if old is None:
            del os.environ["PERIMAX_THREADS"]
        else:
            os.environ["PERIMAX_THREADS"] = old
    assert rep3.best_perimeter == rep1.best_perimeter
    assert rep3.max_slack_violation == rep1.max_slack_violation


def test_verify_rejects_even_n(unit_disk):
    with pytest.raises(mp.GeometryError):
        sh.verify_no_counterexample(unit_disk, 4, trials=1, steps=10, seed=1)
