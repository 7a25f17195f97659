import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from perimax import metric_plane as mp
from perimax import convex_body as cb
from perimax import simple_polygon as sp


def poly(*xy):
    return sp.closed_polygon([mp.euclidean_point(x, y) for x, y in xy])


BOWTIE = ((0, 0), (1, 1), (1, 0), (0, 1))


def test_perimeter_unit_square():
    assert abs(sp.perimeter(poly((0, 0), (1, 0), (1, 1), (0, 1))) - 4) < 1e-15


def test_perimeter_degenerate_collinear():
    assert abs(sp.perimeter(poly((0, 0), (0, 1), (0, 0.5))) - 2) < 1e-15


def test_perimeter_regular_pentagon(regular_pentagon):
    assert abs(sp.perimeter(regular_pentagon) - 10 * math.sin(math.pi / 5)) < 1e-12


def test_perimeter_invariant_under_rotation_and_reversal(regular_pentagon):
    vs = list(regular_pentagon.vertices)
    base = sp.perimeter(regular_pentagon)
    for k in range(1, 5):
        rot = sp.closed_polygon(vs[k:] + vs[:k])
        assert abs(sp.perimeter(rot) - base) < 1e-12
    rev = sp.closed_polygon(list(reversed(vs)))
    assert abs(sp.perimeter(rev) - base) < 1e-12


def test_is_simple_square():
    assert sp.is_simple(poly((0, 0), (1, 0), (1, 1), (0, 1))).simple


def test_is_simple_bowtie_witness():
    check = sp.is_simple(poly(*BOWTIE))
    assert not check.simple
    assert check.witness == (0, 2)


def test_is_simple_repeated_vertex():
    check = sp.is_simple(poly((0, 0), (1, 0), (0, 0), (0, 1)))
    assert not check.simple


def test_is_simple_vertex_on_foreign_edge():
    # vertex (0.5, 0) lies in the middle of edge [(0,0),(1,0)]
    check = sp.is_simple(poly((0, 0), (1, 0), (1, 1), (0.5, 0), (0, 1)))
    assert not check.simple


def test_is_simple_cyclic_relabeling_invariant():
    vs = [(0, 0), (2, 0), (2, 1), (1, 0.5), (0, 1)]
    base = sp.is_simple(poly(*vs)).simple
    for k in range(1, len(vs)):
        assert sp.is_simple(poly(*(vs[k:] + vs[:k]))).simple == base


def test_contained_in(unit_disk, regular_pentagon):
    assert sp.contained_in(regular_pentagon, unit_disk)
    shifted = sp.closed_polygon([mp.euclidean_point(v.coords[0] + 1e-6, v.coords[1])
                                 for v in regular_pentagon.vertices])
    assert not sp.contained_in(shifted, unit_disk)


def test_contained_in_boundary_square(unit_disk):
    s = math.sqrt(0.5)
    square = poly((s, s), (-s, s), (-s, -s), (s, -s))
    assert sp.contained_in(square, unit_disk)


def test_uncross_bowtie_becomes_square():
    fixed = sp.uncross(poly(*BOWTIE))
    assert sp.is_simple(fixed).simple
    assert abs(sp.perimeter(fixed) - 4) < 1e-12
    assert sp.perimeter(fixed) < sp.perimeter(poly(*BOWTIE))


def test_uncross_fixed_point():
    square = poly((0, 0), (1, 0), (1, 1), (0, 1))
    out = sp.uncross(square)
    assert all(mp.distance(a, b) == 0 for a, b in zip(out.vertices, square.vertices))


def test_uncross_never_increases_perimeter():
    rng = random.Random(9)
    for _ in range(200):
        vs = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(9)]
        P = poly(*vs)
        try:
            out = sp.uncross(P)
        except mp.GeometryError:
            continue
        assert sp.perimeter(out) <= sp.perimeter(P) + 1e-12
        assert sp.is_simple(out).simple


def test_uncross_random_hyperbolic():
    rng = random.Random(10)
    done = 0
    while done < 100:
        vs = []
        for _ in range(7):
            u, v = rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)
            vs.append(mp.poincare_point(u, v))
        P = sp.closed_polygon(vs)
        try:
            out = sp.uncross(P)
        except mp.GeometryError:
            continue
        done += 1
        assert sp.is_simple(out).simple
        assert sp.perimeter(out) <= sp.perimeter(P) + 1e-9


def test_uncross_exhausted_carries_partial():
    P = poly(*BOWTIE)
    with pytest.raises(sp.UncrossError) as err:
        sp.uncross(P, max_passes=0)
    assert err.value.partial.n == 4


def test_metric_mismatch(unit_disk):
    P = sp.closed_polygon([mp.poincare_point(0.1, 0), mp.poincare_point(0, 0.1),
                           mp.poincare_point(-0.1, 0)])
    with pytest.raises(mp.GeometryError, match="metric mismatch"):
        sp.contained_in(P, unit_disk)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)),
                min_size=3, max_size=8))
def test_perimeter_rotation_invariance_property(coords):
    try:
        P = poly(*coords)
    except mp.GeometryError:
        return
    base = sp.perimeter(P)
    vs = list(P.vertices)
    rot = sp.closed_polygon(vs[1:] + vs[:1])
    assert abs(sp.perimeter(rot) - base) <= 1e-12 * max(1.0, base)
