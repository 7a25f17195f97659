import itertools
import math
import random

import pytest

from perimax import metric_plane as mp
from perimax import convex_body as cb
from perimax import simple_polygon as sp
from perimax import certificate as ct
from perimax import search_harness as sh
from perimax import triangle_bound as tb


# ---------------------------------------------------------------------------
# normalize
# ---------------------------------------------------------------------------

def test_normalize_canonical_position(regular_pentagon):
    Pn, nz = ct.normalize(regular_pentagon)
    lens = [mp.distance(Pn.vertices[i], Pn.vertices[(i + 1) % 5]) for i in range(5)]
    assert abs(max(lens) - 1) < 1e-12
    assert mp.distance(Pn.vertices[0], mp.euclidean_point(0, 0)) < 1e-12
    assert mp.distance(Pn.vertices[1], mp.euclidean_point(0, 1)) < 1e-12


def test_normalize_identity_when_canonical():
    P = sp.closed_polygon([mp.euclidean_point(0, 0), mp.euclidean_point(0, 1),
                           mp.euclidean_point(-0.8, 0.5)])
    Pn, nz = ct.normalize(P)
    assert nz.longest_edge_index == 0
    for a, b in zip(P.vertices, Pn.vertices):
        assert mp.distance(a, b) < 1e-12


def test_normalize_roundtrip(regular_pentagon):
    Pn, nz = ct.normalize(regular_pentagon)
    for v in regular_pentagon.vertices:
        assert mp.distance(nz.inverse(nz.forward(v)), v) < 1e-10


def test_normalize_hyperbolic_records_rho():
    rng = random.Random(1)
    vs = [mp.poincare_point(0.4 * math.cos(2 * math.pi * k / 5 + 0.1),
                            0.4 * math.sin(2 * math.pi * k / 5 + 0.1))
          for k in range(5)]
    P = sp.closed_polygon(vs)
    Pn, nz = ct.normalize(P)
    assert nz.scale is None
    lens = [mp.distance(P.vertices[i], P.vertices[(i + 1) % 5]) for i in range(5)]
    assert abs(nz.rho - max(lens)) < 1e-12
    assert mp.distance(Pn.vertices[0], mp.poincare_point(0, 0)) < 1e-9
    # second vertex on the upward axis at distance rho
    assert abs(Pn.vertices[1].data[1]) < 1e-9
    assert abs(mp.distance(Pn.vertices[0], Pn.vertices[1]) - nz.rho) < 1e-11
    for v in P.vertices:
        assert mp.distance(nz.inverse(nz.forward(v)), v) < 1e-10


def test_normalize_rejects_even_or_nonsimple():
    square = sp.closed_polygon([mp.euclidean_point(0, 0), mp.euclidean_point(1, 0),
                                mp.euclidean_point(1, 1), mp.euclidean_point(0, 1)])
    with pytest.raises(mp.GeometryError, match="odd"):
        ct.normalize(square)
    bow = sp.closed_polygon([mp.euclidean_point(0, 0), mp.euclidean_point(1, 1),
                             mp.euclidean_point(1, 0), mp.euclidean_point(0, 1),
                             mp.euclidean_point(-0.5, 0.5)])
    if not sp.is_simple(bow).simple:
        with pytest.raises(mp.GeometryError, match="simple"):
            ct.normalize(bow)


# ---------------------------------------------------------------------------
# find_monotone_triple
# ---------------------------------------------------------------------------

def test_monotone_triple_worked_sequence():
    # theta = (0, 1, 0.3, 0.6, 0.2): zeta = (1, -0.7, 0.3, -0.4, -0.2)
    assert ct.find_monotone_triple([0, 1, 0.3, 0.6, 0.2]) == 4


def test_monotone_triple_all_ascending():
    assert ct.find_monotone_triple([0, 1, 2, 3, 4]) == 1


def test_monotone_triple_zero_counts_as_both_signs():
    # zeta = (1, 0, -1, 1, -1): pair (zeta_0, zeta_1) qualifies via the zero
    assert ct.find_monotone_triple([0, 1, 1, 0, 1]) == 1


def test_monotone_triple_even_rejected():
    with pytest.raises(mp.GeometryError, match="parity argument requires odd n"):
        ct.find_monotone_triple([0, 1, 0, 1])


@pytest.mark.parametrize("n", [5, 7])
def test_monotone_triple_exhaustive_sign_patterns(n):
    """Every cyclic sign pattern of odd length has an adjacent same-sign pair."""
    for signs in itertools.product((1.0, -1.0), repeat=n):
        theta = [0.0]
        for s in signs[:-1]:
            theta.append(theta[-1] + s)
        j = ct.find_monotone_triple(theta)
        zeta = [theta[(i + 1) % n] - theta[i] for i in range(n)]
        assert zeta[j - 1] * zeta[j % n] >= 0


def test_monotone_triple_alternating_even_has_no_pair():
    theta = [0.0, 1.0, 0.0, 1.0]
    zeta = [theta[(i + 1) % 4] - theta[i] for i in range(4)]
    assert all(zeta[i] * zeta[(i + 1) % 4] < 0 for i in range(4))
    with pytest.raises(mp.GeometryError):
        ct.find_monotone_triple(theta)


# ---------------------------------------------------------------------------
# candidate triples
# ---------------------------------------------------------------------------

def test_candidates_all_coincident():
    p = mp.euclidean_point(0.2, 0.3)
    cands = ct.candidate_triples(p, p, p, p, p, 5)
    assert len(cands) == 10
    assert all(c.score == 0 for c in cands)


def test_candidates_degenerate_cluster():
    p = mp.euclidean_point(0, 0)
    q = mp.euclidean_point(0, 1)
    cands = ct.candidate_triples(p, q, q, q, q, 5)
    by_labels = {c.labels: c for c in cands}
    assert by_labels[("p", "q", "a")].score == pytest.approx(4.0, abs=1e-12)


def test_candidates_match_direct_recomputation(regular_pentagon):
    vs = regular_pentagon.vertices
    pts = dict(zip("pqabc", vs))
    cands = ct.candidate_triples(*(pts[k] for k in "pqabc"), 5)
    assert len(cands) == 10
    for c in cands:
        x, y, z = (pts[l] for l in c.labels)
        sides = sorted((mp.distance(x, y), mp.distance(y, z), mp.distance(x, z)),
                       reverse=True)
        want = 3 * sides[0] + sides[1] + sides[2]
        assert abs(c.score - want) < 1e-12
    assert all(a.score <= b.score for a, b in zip(cands, cands[1:]))


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def test_certify_triangle_is_itself(unit_disk):
    P = sp.closed_polygon([mp.euclidean_point(0.9, 0), mp.euclidean_point(-0.2, 0.5),
                           mp.euclidean_point(0, -0.6)])
    cert = ct.certify(P, unit_disk)
    assert cert.slack >= -1e-9
    # pre-push, some triple scores exactly the perimeter for n=3
    per_n = sp.perimeter(P)
    assert any(abs(s - per_n) < 1e-9 for s in
               [sc * (cert.trace.scale or 1.0) for sc in cert.trace.candidate_scores])


def test_certify_regular_pentagon(unit_disk, regular_pentagon):
    cert = ct.certify(regular_pentagon, unit_disk)
    assert cert.slack >= 0
    assert cert.bound <= tb.bound_for(unit_disk, 5).value + 1e-6


def test_certify_rejects_bad_inputs(unit_disk):
    bow = sp.closed_polygon([mp.euclidean_point(0, 0), mp.euclidean_point(0.5, 0.5),
                             mp.euclidean_point(0.5, 0), mp.euclidean_point(0, 0.5),
                             mp.euclidean_point(-0.2, 0.2)])
    if not sp.is_simple(bow).simple:
        with pytest.raises(mp.GeometryError, match="not simple"):
            ct.certify(bow, unit_disk)
    sq = sp.closed_polygon([mp.euclidean_point(0, 0), mp.euclidean_point(0.5, 0),
                            mp.euclidean_point(0.5, 0.5), mp.euclidean_point(0, 0.5)])
    with pytest.raises(mp.GeometryError, match="odd"):
        ct.certify(sq, unit_disk)
    far = sp.closed_polygon([mp.euclidean_point(0, 0), mp.euclidean_point(3, 0),
                             mp.euclidean_point(0, 3)])
    with pytest.raises(mp.GeometryError, match="contained"):
        ct.certify(far, unit_disk)


def test_certify_campaign_random_heptagons(unit_disk):
    for t in range(200):
        P = sh.random_simple_polygon(unit_disk, 7, seed=1000 + t)
        cert = ct.certify(P, unit_disk)
        assert cert.slack >= -1e-9 * max(1.0, cert.perimeter)


def test_certify_rigid_motion_invariance(unit_disk):
    phi = 0.71
    c, s = math.cos(phi), math.sin(phi)
    shift = (0.3, -0.8)

    def move(p):
        x, y = p.coords
        return mp.euclidean_point(c * x - s * y + shift[0], s * x + c * y + shift[1])

    for t in range(20):
        P = sh.random_simple_polygon(unit_disk, 7, seed=500 + t)
        cert1 = ct.certify(P, unit_disk)
        body2 = cb.disk_body(move(mp.euclidean_point(0, 0)), 1.0)
        P2 = sp.closed_polygon([move(v) for v in P.vertices])
        cert2 = ct.certify(P2, body2)
        assert abs(cert1.slack - cert2.slack) < 1e-9 * max(1.0, cert1.perimeter)
        assert cert1.trace.case == cert2.trace.case


def test_certify_hyperbolic(h2_disk):
    for t in range(50):
        P = sh.random_simple_polygon(h2_disk, 5, seed=2000 + t)
        cert = ct.certify(P, h2_disk)
        assert cert.slack >= -1e-9 * max(1.0, cert.perimeter)


# ---------------------------------------------------------------------------
# inequality verifiers
# ---------------------------------------------------------------------------

def test_eu_gap_one_dimensional_collapse():
    # omega_a = omega_c = 0: gap collapses to 5 theta_c + theta_a - 5
    # (theta_a > theta_c - 1 keeps dist(a, c) < 1 in force)
    for ta, tc in ((0.4, 1.3), (0.25, 1.2), (0.5, 1.45)):
        want = 5 * tc + ta - 5
        assert abs(ct.eu_inequality_gap(ta, 0.0, tc, 0.0) - want) < 1e-12


def test_eu_gap_pinned_example():
    g = ct.eu_inequality_gap(0.5, 0.6, 1.4, 0.9)
    assert abs(g - 3.178574548052011) < 1e-12


def test_eu_gap_precondition_errors():
    with pytest.raises(ct.DomainError, match="theta_a"):
        ct.eu_inequality_gap(0.6, 0.0, 1.2, 0.0)
    with pytest.raises(ct.DomainError, match="theta_c"):
        ct.eu_inequality_gap(0.2, 0.0, 0.9, 0.0)
    with pytest.raises(ct.DomainError, match="omega_c"):
        ct.eu_inequality_gap(0.2, 1.0, 1.2, 0.3)
    with pytest.raises(ct.DomainError, match="dist"):
        ct.eu_inequality_gap(0.0, 0.0, 1.4, 2.0)


def test_eu_derivative_values():
    assert ct.eu_derivative_I(0.3, 1.0, 0.0) == 0.0
    v = ct.eu_derivative_I(0.0, 1.0, 0.5)
    assert abs(v - 3 * 0.5 / math.hypot(0.5, 1.0)) < 1e-15
    v2 = ct.eu_derivative_I(0.5, 1.2, 0.6)
    assert abs(v2 - 0.9344852305878528) < 1e-12


def test_hy_derivative_values():
    assert ct.hy_derivative_I(0.3, 1.0, 0.0) == 0.0
    # high-precision reference, 25 significant digits: 1.584188053847174253551994
    v = ct.hy_derivative_I(0.5, 1.2, 0.6)
    assert abs(v - 1.5841880538471742) < 1e-12
    ta0 = ct.hy_derivative_I(0.0, 1.3, 0.4)
    y = math.cosh(1.3)
    want = 3 * y * math.sinh(0.4) / math.sqrt(y * y * math.cosh(0.4) ** 2 - 1)
    assert abs(ta0 - want) < 1e-15
    assert ta0 > 0


def test_derivative_domain_errors():
    with pytest.raises(ct.DomainError):
        ct.eu_derivative_I(0.8, 1.0, 0.1)
    with pytest.raises(ct.DomainError):
        ct.hy_derivative_I(0.0, -1.0, 0.1)


def test_inequality_sweeps_small():
    from perimax.inequality_sweeps import run_sweeps
    results = run_sweeps(2000, seed=123)
    for r in results:
        assert r.failures == 0, r
        if r.min_margin is not None and r.name != "hypercycle_monotone":
            assert r.min_margin >= 0.0


# ---------------------------------------------------------------------------
# hyperbolic in-strip dichotomy
# ---------------------------------------------------------------------------

def fermi_point(L, t, w):
    """Point with signed coordinate t along L and perpendicular offset w."""
    n, r0, u = mp._line_frame(L)
    g = mp._vadd(mp._vscale(r0, math.cosh(t)), mp._vscale(u, math.sinh(t)))
    x = mp._vadd(mp._vscale(g, math.cosh(w)), mp._vscale(n, -math.sinh(w)))
    return mp.Point(mp.Metric.HYPERBOLIC, mp._renormalize(x))


def case1_sample(rng):
    p = mp.poincare_point(0, 0)
    rho = rng.uniform(0.6, 1.6)
    L0 = mp.geodesic_through(p, mp.poincare_point(0.5, 0))
    base = mp._line_param(mp._line_frame(L0), p.data)
    q = fermi_point(L0, base + rho, 0.0)
    L = mp.geodesic_through(p, q)
    t0 = mp.signed_line_coordinate(p, L)
    ta, tb_, tc = sorted(rng.uniform(0.0, rho) for _ in range(3))
    wa = rng.uniform(0.05, 1.2)
    wb = rng.uniform(0.05, 1.2)
    wc = rng.uniform(0.05, 1.2)
    frame = mp._line_frame(L)
    ppar = mp._line_param(frame, p.data)
    a = fermi_point(L, ppar + ta, wa)
    b = fermi_point(L, ppar + tb_, wb)
    c = fermi_point(L, ppar + tc, wc)
    return p, q, a, b, c


def test_case1_never_neither():
    rng = random.Random(99)
    accepted = 0
    while accepted < 10000:
        p, q, a, b, c = case1_sample(rng)
        try:
            res = ct.hy_case1_domination(p, q, a, b, c)
        except ct.DomainError:
            continue
        accepted += 1
        assert res is not ct.Case1Domination.NEITHER


def test_case1_symmetric_returns_a_via_p():
    p = mp.poincare_point(0, 0)
    L0 = mp.geodesic_through(p, mp.poincare_point(0.5, 0))
    rho = 1.0
    frame = mp._line_frame(L0)
    ppar = mp._line_param(frame, p.data)
    q = fermi_point(L0, ppar + rho, 0.0)
    L = mp.geodesic_through(p, q)
    ppar = mp._line_param(mp._line_frame(L), p.data)
    a = fermi_point(L, ppar + 0.3, 0.4)
    c = fermi_point(L, ppar + 0.7, 0.4)
    b = fermi_point(L, ppar + 0.5, 0.9)
    res = ct.hy_case1_domination(p, q, a, b, c)
    assert res is ct.Case1Domination.A_VIA_P


def test_case1_hypothesis_violation_named():
    p = mp.poincare_point(0, 0)
    q = mp.poincare_point(0.4, 0)
    with pytest.raises(ct.DomainError, match="hypothesis failed"):
        # b = p breaks the feet ordering / hull hypotheses
        ct.hy_case1_domination(p, q, mp.poincare_point(0.1, 0.2), p,
                               mp.poincare_point(0.3, 0.2))
    with pytest.raises(ct.DomainError, match="metric"):
        ct.hy_case1_domination(mp.euclidean_point(0, 0), mp.euclidean_point(1, 0),
                               mp.euclidean_point(0.2, 0.2), mp.euclidean_point(0.5, 0.4),
                               mp.euclidean_point(0.8, 0.2))
