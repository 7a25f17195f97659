"""Randomized domain sweeps of the library's core inequality claims.

Each sweep samples the precondition domain of one verifier, evaluates it and
tracks the minimum observed margin; the claims are exact inequalities, so any
negative margin is a failure and is reported with the offending sample.
Everything is driven by one seeded generator, so a fixed (samples, seed) pair
gives identical results on every run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .metric_plane import (
    geodesic_through,
    hypercycle_with_reference_line,
    hypercycle_distance_monotone_check,
    distance,
    poincare_point,
)
from .certificate import (
    eu_derivative_I,
    eu_inequality_gap,
    find_monotone_triple,
    hy_derivative_I,
)


@dataclass
class SweepResult:
    name: str
    samples: int
    min_margin: Optional[float]
    failures: int
    worst_sample: Optional[Tuple[float, ...]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def sweep_eu_inequality_gap(samples: int, rng: np.random.Generator) -> SweepResult:
    min_m = None
    worst = None
    fails = 0
    done = 0
    while done < samples:
        ta = rng.uniform(0.0, 0.5)
        tc = rng.uniform(1.0, 1.5)
        wa = rng.uniform(0.0, 3.0)
        wc = wa + rng.uniform(-0.9, 0.9)
        if tc <= 1.0 or wc < 0.0 or wc < wa / 2.0:
            continue
        if math.hypot(wc - wa, tc - ta) >= 1.0:
            continue
        g = eu_inequality_gap(ta, wa, tc, wc)
        done += 1
        if min_m is None or g < min_m:
            min_m, worst = g, (ta, wa, tc, wc)
        if g < 0.0:
            fails += 1
    return SweepResult("eu_inequality_gap", samples, min_m, fails, worst)


def sweep_eu_derivative(samples: int, rng: np.random.Generator) -> SweepResult:
    min_m = None
    worst = None
    fails = 0
    for _ in range(samples):
        tc = rng.uniform(1e-6, 3.0)
        ta = rng.uniform(0.0, tc / 2.0)
        wc = rng.uniform(0.0, 3.0)
        v = eu_derivative_I(ta, tc, wc)
        if min_m is None or v < min_m:
            min_m, worst = v, (ta, tc, wc)
        if v < 0.0:
            fails += 1
    return SweepResult("eu_derivative_I", samples, min_m, fails, worst)


def sweep_hy_derivative(samples: int, rng: np.random.Generator) -> SweepResult:
    min_m = None
    worst = None
    fails = 0
    for _ in range(samples):
        tc = rng.uniform(1e-6, 3.0)
        ta = rng.uniform(0.0, tc / 2.0)
        wc = rng.uniform(0.0, 3.0)
        v = hy_derivative_I(ta, tc, wc)
        if min_m is None or v < min_m:
            min_m, worst = v, (ta, tc, wc)
        if v < 0.0:
            fails += 1
    return SweepResult("hy_derivative_I", samples, min_m, fails, worst)


def sweep_hypercycle_monotone(samples: int, rng: np.random.Generator) -> SweepResult:
    """dist(x, y) must not decrease as y moves along a hypercycle away from
    the projection of x; margin is d2 - d1 over arc-ordered pairs."""
    min_m = None
    worst = None
    fails = 0
    done = 0
    while done < samples:
        a = rng.uniform(-0.6, 0.6, size=2)
        b = rng.uniform(-0.6, 0.6, size=2)
        if math.hypot(a[0] - b[0], a[1] - b[1]) < 1e-3:
            continue
        ref = geodesic_through(poincare_point(a[0], a[1]),
                               poincare_point(b[0], b[1]))
        H = hypercycle_with_reference_line(
            ref, poincare_point(*rng.uniform(-0.6, 0.6, size=2)))
        x = poincare_point(*rng.uniform(-0.7, 0.7, size=2))
        t1, t2 = rng.uniform(-2.0, 2.0, size=2)
        y1 = H.point_at(t1)
        y2 = H.point_at(t2)
        ok = hypercycle_distance_monotone_check(x, H, y1, y2)
        tx = H.foot_parameter(x)
        a1 = abs(t1 - tx)
        a2 = abs(t2 - tx)
        if a2 >= a1:
            margin = distance(x, y2) - distance(x, y1)
            if min_m is None or margin < min_m:
                min_m, worst = margin, (t1, t2)
        if not ok:
            fails += 1
        done += 1
    return SweepResult("hypercycle_monotone", samples, min_m, fails, worst)


def sweep_monotone_triple(samples: int, rng: np.random.Generator,
                          ns: Tuple[int, ...] = (5, 7, 9)) -> SweepResult:
    fails = 0
    done = 0
    for _ in range(samples):
        for n in ns:
            theta = rng.uniform(-1.0, 1.0, size=n)
            j = find_monotone_triple(list(theta))
            done += 1
            if not 1 <= j <= n:
                fails += 1
            else:
                z_prev = theta[j % n] - theta[j - 1]
                z_j = theta[(j + 1) % n] - theta[j % n]
                if z_prev * z_j < 0.0:
                    fails += 1
    return SweepResult("monotone_triple", done, None, fails)


def run_sweeps(samples: int, seed: int) -> List[SweepResult]:
    rng = np.random.default_rng(seed)
    return [
        sweep_eu_inequality_gap(samples, rng),
        sweep_eu_derivative(samples, rng),
        sweep_hy_derivative(samples, rng),
        sweep_hypercycle_monotone(samples, rng),
        sweep_monotone_triple(samples, rng),
    ]
