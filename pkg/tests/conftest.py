import math

import pytest

from perimax.metric_plane import euclidean_point, poincare_point
from perimax.convex_body import disk_body, polygon_body


@pytest.fixture(scope="session")
def unit_disk():
    return disk_body(euclidean_point(0.0, 0.0), 1.0)


@pytest.fixture(scope="session")
def unit_square():
    return polygon_body([euclidean_point(0, 0), euclidean_point(1, 0),
                         euclidean_point(1, 1), euclidean_point(0, 1)])


@pytest.fixture(scope="session")
def h2_disk():
    return disk_body(poincare_point(0.0, 0.0), 1.0)


@pytest.fixture(scope="session")
def regular_pentagon():
    from perimax.simple_polygon import closed_polygon
    return closed_polygon([
        euclidean_point(math.cos(2 * math.pi * k / 5),
                        math.sin(2 * math.pi * k / 5))
        for k in range(5)])
