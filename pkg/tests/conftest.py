import math

import pytest

STANDARD_LAMBDAS = (0.05, 0.1, 0.5, 1.0 / (2.0 * math.pi), 1.0, 5.0, 20.0)
STANDARD_LBARS = (0.0, 0.25, 0.45, 0.5, 0.55, 1.0, 1.5)
STANDARD_GRID = [(lam, lb) for lam in STANDARD_LAMBDAS for lb in STANDARD_LBARS]


def grid_id(point):
    lam, lb = point
    return f"lam={lam:.4g}-lbar={lb}"


@pytest.fixture(params=STANDARD_GRID, ids=[grid_id(p) for p in STANDARD_GRID])
def grid_point(request):
    return request.param
