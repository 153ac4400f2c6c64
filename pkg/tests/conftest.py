import math

import numpy as np
import pytest
from hypothesis import strategies as st

from fermi_mi.geometry import Interval, MultiInterval


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def interval_pair(draw_min_gap=1e-3):
    """Two ordered disjoint intervals on the line, A to the left of B."""

    @st.composite
    def _pair(draw):
        pts = draw(st.lists(st.floats(-50, 50, allow_nan=False), min_size=4, max_size=4, unique=True))
        a1, b1, a2, b2 = sorted(pts)
        if min(b1 - a1, a2 - b1, b2 - a2) < draw_min_gap:
            a1, b1, a2, b2 = a1, a1 + 1.0, a1 + 2.0, a1 + 3.0
        return Interval(a1, b1), Interval(a2, b2)

    return _pair()


def line(*pairs) -> MultiInterval:
    from fermi_mi.geometry import normalize

    return normalize(pairs)


def close(a, b, tol):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)
