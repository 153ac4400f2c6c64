import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermi_mi.errors import (DomainError, InvalidInterval, OverlappingIntervals, PoleAtEndpoint,
                             TouchingIntervals)
from fermi_mi.geometry import (Geometry, Interval, MobiusMap, MultiInterval, apply_mobius,
                               cross_ratio, distance, normalize)

from conftest import interval_pair


class TestNormalize:
    def test_sorts(self):
        assert normalize([(2, 3), (0, 1)]).to_pairs() == [[0, 1], [2, 3]]

    def test_touching(self):
        with pytest.raises(TouchingIntervals):
            normalize([(0, 1), (1, 2)])

    def test_overlapping(self):
        with pytest.raises(OverlappingIntervals):
            normalize([(0, 2), (1, 3)])

    @pytest.mark.parametrize("pair", [(1, 1), (2, 1), (0, math.inf), (math.nan, 1)])
    def test_invalid(self, pair):
        with pytest.raises(InvalidInterval):
            normalize([pair])

    def test_empty_region(self):
        m = normalize([])
        assert m.is_empty() and len(m) == 0

    def test_idempotent(self):
        m = normalize([(5, 6), (0, 1), (2, 3)])
        assert normalize(m.to_pairs()) == m

    def test_unsorted_direct_construction_rejected(self):
        with pytest.raises(InvalidInterval):
            MultiInterval((Interval(2, 3), Interval(0, 1)))

    def test_circle_reduces_angles(self):
        m = normalize([(2 * math.pi + 0.5, 2 * math.pi + 1.0)], "circle")
        assert m.starts[0] == pytest.approx(0.5)
        assert m.geometry is Geometry.CIRCLE

    def test_circle_wrap_overlap(self):
        with pytest.raises((OverlappingIntervals, TouchingIntervals)):
            normalize([(6.0, 7.0), (0.2, 1.0)], "circle")  # first arc passes angle 0 into the second


class TestSetOperations:
    def test_line_union_intersection(self):
        A, B = normalize([(0, 2)]), normalize([(1, 3), (4, 5)])
        assert A.union(B).to_pairs() == [[0, 3], [4, 5]]
        assert A.intersection(B).to_pairs() == [[1, 2]]

    def test_union_touching_raises(self):
        with pytest.raises(TouchingIntervals):
            normalize([(0, 1)]).union(normalize([(1, 2)]))

    def test_circle_complement(self):
        A = normalize([(1.0, 2.0)], "circle")
        c = A.complement()
        assert c.to_pairs() == [[2.0, 1.0 + 2 * math.pi]]
        assert c.complement() == A

    def test_complement_line_rejected(self):
        with pytest.raises(DomainError):
            normalize([(0, 1)]).complement()

    def test_circle_union_to_whole(self):
        A = normalize([(1.0, 2.0)], "circle")
        B = normalize([(1.5, 1.2 + 2 * math.pi)], "circle")
        assert A.union(B).whole
        wrap = normalize([(6.0, 6.5)], "circle")  # crosses angle 0
        assert np.allclose(A.union(wrap).to_pairs(), [[1.0, 2.0], [6.0, 6.5]])
        assert np.allclose(wrap.intersection(normalize([(0.1, 0.3)], "circle")).to_pairs(), [[0.1, 6.5 - 2 * math.pi]])
        full = MultiInterval.full_circle()
        assert full.complement().is_empty()

    def test_contains(self):
        m = normalize([(0, 1), (2, 3)])
        assert m.contains(0.5) and not m.contains(1.0) and not m.contains(1.5)


class TestCrossRatio:
    def test_unit_pair(self):
        assert cross_ratio(Interval(0, 1), Interval(2, 3)) == pytest.approx(0.75, abs=1e-15)

    def test_far_apart(self):
        eta = cross_ratio(Interval(0, 1), Interval(1e6, 1e6 + 1))
        assert 1 - 1e-11 < eta < 1

    def test_small_gap(self):
        eta = cross_ratio(Interval(0, 1), Interval(1 + 1e-6, 2))
        assert eta == pytest.approx(2e-6, rel=1e-5)

    def test_touching(self):
        with pytest.raises(TouchingIntervals):
            cross_ratio(Interval(0, 1), Interval(1, 2))

    def test_order_agnostic(self):
        assert cross_ratio(Interval(2, 3), Interval(0, 1)) == cross_ratio(Interval(0, 1), Interval(2, 3))

    @given(interval_pair())
    def test_in_unit_interval(self, pair):
        assert 0 < cross_ratio(*pair) < 1

    def test_circle_uses_chords(self):
        A, B = Interval(0.0, 1.0), Interval(2.0, 3.5)
        d = lambda x, y: 2 * abs(math.sin((x - y) / 2))
        expect = d(2.0, 1.0) * d(3.5, 0.0) / (d(2.0, 0.0) * d(3.5, 1.0))
        assert cross_ratio(A, B, "circle") == pytest.approx(expect, rel=1e-14)
        assert distance(0.0, math.pi, Geometry.CIRCLE) == pytest.approx(2.0)


class TestMobius:
    def test_identity(self):
        m = normalize([(0, 1), (2, 3)])
        assert apply_mobius(MobiusMap.identity(), m) == m

    def test_translation(self):
        assert apply_mobius(MobiusMap.translation(5), normalize([(0, 1)])).to_pairs() == [[5, 6]]

    def test_inversion(self):
        out = apply_mobius(MobiusMap.inversion(), normalize([(1, 2), (3, 4)]))
        assert np.allclose(out.to_pairs(), [[-1, -0.5], [-1 / 3, -0.25]], atol=1e-15)

    def test_pole_at_endpoint(self):
        with pytest.raises(PoleAtEndpoint):
            apply_mobius(MobiusMap.inversion(), normalize([(0, 1)]))

    def test_pole_inside(self):
        with pytest.raises(PoleAtEndpoint):
            apply_mobius(MobiusMap.inversion(), normalize([(-1, 1)]))

    def test_normalised_determinant(self):
        m = MobiusMap(2, 1, 0, 3)
        assert m.a * m.d - m.b * m.c == pytest.approx(1.0)
        assert m(1.0) == pytest.approx(1.0)

    def test_orientation_reversing_rejected(self):
        with pytest.raises(DomainError):
            MobiusMap(0, 1, 1, 0)

    def test_compose(self):
        f, g = MobiusMap(1, 2, 0.5, 3), MobiusMap.inversion()
        assert f.compose(g)(0.7) == pytest.approx(f(g(0.7)), rel=1e-13)

    @settings(max_examples=60)
    @given(interval_pair(), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
    def test_cross_ratio_invariance(self, pair, b, c, logd):
        A, B = pair
        m = MobiusMap(1.0, b, c, math.exp(logd) + b * c)  # det = exp(logd) > 0
        try:
            mA = apply_mobius(m, MultiInterval((A,)))
            mB = apply_mobius(m, MultiInterval((B,)))
        except PoleAtEndpoint:
            return
        before = cross_ratio(A, B)
        after = cross_ratio(mA.parts[0], mB.parts[0])
        assert after == pytest.approx(before, abs=1e-10)

    def test_circle_rotation_preserves_cross_ratio(self):
        A, B = normalize([(0.3, 1.0)], "circle"), normalize([(2.0, 4.0)], "circle")
        m = MobiusMap(2.0, 1.0, 1.0, 1.0)
        mA, mB = apply_mobius(m, A), apply_mobius(m, B)
        assert cross_ratio(mA.parts[0], mB.parts[0], "circle") == pytest.approx(
            cross_ratio(A.parts[0], B.parts[0], "circle"), abs=1e-12)
