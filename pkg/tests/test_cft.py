import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermi_mi.cft import (EntropyReport, Method, SubnetParams, duality_gap, duality_scan, extended_mi,
                          g_value, index_limit, mutual_information_exact, pair_with_cross_ratio,
                          singular_limit_mi)
from fermi_mi.errors import DomainError, OverlappingIntervals, TouchingIntervals, ValidationError
from fermi_mi.geometry import Interval, MobiusMap, MultiInterval, apply_mobius, cross_ratio, normalize

from conftest import interval_pair

F_UNIT = math.log(4 / 3) / 6


def F(A, B, r=1, **kw):
    return mutual_information_exact(A, B, r, **kw).value


def G_bruteforce(I, geometry="line"):
    """Independent re-evaluation of G via numpy broadcasting."""
    a, b = np.array(I.starts), np.array(I.ends)
    if geometry == "circle":
        d = lambda x, y: np.abs(2 * np.sin((x - y) / 2))
    else:
        d = lambda x, y: np.abs(x - y)
    iu = np.triu_indices(len(a), 1)
    return (np.log(d(b[:, None], a[None, :])).sum()
            - np.log(d(a[:, None], a[None, :])[iu]).sum()
            - np.log(d(b[:, None], b[None, :])[iu]).sum()) / 6


class TestG:
    def test_unit_interval(self):
        assert g_value(normalize([(0, 1)])) == 0.0

    def test_e6(self):
        assert g_value(normalize([(0, math.exp(6))])) == pytest.approx(1.0, abs=1e-15)

    def test_two_intervals(self):
        assert g_value(normalize([(0, 1), (2, 3)])) == pytest.approx((math.log(3) - 2 * math.log(2)) / 6, abs=1e-15)

    def test_empty_and_full(self):
        assert g_value(MultiInterval.empty()) == 0.0
        assert g_value(MultiInterval.full_circle()) == 0.0

    def test_linear_in_r(self):
        I = normalize([(0, 1), (2, 3), (5, 8)])
        assert g_value(I, 3) == pytest.approx(3 * g_value(I), rel=1e-14)

    @pytest.mark.parametrize("r", [0, -1, 1.5, True])
    def test_bad_r(self, r):
        with pytest.raises(ValidationError):
            g_value(normalize([(0, 1)]), r)

    def test_against_bruteforce(self, rng):
        for _ in range(20):
            pts = np.sort(rng.uniform(-10, 10, 8))
            I = normalize(list(zip(pts[::2], pts[1::2])))
            assert g_value(I) == pytest.approx(G_bruteforce(I), abs=1e-12)


class TestMutualInformation:
    def test_unit_pair(self):
        rep = mutual_information_exact(normalize([(0, 1)]), normalize([(2, 3)]))
        assert isinstance(rep, EntropyReport) and rep.method is Method.CLOSED_FORM
        assert rep.value == pytest.approx(0.0479473, abs=1e-6)
        assert rep.value == pytest.approx(F_UNIT, abs=1e-15)
        assert rep.diagnostics["eta"] == pytest.approx(0.75)

    def test_r2_doubles(self):
        A, B = normalize([(0, 1)]), normalize([(2, 3)])
        assert F(A, B, 2) == pytest.approx(2 * F(A, B), rel=1e-15)

    def test_far_apart_vanishes(self):
        assert F(normalize([(0, 1)]), normalize([(1e8, 1e8 + 1)])) < 1e-15

    def test_empty(self):
        assert F(MultiInterval.empty(), normalize([(0, 1)])) == 0.0

    def test_touching(self):
        with pytest.raises(TouchingIntervals):
            F(normalize([(0, 1)]), normalize([(1, 2)]))

    def test_overlap_needs_flag(self):
        A, B = normalize([(0, 2)]), normalize([(1, 3)])
        with pytest.raises(OverlappingIntervals):
            F(A, B)
        expect = g_value(A) + g_value(B) - g_value(normalize([(0, 3)])) - g_value(normalize([(1, 2)]))
        assert F(A, B, allow_overlap=True) == pytest.approx(expect, abs=1e-15)

    @given(interval_pair())
    def test_cross_ratio_law(self, pair):
        A, B = pair
        rep = mutual_information_exact(MultiInterval((A,)), MultiInterval((B,)))
        assert abs(rep.value + math.log(cross_ratio(A, B)) / 6) < 1e-12

    @given(interval_pair())
    def test_symmetric_and_positive(self, pair):
        A, B = (MultiInterval((p,)) for p in pair)
        assert F(A, B) == F(B, A)
        assert F(A, B) >= 0

    def test_positive_multi_interval(self, rng):
        for _ in range(500):
            pts = np.sort(rng.uniform(-20, 20, 8))
            parts = list(zip(pts[::2], pts[1::2]))
            idx = rng.permutation(4)
            A = normalize([parts[i] for i in idx[:2]])
            B = normalize([parts[i] for i in idx[2:]])
            assert F(A, B) >= -1e-12

    def test_mobius_invariance(self, rng):
        for _ in range(100):
            pts = np.sort(rng.uniform(-5, 5, 8))
            A = normalize([(pts[0], pts[1]), (pts[4], pts[5])])
            B = normalize([(pts[2], pts[3]), (pts[6], pts[7])])
            b, c = rng.uniform(-2, 2, 2)
            m = MobiusMap(1.0, b, c, 0.5 + b * c)
            try:
                mA, mB = apply_mobius(m, A), apply_mobius(m, B)
            except Exception:
                continue
            assert F(mA, mB) == pytest.approx(F(A, B), abs=1e-10)


class TestCircle:
    def test_complement_duality(self, rng):
        for _ in range(50):
            p = np.sort(rng.uniform(0, 2 * math.pi, 4))
            A, B = normalize([(p[0], p[1])], "circle"), normalize([(p[2], p[3])], "circle")
            lhs = F(A, B)
            rhs = F(A.complement(), B.complement(), allow_overlap=True)
            assert rhs == pytest.approx(lhs, abs=1e-10)

    def test_complement_duality_multi(self, rng):
        p = np.sort(rng.uniform(0, 2 * math.pi, 8))
        A = normalize([(p[0], p[1]), (p[4], p[5])], "circle")
        B = normalize([(p[2], p[3]), (p[6], p[7])], "circle")
        assert F(A.complement(), B.complement(), allow_overlap=True) == pytest.approx(F(A, B), abs=1e-10)

    def test_circle_cross_ratio_law(self):
        A, B = normalize([(0.0, 1.0)], "circle"), normalize([(2.0, 3.5)], "circle")
        eta = cross_ratio(A.parts[0], B.parts[0], "circle")
        assert F(A, B) == pytest.approx(-math.log(eta) / 6, abs=1e-13)

    def test_circle_mobius(self):
        A, B = normalize([(0.2, 1.1)], "circle"), normalize([(2.0, 5.0)], "circle")
        m = MobiusMap(1.5, -0.3, 0.7, 0.9)
        assert F(apply_mobius(m, A), apply_mobius(m, B)) == pytest.approx(F(A, B), abs=1e-10)

    def test_bruteforce_circle_g(self):
        I = normalize([(0.5, 1.0), (2.0, 3.0), (4.0, 6.0)], "circle")
        assert g_value(I) == pytest.approx(G_bruteforce(I, "circle"), abs=1e-13)


class TestExtended:
    A, B, C = normalize([(0, 1)]), normalize([(2, 3)]), normalize([(4, 5)])

    def test_empty_a_collapses_to_f(self):
        assert extended_mi(MultiInterval.empty(), self.B, self.C) == pytest.approx(F(self.B, self.C), abs=1e-15)

    def test_empty_b_vanishes(self):
        # F(A, A u C) = 0: every term of the identity cancels
        assert extended_mi(self.A, MultiInterval.empty(), self.C) == pytest.approx(0.0, abs=1e-15)

    def test_nonnegative(self):
        assert extended_mi(self.A, self.B, self.C) >= 0

    def test_monotone_in_c(self):
        assert extended_mi(self.A, self.B, normalize([(4, 6)])) >= extended_mi(self.A, self.B, self.C)

    def test_equals_overlapping_f(self):
        A, B, C = self.A, self.B, self.C
        direct = F(A.union(B), A.union(C), allow_overlap=True)
        assert extended_mi(A, B, C) == pytest.approx(direct, abs=1e-12)

    def test_identity_soft1(self, rng):
        for _ in range(50):
            p = np.sort(rng.uniform(-10, 10, 6))
            parts = [normalize([(p[2 * i], p[2 * i + 1])]) for i in range(3)]
            A, B, C = (parts[i] for i in rng.permutation(3))
            ext = extended_mi(A, B, C)
            assert ext == pytest.approx(F(A.union(B), C) - F(A, C), abs=1e-10)
            assert ext >= -1e-12
            # F(A, B u C) + F(B, C) = F(A u B, C) + F(A, B)
            assert F(A, B.union(C)) + F(B, C) == pytest.approx(F(A.union(B), C) + F(A, B), abs=1e-10)

    def test_overlap_rejected(self):
        with pytest.raises(OverlappingIntervals):
            extended_mi(normalize([(0, 2)]), normalize([(1, 3)]), self.C)


class TestDuality:
    def test_symmetric_point(self):
        assert duality_gap(0.5) == 0.0

    def test_three_quarters(self):
        assert duality_gap(0.75) == pytest.approx(-math.log(3) / 6, abs=1e-15)
        assert duality_gap(0.75) == pytest.approx(-0.183102, abs=1e-6)

    def test_cross_check(self):
        lhs = F(*pair_with_cross_ratio(0.75)) - F(*pair_with_cross_ratio(0.25))
        assert lhs == pytest.approx(duality_gap(0.75), abs=1e-12)

    @pytest.mark.parametrize("eta", [0.0, 1.0, -0.1, 2.0])
    def test_domain(self, eta):
        with pytest.raises(DomainError):
            duality_gap(eta)

    @given(st.floats(0.01, 0.99))
    def test_pair_with_cross_ratio(self, eta):
        A, B = pair_with_cross_ratio(eta)
        assert cross_ratio(A.parts[0], B.parts[0]) == pytest.approx(eta, abs=1e-12)

    def test_scan(self):
        for row in duality_scan(np.linspace(0.1, 0.9, 9), r=2):
            assert row["difference"] == pytest.approx(row["duality_gap"], abs=1e-12)
            assert row["duality_gap"] == pytest.approx(-(2 / 6) * math.log(row["eta"] / (1 - row["eta"])), abs=1e-14)


class TestSubnet:
    def test_singular_limit_value(self):
        v = singular_limit_mi(0, 1, 2, math.exp(-6))
        assert v == pytest.approx((6 - math.log(2)) / 6, abs=1e-14)
        assert v == pytest.approx(0.8844755, abs=1e-7)

    def test_mu4_shift(self):
        v1 = singular_limit_mi(0, 1, 2, math.exp(-6))
        v4 = singular_limit_mi(0, 1, 2, math.exp(-6), sub=SubnetParams(mu=4))
        assert v1 - v4 == pytest.approx(math.log(2), abs=1e-15)

    def test_matches_exact_as_gap_closes(self):
        # the closed form at finite eps differs from the asymptotic by O(eps)
        for eps in (1e-3, 1e-5, 1e-7):
            exact = F(normalize([(0, 1 - eps)]), normalize([(1, 2)]))
            assert abs(exact - singular_limit_mi(0, 1, 2, eps)) < 2 * eps

    def test_diverges_like_log(self):
        a = singular_limit_mi(0, 1, 3, 1e-4)
        b = singular_limit_mi(0, 1, 3, 1e-5)
        assert b - a == pytest.approx(math.log(10) / 6)

    @pytest.mark.parametrize("args", [(1, 0, 2, 0.1), (0, 1, 2, 0.0), (0, 1, 2, -1)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            singular_limit_mi(*args)

    def test_index_limit(self):
        assert index_limit(SubnetParams(index=1)) == 0.0
        assert index_limit(SubnetParams(index=2)) == pytest.approx(math.log(2))
        assert index_limit(SubnetParams(mu=4)) == pytest.approx(math.log(2))

    def test_params(self):
        assert SubnetParams(index=3).mu == 9.0
        assert SubnetParams().mu == 1.0
        with pytest.raises(ValidationError):
            SubnetParams(mu=4, index=3)
        with pytest.raises(ValidationError):
            SubnetParams(mu=0.5)


def test_report_rejects_nonfinite():
    with pytest.raises(DomainError):
        EntropyReport(math.inf, Method.CLOSED_FORM)
