import numpy as np
import pytest

from bidisk import (
    InvalidInputError,
    InvariantValue,
    RadiusGuardError,
    blaschke_taylor,
    build_submodule,
    fringe_commutator_trace,
    fringe_index,
    fringe_operator,
    hs_norm_core,
    mobius,
    parse_polynomial,
    sigma0,
    sigma1,
    sigma_gap,
    sigma_k,
)
from bidisk.series import Series2D

PI2_6 = np.pi**2 / 6.0


def beurling_module(level=40, zero=0.5):
    th = blaschke_taylor(mobius(zero), level)
    return build_submodule([Series2D(th.coeffs[:, None])], level)


class TestSigmaExamples:
    def test_sum_module_closed_form(self, zpw_30):
        s0 = sigma0(zpw_30, 0.5, 0.0)
        assert s0.value == pytest.approx(1.75, abs=2e-3)
        s1 = sigma1(zpw_30, 0.0, 0.0)
        assert s1.value == pytest.approx(1.0, abs=2e-3)
        s1b = sigma1(zpw_30, 0.3, -0.4j)
        assert s1b.value == pytest.approx((1 - 0.09) * (1 - 0.16), abs=2e-3)

    def test_beurling(self):
        M = beurling_module()
        for (a, b) in [(0.0, 0.0), (0.4, 0.3), (0.2j, -0.5)]:
            assert sigma0(M, a, b).value == pytest.approx(1.0, abs=2e-3)
            assert sigma1(M, a, b).value == pytest.approx(0.0, abs=1e-6)

    def test_difference_module_origin(self, zw_60):
        s0 = sigma0(zw_60, 0.0, 0.0)
        s1 = sigma1(zw_60, 0.0, 0.0)
        assert s0.value == pytest.approx(PI2_6, abs=5e-3)
        assert s1.value == pytest.approx(PI2_6 - 1.0, abs=5e-3)

    def test_delta_refinement_tail(self, zw_gen):
        M = build_submodule([zw_gen], 20)
        plain = sigma1(M, 0.0, 0.0)
        refined = sigma1(M, 0.0, 0.0, delta=10)
        assert refined.value == plain.value
        assert refined.tail_estimate >= plain.tail_estimate

    def test_guard_and_validation(self, zw_30):
        with pytest.raises(RadiusGuardError):
            sigma0(zw_30, 0.95, 0.0)
        with pytest.raises(InvalidInputError):
            sigma_k(zw_30, -1, 0.0, 0.0)
        with pytest.raises(InvalidInputError):
            InvariantValue(value=np.nan, order=0, point=(0, 0), level=1, tail_estimate=0.0)


class TestSigmaHigherOrder:
    def test_beurling_vanishes(self):
        M = beurling_module(30)
        for k in (2, 3):
            assert sigma_k(M, k, 0.2, 0.1).value == pytest.approx(0.0, abs=1e-6)

    def test_h2_order_two(self, h2_40):
        assert sigma_k(h2_40, 2, 0.0, 0.0).value == pytest.approx(0.0, abs=1e-8)

    def test_difference_module_bounded_by_order_one(self, zw_30):
        s1 = sigma1(zw_30, 0.0, 0.0)
        s2 = sigma_k(zw_30, 2, 0.0, 0.0)
        assert 0.0 <= s2.value <= s1.value

    def test_monotonicity_exploration_reports_only(self, zw_30):
        # the higher orders come with tails; no theorem is asserted here
        vals = [sigma_k(zw_30, k, 0.0, 0.0) for k in (1, 2, 3)]
        assert all(v.tail_estimate >= 0 for v in vals)


class TestHsNorm:
    def test_h2(self, h2_40):
        assert hs_norm_core(h2_40, 0.0, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_sum_module(self, zpw_30):
        assert hs_norm_core(zpw_30, 0.0, 0.0) == pytest.approx(3.0, abs=5e-3)
        t = (1 - 0.25) * (1 - 0.16)
        assert hs_norm_core(zpw_30, 0.5, 0.4) == pytest.approx(2 * t + 1, abs=5e-3)

    def test_consistency_with_sigma_sums(self, zw_gen):
        # dual route: raw wedge sums against the core-matrix Frobenius norm
        M = build_submodule([zw_gen], 24)
        for (a, b) in [(0.0, 0.0), (0.3, 0.2)]:
            raw = (
                sigma0(M, a, b, accelerate=False).value
                + sigma1(M, a, b, accelerate=False).value
            )
            assert hs_norm_core(M, a, b) == pytest.approx(raw, abs=2e-2)

    def test_difference_module_trend(self, zw_gen):
        # the raw Frobenius norm converges harmonically; the completed sums
        # reach the limit at desk levels
        target = np.pi**2 / 3.0 - 1.0
        M = build_submodule([zw_gen], 60)
        completed = sigma0(M, 0, 0).value + sigma1(M, 0, 0).value
        assert completed == pytest.approx(target, abs=1e-2)
        raw24 = hs_norm_core(build_submodule([zw_gen], 24), 0.0, 0.0)
        raw32 = hs_norm_core(build_submodule([zw_gen], 32), 0.0, 0.0)
        assert abs(raw32 - target) < abs(raw24 - target)


class TestGap:
    def test_sum_module_everywhere(self, zpw_30):
        for (a, b) in [(0.0, 0.0), (0.5, 0.2), (0.3j, -0.4)]:
            assert sigma_gap(zpw_30, a, b) == pytest.approx(1.0, abs=5e-3)

    def test_beurling(self):
        M = beurling_module(30)
        assert sigma_gap(M, 0.2, -0.1) == pytest.approx(1.0, abs=5e-3)

    def test_difference_module(self, zw_60):
        assert sigma_gap(zw_60, 0.5, -0.3j) == pytest.approx(1.0, abs=1e-2)


class TestSymmetry:
    def test_swap_symmetric_module(self, zw_30):
        for (a, b) in [(0.3, -0.2j), (0.1 + 0.2j, 0.4)]:
            s_ab = sigma1(zw_30, a, b).value
            s_ba = sigma1(zw_30, b, a).value
            assert s_ab == pytest.approx(s_ba, abs=1e-9)

    def test_phase_reduction_upper_bound(self, zw_30):
        # the modulus point dominates: S1(a,b) <= S1(|a|,|b|)
        for (a, b) in [(0.3 * np.exp(1j), -0.4j), (0.5j, 0.2 * np.exp(2j))]:
            lhs = sigma1(zw_30, a, b).value
            rhs = sigma1(zw_30, abs(a), abs(b)).value
            assert lhs <= rhs + 1e-9


class TestFringe:
    def test_h2_shift(self, h2_40):
        F = fringe_operator(h2_40, 0.0, 0.0)
        assert F.operator_norm() <= 1.0 + 1e-8
        # unilateral shift: commutator trace 1, index -1
        assert fringe_commutator_trace(F) == pytest.approx(1.0, abs=1e-12)
        assert fringe_index(F) == -1

    def test_difference_module_trace_converges(self, zw_gen):
        traces = []
        for level in (30, 60):
            F = fringe_operator(build_submodule([zw_gen], level), 0.0, 0.0)
            assert F.operator_norm() <= 1.0 + 1e-8
            traces.append(fringe_commutator_trace(F))
        assert abs(traces[1] - 1.0) < abs(traces[0] - 1.0)
        assert traces[1] == pytest.approx(1.0, abs=5e-3)

    def test_sum_module_offset_point(self, zpw_30):
        F = fringe_operator(zpw_30, 0.3, 0.4)
        assert fringe_commutator_trace(F) == pytest.approx(1.0, abs=1e-8)
        assert fringe_index(F) == -1

    def test_index_stable_under_level(self, zw_gen):
        for level in (30, 42):
            M = build_submodule([zw_gen], level)
            assert fringe_index(fringe_operator(M, 0.2, -0.3)) == -1
