import numpy as np
import pytest

from bidisk import (
    BlaschkeProduct,
    InvalidInputError,
    SIGMA1_AT_ORIGIN,
    Series2D,
    build_submodule,
    example_closed_forms,
    hs_corollary_check,
    inner_product,
    lemma64_check,
    lemma65_sum,
    mobius,
    multiply,
    parse_polynomial,
    poisson_identity_check,
    sigma1,
    sigma1_zw,
    zw_basis,
    zw_inner_product_relation,
)


class TestExplicitBases:
    def test_first_elements(self):
        e0 = zw_basis("quotient", 0, (2, 2)).realization
        assert e0.coeffs[0, 0] == pytest.approx(1.0)
        e1 = zw_basis("quotient", 1, (2, 2)).realization
        assert e1.coeffs[1, 0] == pytest.approx(1 / np.sqrt(2))
        assert e1.coeffs[0, 1] == pytest.approx(1 / np.sqrt(2))
        phi0 = zw_basis("z-wedge", 0, (2, 2)).realization
        assert phi0.coeffs[1, 0] == pytest.approx(1 / np.sqrt(2))
        assert phi0.coeffs[0, 1] == pytest.approx(-1 / np.sqrt(2))

    def test_orthonormal_families(self):
        caps = (32, 32)
        for kind in ("quotient", "z-wedge", "w-wedge"):
            elems = [zw_basis(kind, n, caps).realization for n in range(31)]
            mat = np.column_stack([e.coeffs.reshape(-1) for e in elems])
            gram = mat.conj().T @ mat
            assert np.abs(gram - np.eye(31)).max() < 1e-12

    def test_quotient_orthogonal_to_module(self, zw_gen):
        caps = (12, 12)
        for n in (0, 3, 7):
            e = zw_basis("quotient", n, caps).realization
            for i in range(10):
                for j in range(10):
                    mult = multiply(Series2D.monomial(i, j), zw_gen, caps)
                    assert abs(inner_product(e, mult)) < 1e-10

    def test_caps_guard(self):
        with pytest.raises(InvalidInputError):
            zw_basis("quotient", 5, (4, 6))
        with pytest.raises(InvalidInputError):
            zw_basis("spam", 1, (4, 4))


class TestSigma1Series:
    def test_origin_high_precision(self):
        v = sigma1_zw(0.0, 0.0, cutoff=100_000)
        assert abs(v.value - SIGMA1_AT_ORIGIN) < 1e-9

    def test_bounded_by_two_on_grid(self):
        radii = np.linspace(0.0, 0.95, 8)
        vals = [sigma1_zw(r, s).value for r in radii for s in radii]
        assert max(vals) <= 2.0

    def test_cross_oracle_agreement(self, zw_60):
        oracle = sigma1_zw(0.5, 0.5, cutoff=100_000)
        engine = sigma1(zw_60, 0.5, 0.5)
        combined = oracle.tail_estimate + engine.tail_estimate
        assert abs(oracle.value - engine.value) <= combined + 1e-4

    def test_modulus_reduction_by_construction(self):
        a, b = 0.3 * np.exp(0.7j), -0.4j
        assert sigma1_zw(a, b).value == sigma1_zw(abs(a), abs(b)).value
        assert sigma1_zw(a, b).value == sigma1_zw(b, a).value

    def test_guards(self):
        with pytest.raises(InvalidInputError):
            sigma1_zw(1.0, 0.0)
        with pytest.raises(InvalidInputError):
            sigma1_zw(0.0, 0.0, cutoff=4)


class TestInnerProductRelation:
    def test_base_case(self):
        lhs, rhs = zw_inner_product_relation(0, 0, 0, 0)
        assert lhs == pytest.approx(0.5, abs=1e-12)
        assert rhs == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("kmn", [(0, 1, 0, 0), (5, 5, 2, 2), (3, 1, 2, 0), (2, 4, 1, 3)])
    def test_agreement(self, kmn):
        k, l, m, n = kmn
        lhs, rhs = zw_inner_product_relation(k, l, m, n)
        assert abs(lhs - rhs) < 1e-12


class TestScalarLemmas:
    def test_equality_at_one(self):
        rep = lemma64_check(0.3, 0.7, 1)
        assert rep["holds"] and rep["equality"]

    def test_strict_inequality(self):
        rep = lemma64_check(0.5, 0.3, 3)
        assert rep["holds"] and not rep["equality"]

    def test_equal_arguments_give_equality(self):
        # the underlying Cauchy-Schwarz is tight for proportional sequences
        rep = lemma64_check(0.5, 0.5, 3)
        assert rep["holds"] and rep["equality"]

    def test_axis_case(self):
        rep = lemma64_check(0.0, 0.8, 4)
        assert rep["holds"]

    def test_grid(self):
        for a in np.linspace(0, 0.95, 5):
            for b in np.linspace(0, 0.9, 5):
                for i in (1, 2, 7):
                    assert lemma64_check(a, b, i)["holds"]

    def test_telescoping_sum_values(self):
        assert lemma65_sum(0.0, 10**6) == pytest.approx(1.0, abs=1e-6)
        assert lemma65_sum(0.5, 10**4) == pytest.approx(1.0, abs=1e-5)
        assert lemma65_sum(0.99, 10**6) == pytest.approx(1.0, abs=1e-3)


class TestExamplesAndPoisson:
    def test_closed_form_pairs(self):
        assert example_closed_forms("zplus_w", 0.0, 0.0) == (2.0, 1.0)
        assert example_closed_forms("beurling", 0.3, -0.2j) == (1.0, 0.0)
        s0, s1 = example_closed_forms("zplus_w", 0.5, 0.5)
        assert (s0, s1) == (pytest.approx(1.5625), pytest.approx(0.5625))

    def test_poisson_values(self):
        assert poisson_identity_check(0.0, 0.0, 16) == pytest.approx(1.0)
        assert poisson_identity_check(0.5, 0.0, 256) == pytest.approx(1.0, abs=1e-10)
        assert poisson_identity_check(0.9, 0.9, 2048) == pytest.approx(1.0, abs=1e-8)


class TestHsCorollary:
    def test_coordinate_symbols(self):
        rep = hs_corollary_check(BlaschkeProduct([0.0]), BlaschkeProduct([0.0]))
        assert rep["holds"]
        assert rep["hs_norm_sq"] == pytest.approx(np.pi**2 / 3 - 1, abs=1e-6)

    def test_monomial_symbols_pull_to_origin(self):
        rep = hs_corollary_check(BlaschkeProduct([0, 0]), BlaschkeProduct([0, 0, 0]))
        assert rep["hs_norm_sq"] == pytest.approx(np.pi**2 / 3 - 1, abs=1e-6)

    def test_mobius_symbol(self):
        rep = hs_corollary_check(mobius(0.5), BlaschkeProduct([0.0]))
        assert rep["holds"]
        expected = 2 * sigma1_zw(0.5, 0.0, cutoff=100_000).value + 1
        assert rep["hs_norm_sq"] == pytest.approx(expected, abs=1e-12)

    def test_engine_cross_check(self):
        rep = hs_corollary_check(
            BlaschkeProduct([0.0]), BlaschkeProduct([0.0]), engine_level=24
        )
        # the engine side carries its harmonic truncation deficit
        assert rep["engine_gap"] < 0.15
