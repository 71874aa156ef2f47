import numpy as np
import pytest

from bidisk import (
    BlaschkeProduct,
    InvalidInputError,
    Series1D,
    blaschke_taylor,
    identity_map,
    inner_product,
    mobius,
    model_space_basis,
    multiply_1d,
    outer_product,
)


class TestBlaschkeProduct:
    def test_rejects_boundary_zero(self):
        with pytest.raises(InvalidInputError):
            BlaschkeProduct([1.0])
        with pytest.raises(InvalidInputError):
            BlaschkeProduct([0.3, 1.2j])

    def test_rejects_bad_gamma(self):
        with pytest.raises(InvalidInputError):
            BlaschkeProduct([0.3], gamma=0.5)

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            BlaschkeProduct([])

    def test_unimodular_on_circle(self):
        b = BlaschkeProduct([0.5, -0.3j, 0.2], gamma=np.exp(0.7j))
        for t in np.linspace(0, 2 * np.pi, 7):
            assert abs(abs(b(np.exp(1j * t))) - 1.0) < 1e-10

    def test_mobius_value(self):
        m = mobius(0.5)
        assert m(0.0) == pytest.approx(0.5)
        assert m(0.5) == pytest.approx(0.0)


class TestBlaschkeTaylor:
    def test_identity(self):
        c = blaschke_taylor(identity_map(), 5).coeffs
        assert np.allclose(c, [0, 1, 0, 0, 0, 0])

    def test_single_mobius_factor(self):
        c = blaschke_taylor(BlaschkeProduct([0.5]), 6).coeffs
        assert c[0] == pytest.approx(-0.5)
        assert np.allclose(c[1:], 0.75 * 0.5 ** np.arange(6))

    def test_double_zero(self):
        c = blaschke_taylor(BlaschkeProduct([0.0, 0.0]), 4).coeffs
        assert np.allclose(c, [0, 0, 1, 0, 0])

    def test_matches_rational_evaluation(self):
        b = BlaschkeProduct([0.5, -0.2 + 0.3j], gamma=np.exp(1.1j))
        series = blaschke_taylor(b, 60)
        for z in [0.0, 0.25, -0.5, 0.3 + 0.4j, 0.5j]:
            assert series.evaluate(z) == pytest.approx(b(z), abs=1e-10)

    def test_boundary_modulus(self):
        # inner functions have unit boundary modulus; near the circle the
        # true modulus sits within about degree * (1 - r) of 1, and the
        # truncated series must reproduce the rational value there exactly
        b = BlaschkeProduct([0.5, -0.4, 0.3j, 0.2, -0.1], gamma=1.0)
        series = blaschke_taylor(b, 220)
        pts = 0.999 * np.exp(2j * np.pi * np.arange(64) / 64)
        for z in pts:
            truncated = series.evaluate(z)
            assert truncated == pytest.approx(b(z), abs=1e-9)
            assert abs(abs(truncated) - 1.0) < b.degree * (1.0 - 0.999) * 2.5

    def test_cap_below_degree(self):
        with pytest.raises(InvalidInputError):
            blaschke_taylor(BlaschkeProduct([0.1, 0.2, 0.3]), 2)


class TestModelSpaceBasis:
    def test_single_shift(self):
        basis = model_space_basis(identity_map(), 8)
        assert len(basis.elements) == 1
        assert np.allclose(basis.elements[0].coeffs, [1] + [0] * 8)

    def test_double_shift(self):
        basis = model_space_basis(BlaschkeProduct([0.0, 0.0]), 8)
        assert len(basis.elements) == 2
        assert np.allclose(basis.elements[0].coeffs[:3], [1, 0, 0])
        assert np.allclose(basis.elements[1].coeffs[:3], [0, 1, 0])

    def test_szego_element(self):
        basis = model_space_basis(BlaschkeProduct([0.5]), 30)
        expected = np.sqrt(0.75) * 0.5 ** np.arange(31)
        assert np.allclose(basis.elements[0].coeffs, expected)

    def test_orthonormality(self):
        b = BlaschkeProduct([0.5, 0.5, -0.3j, 0.2])
        basis = model_space_basis(b, 80)
        mat = np.column_stack([e.coeffs for e in basis.elements])
        gram = mat.conj().T @ mat
        assert np.linalg.norm(gram - np.eye(b.degree)) < 1e-10

    def test_orthogonal_to_shifted_range(self):
        cap = 60
        b = BlaschkeProduct([0.5, -0.3j])
        basis = model_space_basis(b, cap)
        theta = blaschke_taylor(b, cap)
        for e in basis.elements:
            e2 = outer_product(e, Series1D([1.0]))
            for k in range(cap - b.degree + 1):
                shifted = multiply_1d(theta, Series1D([0.0] * k + [1.0]), cap)
                assert abs(inner_product(e2, outer_product(shifted, Series1D([1.0])))) < 1e-8
