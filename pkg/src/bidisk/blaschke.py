"""Finite Blaschke products and orthonormal bases of their model spaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .series import Series1D, multiply_1d

_DISK_MARGIN = 1e-12


@dataclass(frozen=True)
class BlaschkeProduct:
    """gamma * prod_k (z - a_k) / (1 - conj(a_k) z) with |a_k| < 1, |gamma| = 1."""

    zeros: tuple[complex, ...]
    gamma: complex = 1.0 + 0.0j

    def __init__(self, zeros, gamma: complex = 1.0 + 0.0j) -> None:
        zs = tuple(complex(a) for a in zeros)
        if len(zs) == 0:
            raise InvalidInputError("a Blaschke product needs at least one zero (degree >= 1)")
        for a in zs:
            if abs(a) > 1.0 - _DISK_MARGIN:
                raise InvalidInputError(f"Blaschke zero {a} is not strictly inside the unit disk")
        g = complex(gamma)
        if abs(abs(g) - 1.0) > _DISK_MARGIN:
            raise InvalidInputError(f"gamma must be unimodular, got |gamma|={abs(g)}")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "gamma", g)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z: complex) -> complex:
        val = self.gamma
        for a in self.zeros:
            val *= (z - a) / (1.0 - np.conj(a) * z)
        return complex(val)


def mobius(a: complex) -> BlaschkeProduct:
    """The disk automorphism (a - z) / (1 - conj(a) z)."""
    return BlaschkeProduct([a], gamma=-1.0)


def identity_map() -> BlaschkeProduct:
    """b(z) = z, the trivial inner function."""
    return BlaschkeProduct([0.0], gamma=1.0)


def blaschke_taylor(b: BlaschkeProduct, cap: int) -> Series1D:
    """Taylor coefficients of the Blaschke product through degree ``cap``.

    Each factor (z - a)/(1 - conj(a) z) is the product of the numerator with
    a geometric series, so the expansion is exact arithmetic on the truncated
    grid.
    """
    if cap < b.degree:
        raise InvalidInputError(f"cap {cap} is below the Blaschke degree {b.degree}")
    out = Series1D(np.array([b.gamma], dtype=np.complex128)).truncate(cap)
    for a in b.zeros:
        geom = Series1D(np.conj(a) ** np.arange(cap + 1))  # 1/(1 - conj(a) z)
        numer = Series1D([-a, 1.0])
        out = multiply_1d(multiply_1d(out, numer, cap), geom, cap)
    return out


@dataclass(frozen=True)
class ModelSpaceBasis:
    """Orthonormal basis of K_b = H2 - b*H2 in truncated Taylor form.

    The elements follow the Takenaka-Malmquist construction
    e_m(z) = sqrt(1-|a_{m+1}|^2)/(1 - conj(a_{m+1}) z) * prod_{k<=m} (z-a_k)/(1-conj(a_k) z),
    which is orthonormal for any zero multiset, repeated zeros included.
    """

    elements: tuple[Series1D, ...]
    source: BlaschkeProduct


def model_space_basis(b: BlaschkeProduct, cap: int) -> ModelSpaceBasis:
    """Takenaka-Malmquist orthonormal basis of the model space of ``b``."""
    if cap < b.degree:
        raise InvalidInputError(f"cap {cap} is below the Blaschke degree {b.degree}")
    elements = []
    prefix = Series1D(np.array([1.0], dtype=np.complex128)).truncate(cap)
    for a in b.zeros:
        geom = Series1D(np.conj(a) ** np.arange(cap + 1))
        head = multiply_1d(prefix, geom, cap)
        scale = np.sqrt(1.0 - abs(a) ** 2)
        elements.append(Series1D(scale * head.coeffs))
        # extend the running product by this zero's Blaschke factor
        prefix = multiply_1d(multiply_1d(prefix, Series1D([-a, 1.0]), cap), geom, cap)
    return ModelSpaceBasis(elements=tuple(elements), source=b)
