"""Nevanlinna counting functions of finite Blaschke products.

The counting function N(w) sums log(1/|z_j|) over the preimages of w; for an
inner function it collapses (off a null set) to the closed form
log |(1 - conj(b(0)) w) / (b(0) - w)|.  Both routes are implemented: roots of
the cleared-denominator polynomial through companion-matrix eigenvalues, and
the scalar formula.  The change-of-variable and subordination statements tie
composition norms to the counting function and are checked by quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import roots_legendre

from .blaschke import BlaschkeProduct
from .errors import InvalidInputError, SingularTargetError
from .series import Series1D, multiply_1d

_BOUNDARY_MARGIN = 1e-12
_PREIMAGE_TOL = 1e-8


@dataclass(frozen=True)
class CountingResult:
    target: complex
    preimages: tuple[complex, ...]
    value: float


def _target_guard(b: BlaschkeProduct, w: complex) -> None:
    if abs(w) >= 1.0:
        raise InvalidInputError(f"counting-function target must satisfy |w| < 1, got {abs(w)}")
    if abs(w - b(0.0)) < 1e-13:
        raise SingularTargetError(
            f"target {w} coincides with b(0) = {b(0.0)}, where the counting function diverges"
        )


def counting_function(b: BlaschkeProduct, w: complex) -> CountingResult:
    """Root-based counting function: solve b(z) = w and sum log(1/|z_j|).

    The equation is cleared to gamma * prod(z - a_k) - w * prod(1 - conj(a_k) z) = 0
    and solved through the companion matrix (with balancing) of the resulting
    degree-d polynomial; preimages outside the closed disk are discarded,
    multiplicities arrive as repeated roots.
    """
    w = complex(w)
    _target_guard(b, w)
    numer = np.array([b.gamma], dtype=np.complex128)
    denom = np.array([1.0], dtype=np.complex128)
    for a in b.zeros:
        numer = np.convolve(numer, np.array([-a, 1.0]))
        denom = np.convolve(denom, np.array([1.0, -np.conj(a)]))
    poly = numer - w * denom
    roots = npoly.polyroots(poly)
    kept = tuple(complex(r) for r in roots if abs(r) <= 1.0 - _BOUNDARY_MARGIN)
    for r in kept:
        if abs(b(r) - w) > _PREIMAGE_TOL:
            raise ArithmeticError(
                f"preimage validation failed: |b({r}) - w| = {abs(b(r) - w):.2e}"
            )
    value = float(sum(np.log(1.0 / abs(r)) for r in kept))
    return CountingResult(target=w, preimages=kept, value=value)


def counting_closed_form(b: BlaschkeProduct, w: complex) -> float:
    """Inner-function closed form log |(1 - conj(b(0)) w) / (b(0) - w)|."""
    w = complex(w)
    _target_guard(b, w)
    b0 = b(0.0)
    return float(np.log(abs((1.0 - np.conj(b0) * w) / (b0 - w))))


def compose_1d(f: Series1D, b: BlaschkeProduct, cap: int) -> Series1D:
    """Taylor series of f(b(z)) through degree ``cap`` (Horner substitution)."""
    from .blaschke import blaschke_taylor

    bt = blaschke_taylor(b, cap)
    acc = Series1D(np.zeros(cap + 1, dtype=np.complex128))
    for c in f.coeffs[::-1]:
        acc = multiply_1d(acc, bt, cap)
        new = acc.coeffs.copy()
        new[0] += c
        acc = Series1D(new)
    return acc


def shapiro_change_of_variable(
    f: Series1D,
    b: BlaschkeProduct,
    radial_nodes: int = 64,
    angular_nodes: int = 128,
    comp_cap: int = 2048,
) -> dict:
    """Change-of-variable check: ||f o b||^2 - |f(b(0))|^2 against
    2/pi * integral over the disk of |f'(w)|^2 N(w) dA(w).

    The derivative enters squared; the printed statement of the formula has
    an unsquared |f'|, which fails the f(z) = z, b(z) = z oracle (both sides
    must equal 1), so the squared reading is implemented.  Quadrature is
    polar Gauss-Legendre in the radius times a uniform angular rule; the
    integrable logarithmic singularity at b(0) is handled by shifting the
    angular offset when a node lands on it.
    """
    comp = compose_1d(f, b, comp_cap)
    lhs = comp.norm() ** 2 - abs(f.evaluate(b(0.0))) ** 2

    fp = f.derivative()
    xs, ws = roots_legendre(radial_nodes)
    radii = 0.5 * (xs + 1.0)
    rweights = 0.5 * ws
    offset = 0.0
    for _ in range(4):
        angles = 2.0 * np.pi * (np.arange(angular_nodes) + offset) / angular_nodes
        nodes = np.outer(radii, np.exp(1j * angles))
        if np.min(np.abs(nodes - b(0.0))) > 1e-9:
            break
        offset += 0.25  # renode away from the singular target
    b0 = b(0.0)
    vals = np.abs(np.vectorize(fp.evaluate)(nodes)) ** 2
    counting = np.log(np.abs((1.0 - np.conj(b0) * nodes) / (b0 - nodes)))
    integrand = vals * counting * radii[:, None]
    integral = float(np.real(np.sum(integrand.sum(axis=1) * rweights))) * (2.0 * np.pi / angular_nodes)
    rhs = 2.0 * integral / np.pi
    return {
        "identity": "change-of-variable",
        "lhs": float(lhs),
        "rhs": rhs,
        "abs_gap": abs(lhs - rhs),
        "rel_gap": abs(lhs - rhs) / (abs(lhs) + 1.0),
        "radial_nodes": radial_nodes,
        "angular_nodes": angular_nodes,
    }


def littlewood_subordination_check(
    f: Series1D,
    b: BlaschkeProduct,
    comp_cap: int = 2048,
) -> dict:
    """Two-sided subordination bound on ||f o b|| / ||f|| at p = 2.

    The ratio lies between ((1 -+ |b(0)|)/(1 +- |b(0)|))^(1/2); composition
    with a symbol fixing the origin is an isometry.
    """
    nf = f.norm()
    if nf == 0.0:
        raise InvalidInputError("f must be nonzero")
    ratio = compose_1d(f, b, comp_cap).norm() / nf
    m = abs(b(0.0))
    lower = np.sqrt((1.0 - m) / (1.0 + m))
    upper = np.sqrt((1.0 + m) / (1.0 - m))
    return {
        "identity": "subordination-bounds",
        "ratio": float(ratio),
        "lower": float(lower),
        "upper": float(upper),
        "isometry": m == 0.0,
        "pass": bool(lower - 1e-9 <= ratio <= upper + 1e-9),
    }
