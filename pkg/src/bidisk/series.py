"""Truncated Taylor series in one and two variables with Hardy-space inner products.

Coefficients are indexed by monomial exponent and the monomials are treated as
an orthonormal set, so ``norm(f)**2 == sum(abs(c)**2)``.  A ``Series2D`` with
caps ``(Nz, Nw)`` stores the rectangle of coefficients ``c[i, j]`` for
``0 <= i <= Nz`` (powers of z, axis 0) and ``0 <= j <= Nw`` (powers of w,
axis 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import signal
from scipy.signal import lfilter

from .errors import InvalidInputError, RadiusGuardError

#: Default evaluation radius guard.  Tail bounds of the form
#: C * r**(N+1) / (1 - r) are only meaningful for r bounded away from 1.
DEFAULT_RADIUS = 0.9


def _as_complex_array(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, order="C")
    if arr.ndim != ndim:
        raise InvalidInputError(f"expected a {ndim}-d coefficient array, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInputError("coefficient array must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("coefficients must be finite (no NaN/Inf)")
    return arr


@dataclass(frozen=True)
class Series1D:
    """Truncated one-variable Taylor series c_0 + c_1 z + ... + c_N z^N."""

    coeffs: np.ndarray

    def __init__(self, coeffs) -> None:
        object.__setattr__(self, "coeffs", _as_complex_array(coeffs, 1))

    @property
    def cap(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def evaluate(self, z: complex) -> complex:
        # Horner scheme; caller is responsible for the radius guard.
        acc = 0.0 + 0.0j
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return complex(acc)

    def derivative(self) -> "Series1D":
        if self.cap == 0:
            return Series1D([0.0])
        k = np.arange(1, self.cap + 1)
        return Series1D(self.coeffs[1:] * k)

    def truncate(self, cap: int) -> "Series1D":
        out = np.zeros(cap + 1, dtype=np.complex128)
        m = min(cap, self.cap)
        out[: m + 1] = self.coeffs[: m + 1]
        return Series1D(out)


@dataclass(frozen=True)
class Series2D:
    """Truncated two-variable Taylor series sum_ij c[i,j] z^i w^j."""

    coeffs: np.ndarray

    def __init__(self, coeffs) -> None:
        object.__setattr__(self, "coeffs", _as_complex_array(coeffs, 2))

    @property
    def caps(self) -> tuple[int, int]:
        return (self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def truncate(self, caps: tuple[int, int]) -> "Series2D":
        nz, nw = caps
        out = np.zeros((nz + 1, nw + 1), dtype=np.complex128)
        mz = min(nz, self.caps[0])
        mw = min(nw, self.caps[1])
        out[: mz + 1, : mw + 1] = self.coeffs[: mz + 1, : mw + 1]
        return Series2D(out)

    def trim(self, tol: float = 0.0) -> "Series2D":
        """Drop trailing zero rows/columns (down to caps (0, 0) at minimum)."""
        mask = np.abs(self.coeffs) > tol
        nz = int(mask.any(axis=1).nonzero()[0].max(initial=0))
        nw = int(mask.any(axis=0).nonzero()[0].max(initial=0))
        return Series2D(self.coeffs[: nz + 1, : nw + 1].copy())

    def degrees(self) -> tuple[int, int]:
        """Per-variable degrees of the nonzero coefficient support."""
        mask = np.abs(self.coeffs) > 0
        if not mask.any():
            return (-1, -1)
        return (
            int(mask.any(axis=1).nonzero()[0].max()),
            int(mask.any(axis=0).nonzero()[0].max()),
        )

    @staticmethod
    def zero(caps: tuple[int, int]) -> "Series2D":
        return Series2D(np.zeros((caps[0] + 1, caps[1] + 1), dtype=np.complex128))

    @staticmethod
    def monomial(i: int, j: int, caps: tuple[int, int] | None = None) -> "Series2D":
        if caps is None:
            caps = (i, j)
        arr = np.zeros((caps[0] + 1, caps[1] + 1), dtype=np.complex128)
        arr[i, j] = 1.0
        return Series2D(arr)

    @staticmethod
    def from_terms(terms: dict[tuple[int, int], complex]) -> "Series2D":
        """Build a polynomial from an exponent -> coefficient mapping."""
        if not terms:
            return Series2D.zero((0, 0))
        nz = max(i for i, _ in terms)
        nw = max(j for _, j in terms)
        arr = np.zeros((nz + 1, nw + 1), dtype=np.complex128)
        for (i, j), c in terms.items():
            arr[i, j] += c
        return Series2D(arr)


def inner_product(f: Series2D, g: Series2D) -> complex:
    """H2(D^2) inner product  <f, g> = sum_ij f[i,j] * conj(g[i,j]).

    Caps may differ; missing coefficients count as zero.  Linear in the
    first argument, conjugate-linear in the second.
    """
    mz = min(f.caps[0], g.caps[0]) + 1
    mw = min(f.caps[1], g.caps[1]) + 1
    block_f = f.coeffs[:mz, :mw]
    block_g = g.coeffs[:mz, :mw]
    return complex(np.sum(block_f * block_g.conj()))


def multiply(f: Series2D, g: Series2D, caps: tuple[int, int]) -> Series2D:
    """Coefficientwise convolution of f and g truncated to ``caps``.

    Exact whenever deg(f) + deg(g) fits inside ``caps``.
    """
    if caps[0] < 0 or caps[1] < 0:
        raise InvalidInputError("caps must be nonnegative")
    a, b = f.coeffs, g.coeffs
    full = signal.convolve(a, b, mode="full", method="direct")
    out = np.zeros((caps[0] + 1, caps[1] + 1), dtype=np.complex128)
    mz = min(caps[0] + 1, full.shape[0])
    mw = min(caps[1] + 1, full.shape[1])
    out[:mz, :mw] = full[:mz, :mw]
    return Series2D(out)


def multiply_1d(f: Series1D, g: Series1D, cap: int) -> Series1D:
    conv = np.convolve(f.coeffs, g.coeffs)[: cap + 1]
    out = np.zeros(cap + 1, dtype=np.complex128)
    out[: len(conv)] = conv
    return Series1D(out)


def evaluate(
    f: Series2D,
    lam: complex,
    mu: complex,
    r_max: float = DEFAULT_RADIUS,
) -> complex:
    """Horner evaluation of the truncated series at (lam, mu).

    Points with ``|lam| > r_max`` or ``|mu| > r_max`` are refused: beyond the
    guard radius the discarded tail is only bounded by
    C * r_max**(N+1) / (1 - r_max) and the truncated value is not trustworthy.
    """
    guard_point((lam, mu), r_max, what="evaluation point")
    acc = np.zeros(f.coeffs.shape[1], dtype=np.complex128)
    for row in f.coeffs[::-1]:
        acc = acc * lam + row
    val = 0.0 + 0.0j
    for c in acc[::-1]:
        val = val * mu + c
    return complex(val)


def guard_point(point: tuple[complex, complex], r_max: float, what: str = "point") -> None:
    lam, mu = point
    if abs(lam) > r_max + 1e-12 or abs(mu) > r_max + 1e-12:
        raise RadiusGuardError(
            f"{what} ({lam}, {mu}) lies outside the radius guard r_max={r_max}; "
            f"the truncation tail bound C*r^(N+1)/(1-r) degenerates there"
        )


def geometric_weight(
    f: Series2D,
    a: complex,
    var: str,
    caps: tuple[int, int],
) -> Series2D:
    """Truncated Taylor grid of f / (1 - conj(a) z)  (or the w analogue).

    Division by the geometric factor turns coefficient rows into cumulative
    conj(a)-weighted sums: out[i] = f[i] + conj(a) * out[i-1] along the chosen
    axis.  Requires |a| < 1.
    """
    if abs(a) >= 1:
        raise InvalidInputError(f"geometric weight point must satisfy |a| < 1, got |a|={abs(a)}")
    if var not in ("z", "w"):
        raise InvalidInputError("var must be 'z' or 'w'")
    src = f.truncate(caps).coeffs
    axis = 0 if var == "z" else 1
    out = lfilter([1.0], [1.0, -np.conj(a)], src, axis=axis)
    return Series2D(out)


def compose_pair(
    f: Series2D,
    theta: Series1D,
    phi: Series1D,
    caps: tuple[int, int],
) -> Series2D:
    """Taylor grid of f(theta(z), phi(w)) through ``caps``.

    Horner substitution in each variable: first every coefficient row of f
    (a polynomial in w) is evaluated at phi, then the rows are recombined by
    a Horner sweep in theta.  Exact through ``caps`` when f is a polynomial
    and theta, phi carry exact coefficients through the caps.
    """
    if abs(theta.coeffs[0]) >= 1 or abs(phi.coeffs[0]) >= 1:
        raise InvalidInputError(
            "composition requires |theta(0)| < 1 and |phi(0)| < 1; "
            "the substituted series would leave the disk"
        )
    nz, nw = caps
    tcoef = theta.truncate(nz).coeffs
    pcoef = phi.truncate(nw).coeffs

    # Horner in phi along each z-row: row_i(phi(w)).
    rows = np.zeros((f.coeffs.shape[0], nw + 1), dtype=np.complex128)
    for i in range(f.coeffs.shape[0]):
        acc = np.zeros(nw + 1, dtype=np.complex128)
        for c in f.coeffs[i, ::-1]:
            acc = np.convolve(acc, pcoef)[: nw + 1]
            acc[0] += c
        rows[i] = acc

    # Horner in theta across rows: result = (...((row_Nz * T + row_{Nz-1}) * T) ...).
    out = np.zeros((nz + 1, nw + 1), dtype=np.complex128)
    for i in range(rows.shape[0] - 1, -1, -1):
        out = signal.convolve(out, tcoef[:, None], mode="full", method="direct")[: nz + 1]
        out[0] += rows[i]
    return Series2D(out)


def outer_product(fz: Series1D, gw: Series1D) -> Series2D:
    """The separable series fz(z) * gw(w)."""
    return Series2D(np.outer(fz.coeffs, gw.coeffs))
