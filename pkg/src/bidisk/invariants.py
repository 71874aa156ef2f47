"""Numerical invariant functions of Hilbert-Schmidt submodules.

The order-0 and order-1 invariants are double sums of squared inner products
of geometrically weighted wedge-basis elements,

    S_0(a,b) = (1-|a|^2)(1-|b|^2) sum_kl |< e_k/(1-conj(a)z), f_l/(1-conj(b)w) >|^2,
    S_1(a,b) = (1-|a|^2)(1-|b|^2) sum_kl |< w e_k/(1-conj(b)w), z f_l/(1-conj(a)z) >|^2,

    S_k(a,b) = (1-|a|^2)(1-|b|^2) sum_ij |< w^k e_i/(1-conj(b)w), z^k f_j/(1-conj(a)z) >|^2,

where {e_k} and {f_l} are orthonormal bases of the zero-point wedge spaces
M - zM and M - wM.  All weighted inner products are exact on the ambient
grid (the two weights extend the series in different variables), so the only
truncation error is the missing tail of the double sum.  That tail decays
harmonically for the interesting examples, so the reported value completes
the square partial sums with a telescoping-model tail estimate; the raw
truncated sum is also available.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import InvalidInputError
from .series import DEFAULT_RADIUS, guard_point
from .submodule import (
    SubmoduleApprox,
    WedgeBasis,
    _mobius_taylor,
    _mult_by_1d,
    core_operator_matrix,
    wedge,
)

_ACCEL_MIN_TERMS = 6
_ACCEL_WINDOW = 5


@dataclass(frozen=True)
class InvariantValue:
    """A computed invariant together with its truncation bookkeeping."""

    value: float
    order: int
    point: tuple[complex, complex]
    level: int
    tail_estimate: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.value) or self.value < -1e-12:
            raise InvalidInputError(f"invariant value must be finite and >= 0, got {self.value}")
        if not np.isfinite(self.tail_estimate):
            raise InvalidInputError("tail estimate must be finite")


def _weighted_columns(
    W: WedgeBasis,
    padded: tuple[int, int],
    shift_var: str | None,
    shift_pow: int,
    weight_var: str,
    weight_point: complex,
) -> np.ndarray:
    """Vectorized wedge columns, shifted by var**pow and geometrically weighted.

    The returned columns live on the ``padded`` grid so that both sides of a
    weighted pairing share one coefficient rectangle; the pairing is then
    exact because each factor's support is capped in the variable the other
    extends.
    """
    nz1, nw1 = W.parent._grid_shape
    d = W.matrix.shape[1]
    cube = np.zeros((padded[0], padded[1], d), dtype=np.complex128)
    dz = shift_pow if shift_var == "z" else 0
    dw = shift_pow if shift_var == "w" else 0
    cube[dz : dz + nz1, dw : dw + nw1] = W.matrix.reshape(nz1, nw1, d)
    axis = 0 if weight_var == "z" else 1
    cube = lfilter([1.0], [1.0, -np.conj(weight_point)], cube, axis=axis)
    return cube.reshape(padded[0] * padded[1], d)


def _term_matrix(M: SubmoduleApprox, order: int, a: complex, b: complex) -> np.ndarray:
    """Matrix of |<weighted e_k, weighted f_l>|^2 over the zero-wedge bases."""
    Wz = wedge(M, "z", 0.0)
    Ww = wedge(M, "w", 0.0)
    nz1, nw1 = M._grid_shape
    if order == 0:
        U = _weighted_columns(Wz, (nz1, nw1), None, 0, "z", a)
        V = _weighted_columns(Ww, (nz1, nw1), None, 0, "w", b)
    else:
        padded = (nz1 + order, nw1 + order)
        U = _weighted_columns(Wz, padded, "w", order, "w", b)
        V = _weighted_columns(Ww, padded, "z", order, "z", a)
    return np.abs(U.conj().T @ V) ** 2


def _completed_sum(P: np.ndarray) -> tuple[float, float, float]:
    """Square partial sums of P completed by a telescoping tail model.

    Returns ``(raw, completed, tail_estimate)``.  The square partial sums
    s_m over the leading m x m block increase to the full truncated sum.
    Their increments are matched in aggregate, over a trailing window, to
    the model c/((m+1)(m+2)) whose tail telescopes in closed form; that
    reproduces the harmonic decay of the wedge series, tolerates content
    arriving in degree steps (as it does for lifted generators), and
    vanishes for finitely supported term matrices.
    """
    m = int(min(P.shape))
    raw = float(P.sum())
    if m < _ACCEL_MIN_TERMS:
        return raw, raw, raw * 1e-14
    s = np.array([P[: k + 1, : k + 1].sum() for k in range(m)])
    rect = raw - float(s[-1])  # off-square remainder, usually negligible
    last = m - 1
    window = max(_ACCEL_WINDOW, m // 3)
    lo = max(0, last - window)
    mass = 1.0 / (lo + 2.0) - 1.0 / (last + 2.0)
    chat = max(float(s[last] - s[lo]), 0.0) / mass
    corr = chat / (last + 2.0)
    tail = corr + float(abs(s[last] - s[last - 1])) + abs(rect)
    return raw, float(s[last]) + rect + corr, tail


def _sigma_value(
    M: SubmoduleApprox,
    order: int,
    a: complex,
    b: complex,
    accelerate: bool,
) -> tuple[float, float]:
    P = _term_matrix(M, order, a, b)
    pref = (1.0 - abs(a) ** 2) * (1.0 - abs(b) ** 2)
    raw, completed, tail = _completed_sum(P)
    if accelerate:
        return pref * completed, pref * tail
    return pref * raw, pref * (completed - raw + tail)


def sigma_k(
    M: SubmoduleApprox,
    k: int,
    a: complex,
    b: complex,
    *,
    accelerate: bool = True,
    delta: int | None = None,
    r_max: float = DEFAULT_RADIUS,
) -> InvariantValue:
    """Order-k numerical invariant function of the realized submodule.

    ``delta`` requests a second evaluation at level ``M.level + delta``; the
    move between the two levels is folded into the tail estimate.
    """
    if k < 0:
        raise InvalidInputError("invariant order must be >= 0")
    a, b = complex(a), complex(b)
    guard_point((a, b), r_max, what="invariant point")
    value, tail = _sigma_value(M, k, a, b, accelerate)
    if delta:
        refined, _ = _sigma_value(M.sibling(M.level + delta), k, a, b, accelerate)
        tail += abs(refined - value)
    return InvariantValue(
        value=value, order=k, point=(a, b), level=M.level, tail_estimate=tail
    )


def sigma0(M: SubmoduleApprox, a: complex, b: complex, **kwargs) -> InvariantValue:
    """S_0(a,b); see module docstring."""
    return sigma_k(M, 0, a, b, **kwargs)


def sigma1(M: SubmoduleApprox, a: complex, b: complex, **kwargs) -> InvariantValue:
    """S_1(a,b); see module docstring."""
    return sigma_k(M, 1, a, b, **kwargs)


def sigma_gap(M: SubmoduleApprox, a: complex, b: complex, **kwargs) -> float:
    """S_0(a,b) - S_1(a,b); converges to 1 for Hilbert-Schmidt submodules."""
    s0 = sigma0(M, a, b, **kwargs)
    s1 = sigma1(M, a, b, **kwargs)
    return s0.value - s1.value


def hs_norm_core(
    M: SubmoduleApprox,
    a: complex = 0.0,
    b: complex = 0.0,
    r_max: float = DEFAULT_RADIUS,
) -> float:
    """Squared Frobenius norm of the core operator matrix at (a, b).

    Independent of the wedge-sum route; the two agree within the summed
    truncation tails.
    """
    return core_operator_matrix(M, a, b, r_max=r_max).hs_norm_sq()


# ----------------------------------------------------------------------
# fringe operator
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FringeMatrix:
    """Compression of multiplication by the w-Mobius factor to a z-wedge space.

    ``entries[k, l] = < phi_b(w) * e_l, e_k >`` over the wedge basis of
    M - (z-a)M.  The finite square truncation of a Fredholm operator has
    commutator trace 0 and index 0 identically, so the stable quantities are
    estimated on a leading sub-block (``head``) that the truncation boundary
    does not reach; see :func:`fringe_commutator_trace` and
    :func:`fringe_index`.
    """

    entries: np.ndarray
    point: tuple[complex, complex]

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def operator_norm(self) -> float:
        return float(np.linalg.norm(self.entries, 2))


def fringe_operator(
    M: SubmoduleApprox,
    a: complex,
    b: complex,
    r_max: float = DEFAULT_RADIUS,
) -> FringeMatrix:
    """Matrix of f -> P_a( phi_b(w) f ) on the wedge basis of M - (z-a)M."""
    a, b = complex(a), complex(b)
    guard_point((a, b), r_max, what="fringe point")
    W = wedge(M, "z", a, r_max=r_max)
    shape = M._grid_shape
    coeffs = _mobius_taylor(b, shape[1] - 1)
    F = W.matrix.conj().T @ _mult_by_1d(W.matrix, shape, coeffs, "w")
    return FringeMatrix(entries=F, point=(a, b))


def fringe_commutator_trace(F: FringeMatrix, head: int | None = None) -> float:
    """Partial trace of [F*, F] over the leading ``head`` wedge directions.

    Truncation makes the full finite-dimensional trace vanish identically;
    summing ||F e_l||^2 - ||F* e_l||^2 over low wedge indices recovers the
    infinite-dimensional value, which equals minus the Fredholm index.
    """
    n = F.dim
    if head is None:
        head = max(1, n // 2)
    head = min(head, n)
    sq = np.abs(F.entries) ** 2
    col = sq.sum(axis=0)[:head]
    row = sq.sum(axis=1)[:head]
    return float(np.sum(col - row))


def fringe_index(
    F: FringeMatrix,
    head: int | None = None,
    svd_tol: float = 1e-8,
) -> int:
    """Numerical Fredholm index dim ker F - dim ker F* on the leading block.

    Kernel dimensions are counted from singular values below
    ``svd_tol * sigma_max`` of the operators restricted to the first ``head``
    wedge directions (mapping into the whole truncated wedge), which keeps
    the truncation boundary out of the estimate.  Kernel vectors carry
    geometric tails of size roughly |b|**head, so ``head`` must be large
    enough for that to clear the threshold; three quarters of the wedge
    dimension leaves both room for the tail and a margin to the boundary.
    """
    n = F.dim
    if head is None:
        head = max(1, (3 * n) // 4)
    head = min(head, n)

    def _kernel_dim(mat: np.ndarray) -> int:
        s = np.linalg.svd(mat, compute_uv=False)
        if s.size == 0 or s[0] == 0.0:
            return mat.shape[1]
        return int(np.sum(s < svd_tol * s[0]))

    ker = _kernel_dim(F.entries[:, :head])
    coker = _kernel_dim(F.entries.conj().T[:, :head])
    return ker - coker
