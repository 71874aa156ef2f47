"""Finite-level approximations of finitely generated submodules of H2(D^2).

A submodule generated by polynomials g_1..g_r is realized at level N by the
span of the monomial multiples z^i w^j g_k with 0 <= i, j <= N.  The span is
held as a sparse matrix of candidate columns over the ambient coefficient
grid; orthonormal bases are produced lazily, either through a sparse Gram
factorization (when the candidates are known to be linearly independent:
single generator, or deduplicated monomials) or through a blocked
graded-greedy orthonormalization with numerical rank detection.

Wedge spaces M - (z-a)M are realized as the orthogonal complement, inside
the level-N span, of the shifted multiples (z-a) z^i w^j g_k that fit the
ambient grid exactly (i <= N-1, j <= N for the z-wedge).  Constraining with
the full range of the non-shift variable removes the top-boundary artifact
directions that would otherwise contaminate the invariant sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import InvalidInputError
from .series import DEFAULT_RADIUS, Series2D, guard_point

DEFAULT_RANK_TOL = 1e-10
_BLOCK = 384


def _graded_multipliers(level: int, zmax: int | None = None, wmax: int | None = None):
    """Multiplier exponents in graded-lex order (total degree, then z-degree first)."""
    zmax = level if zmax is None else zmax
    wmax = level if wmax is None else wmax
    out = []
    for total in range(zmax + wmax + 1):
        for i in range(min(zmax, total), max(0, total - wmax) - 1, -1):
            out.append((i, total - i))
    return out


class SubmoduleApprox:
    """Level-N orthonormal realization of the submodule generated by ``generators``.

    The orthonormal basis is materialized on demand; computations that only
    need wedge subspaces or kernel values go through the sparse candidate
    representation instead, which keeps large single-generator builds cheap.
    """

    def __init__(
        self,
        generators: Sequence[Series2D],
        level: int,
        rank_tol: float = DEFAULT_RANK_TOL,
    ) -> None:
        if len(generators) == 0:
            raise InvalidInputError("generator list must be nonempty")
        gens = []
        for g in generators:
            gt = g.trim()
            if gt.norm() == 0.0:
                raise InvalidInputError("zero generator is not allowed")
            gens.append(gt)
        max_deg = max(max(g.caps) for g in gens)
        if level < max_deg:
            raise InvalidInputError(
                f"level {level} is below the maximal generator degree {max_deg}"
            )
        self.generators: tuple[Series2D, ...] = tuple(gens)
        self.level = int(level)
        self.rank_tol = float(rank_tol)
        nz = level + max(g.caps[0] for g in gens)
        nw = level + max(g.caps[1] for g in gens)
        self.caps: tuple[int, int] = (nz, nw)
        self._grid_shape = (nz + 1, nw + 1)
        self._candidates, self._labels, self._independent = self._assemble(
            _graded_multipliers(level)
        )
        self._basis_matrix: np.ndarray | None = None
        self._gram = None
        self._gram_lu = None
        self._siblings: dict[int, "SubmoduleApprox"] = {}
        self._wedges: dict[tuple[str, complex], "WedgeBasis"] = {}

    # ------------------------------------------------------------------
    # candidate columns
    # ------------------------------------------------------------------

    def _assemble(self, multipliers):
        """Sparse matrix of the products z^i w^j g_k, exact duplicates dropped."""
        nz1, nw1 = self._grid_shape
        rows, cols, vals = [], [], []
        labels: list[tuple[int, int, int]] = []
        seen: set[bytes] = set()
        col = 0
        for (i, j) in multipliers:
            for k, g in enumerate(self.generators):
                gi, gj = np.nonzero(g.coeffs)
                flat = (gi + i) * nw1 + (gj + j)
                data = g.coeffs[gi, gj]
                key = flat.tobytes() + data.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                rows.append(flat)
                cols.append(np.full(len(flat), col))
                vals.append(data)
                labels.append((i, j, k))
                col += 1
        T = sp.csc_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(nz1 * nw1, col),
            dtype=np.complex128,
        )
        # Multiples of a single polynomial are always linearly independent,
        # and so are distinct monomials; those candidate sets need no rank
        # detection and admit the sparse Gram fast path.
        independent = len(self.generators) == 1 or all(len(v) == 1 for v in vals)
        return T, labels, independent

    @property
    def dim(self) -> int:
        if self._independent:
            return self._candidates.shape[1]
        return self.basis_matrix.shape[1]

    # ------------------------------------------------------------------
    # Gram machinery (independent-candidate fast path)
    # ------------------------------------------------------------------

    def _gram_solver(self):
        if self._gram_lu is None:
            T = self._candidates
            self._gram = (T.conj().T @ T).tocsc()
            self._gram_lu = spla.splu(self._gram)
        return self._gram_lu

    def _solve_gram(self, rhs: np.ndarray) -> np.ndarray:
        lu = self._gram_solver()
        x = lu.solve(rhs)
        x += lu.solve(rhs - self._gram @ x)  # one refinement step
        return x

    # ------------------------------------------------------------------
    # orthonormal basis
    # ------------------------------------------------------------------

    @property
    def basis_matrix(self) -> np.ndarray:
        """Dense (grid, dim) matrix whose columns are the orthonormal basis."""
        if self._basis_matrix is None:
            if self._independent:
                Q, _ = np.linalg.qr(self._candidates.toarray())
                self._basis_matrix = _phase_normalize(Q)
            else:
                Q, kept = _pivoted_orthonormalize(self._candidates.toarray(), self.rank_tol)
                self._basis_matrix = Q
                self._labels = [self._labels[i] for i in kept]
        return self._basis_matrix

    @property
    def basis(self) -> list[Series2D]:
        mat = self.basis_matrix
        return [Series2D(mat[:, k].reshape(self._grid_shape)) for k in range(mat.shape[1])]

    def contains(self, f: Series2D, tol: float = 1e-9) -> bool:
        """Whether f lies in the realized span up to relative residual ``tol``."""
        v = f.truncate(self.caps).coeffs.reshape(-1)
        if self._independent:
            coef = self._solve_gram(self._candidates.conj().T @ v)
            resid = v - self._candidates @ coef
        else:
            B = self.basis_matrix
            resid = v - B @ (B.conj().T @ v)
        return bool(np.linalg.norm(resid) <= tol * max(1.0, np.linalg.norm(v)))

    def sibling(self, level: int) -> "SubmoduleApprox":
        """The same generators realized at another level (cached)."""
        if level == self.level:
            return self
        if level not in self._siblings:
            self._siblings[level] = SubmoduleApprox(self.generators, level, self.rank_tol)
        return self._siblings[level]

    # ------------------------------------------------------------------
    # kernels
    # ------------------------------------------------------------------

    def _szego_column(self, point: tuple[complex, complex]) -> np.ndarray:
        lam, mu = point
        nz1, nw1 = self._grid_shape
        pz = np.conj(lam) ** np.arange(nz1)
        pw = np.conj(mu) ** np.arange(nw1)
        return np.outer(pz, pw).reshape(-1)

    def kernel(
        self,
        param: tuple[complex, complex],
        arg: tuple[complex, complex],
        r_max: float = DEFAULT_RADIUS,
    ) -> complex:
        """Truncated reproducing kernel K(arg; param) of the realized span."""
        guard_point(param, r_max, what="kernel parameter point")
        guard_point(arg, r_max, what="kernel argument point")
        s_param = self._szego_column(param)
        s_arg = self._szego_column(arg)
        if self._independent and self._basis_matrix is None:
            a_param = self._candidates.conj().T @ s_param
            a_arg = self._candidates.conj().T @ s_arg
            return complex(np.vdot(a_arg, self._solve_gram(a_param)))
        B = self.basis_matrix
        return complex(np.vdot(B.conj().T @ s_arg, B.conj().T @ s_param))

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"SubmoduleApprox(level={self.level}, caps={self.caps}, "
            f"candidates={self._candidates.shape[1]})"
        )


def build_submodule(
    generators: Sequence[Series2D],
    level: int,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> SubmoduleApprox:
    """Orthonormal realization of span{z^i w^j g_k : 0 <= i, j <= level}."""
    return SubmoduleApprox(generators, level, rank_tol)


# ----------------------------------------------------------------------
# orthonormalization kernels
# ----------------------------------------------------------------------


def _pivoted_orthonormalize(
    X: np.ndarray,
    rank_tol: float,
) -> tuple[np.ndarray, list[int]]:
    """Rank-revealing orthonormalization through QR with column pivoting.

    Prefix-greedy rank detection breaks down on candidate sets with tiny but
    nonzero near-dependencies (truncated-series generators): noise directions
    accepted near the threshold cascade into the basis.  Column pivoting
    drains the genuinely independent content first, so the trailing diagonal
    of R drops cleanly through the rank gap.
    """
    import scipy.linalg as sla

    Q, R, piv = sla.qr(X, mode="economic", pivoting=True, check_finite=False)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        return np.zeros((X.shape[0], 0), dtype=np.complex128), []
    rank = int(np.sum(diag >= rank_tol * diag[0]))
    return _phase_normalize(Q[:, :rank]), [int(p) for p in piv[:rank]]


def _phase_normalize(Q: np.ndarray) -> np.ndarray:
    """Rescale columns by unimodular factors so the dominant entry is positive real.

    QR factorizations fix column phases arbitrarily; normalizing them keeps
    repeated builds byte-identical and makes monomial-spanned bases come out
    as plain monomials.
    """
    if Q.shape[1] == 0:
        return Q
    piv = np.abs(Q).argmax(axis=0)
    lead = Q[piv, np.arange(Q.shape[1])]
    safe = np.where(np.abs(lead) > 0, lead, 1.0)
    return Q * (np.abs(safe) / safe)


def _greedy_orthonormalize(
    T,
    rank_tol: float,
    block: int = _BLOCK,
) -> tuple[np.ndarray, list[int]]:
    """Graded-greedy orthonormalization with numerical rank detection.

    Columns are processed in their given (graded) order; a column is accepted
    when its residual against the span of previously accepted columns exceeds
    ``rank_tol`` times the largest column norm.  Projections are blocked so
    the bulk of the work lands in matrix products.
    """
    dense_input = isinstance(T, np.ndarray)
    m, n = T.shape
    if dense_input:
        col_norms = np.linalg.norm(T, axis=0)
    else:
        col_norms = spla.norm(T, axis=0)
    scale = float(col_norms.max()) if n else 0.0
    if scale == 0.0:
        return np.zeros((m, 0), dtype=np.complex128), []
    threshold = rank_tol * scale
    Q = np.zeros((m, 0), dtype=np.complex128)
    kept: list[int] = []
    for start in range(0, n, block):
        stop = min(start + block, n)
        Xb = T[:, start:stop] if dense_input else T[:, start:stop].toarray()
        Xb = np.array(Xb, dtype=np.complex128, copy=True)
        if Q.shape[1]:
            Xb -= Q @ (Q.conj().T @ Xb)
            Xb -= Q @ (Q.conj().T @ Xb)
        new_cols: list[np.ndarray] = []
        for local in range(Xb.shape[1]):
            v = Xb[:, local]
            for u in new_cols:
                v = v - u * np.vdot(u, v)
            nv = np.linalg.norm(v)
            if nv > threshold:
                v = v / nv
                for u in new_cols:
                    v = v - u * np.vdot(u, v)
                v /= np.linalg.norm(v)
                new_cols.append(v)
                kept.append(start + local)
        if new_cols:
            Q = np.hstack([Q, np.column_stack(new_cols)])
    return _phase_normalize(Q), kept


# ----------------------------------------------------------------------
# grid-level multiplication helpers
# ----------------------------------------------------------------------


def _shift_axis(mat: np.ndarray, shape: tuple[int, int], var: str) -> np.ndarray:
    """Multiply vectorized-grid columns by z (or w), truncating at the caps."""
    nz1, nw1 = shape
    cube = mat.reshape(nz1, nw1, -1)
    out = np.zeros_like(cube)
    if var == "z":
        out[1:] = cube[:-1]
    else:
        out[:, 1:] = cube[:, :-1]
    return out.reshape(nz1 * nw1, -1)


def _mult_by_1d(mat: np.ndarray, shape: tuple[int, int], coeffs: np.ndarray, var: str) -> np.ndarray:
    """Multiply vectorized-grid columns by a one-variable series, truncated."""
    nz1, nw1 = shape
    cube = mat.reshape(nz1, nw1, -1)
    out = np.zeros_like(cube)
    limit = nz1 if var == "z" else nw1
    for p in range(min(limit, len(coeffs))):
        c = coeffs[p]
        if c == 0:
            continue
        if var == "z":
            out[p:] += c * cube[: nz1 - p]
        else:
            out[:, p:] += c * cube[:, : nw1 - p]
    return out.reshape(nz1 * nw1, -1)


def _sparse_shift(T: sp.csc_matrix, shape: tuple[int, int], var: str) -> sp.csc_matrix:
    """Sparse version of :func:`_shift_axis`."""
    nz1, nw1 = shape
    coo = T.tocoo()
    i = coo.row // nw1
    j = coo.row % nw1
    if var == "z":
        keep = i < nz1 - 1
        new_rows = (i[keep] + 1) * nw1 + j[keep]
    else:
        keep = j < nw1 - 1
        new_rows = i[keep] * nw1 + j[keep] + 1
    return sp.csc_matrix(
        (coo.data[keep], (new_rows, coo.col[keep])), shape=T.shape, dtype=np.complex128
    )


# ----------------------------------------------------------------------
# shift compressions and the core operator matrix
# ----------------------------------------------------------------------


def shift_compressions(M: SubmoduleApprox) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of the compressed coordinate shifts P T_z|_M, P T_w|_M."""
    B = M.basis_matrix
    Rz = B.conj().T @ _shift_axis(B, M._grid_shape, "z")
    Rw = B.conj().T @ _shift_axis(B, M._grid_shape, "w")
    return Rz, Rw


def _mobius_taylor(a: complex, cap: int) -> np.ndarray:
    """Taylor coefficients of (a - z)/(1 - conj(a) z) through ``cap``."""
    geom = np.conj(a) ** np.arange(cap + 1)
    out = a * geom
    out[1:] -= geom[:-1]
    return out


@dataclass(frozen=True)
class CoreOperatorMatrix:
    """Core operator (function) of the realized submodule in its orthonormal basis."""

    entries: np.ndarray
    point: tuple[complex, complex]

    def hs_norm_sq(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))

    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def core_operator_matrix(
    M: SubmoduleApprox,
    a: complex = 0.0,
    b: complex = 0.0,
    r_max: float = DEFAULT_RADIUS,
) -> CoreOperatorMatrix:
    """I - R_a R_a* - R_b R_b* + R_a R_b R_a* R_b* with Mobius-factor shifts.

    R_a is the compression to the realized span of multiplication by the
    degree-one Blaschke factor (a - z)/(1 - conj(a) z); at (0, 0) this is
    exactly the coordinate-shift core operator formula.
    """
    guard_point((a, b), r_max, what="core operator point")
    B = M.basis_matrix
    shape = M._grid_shape
    Ra = B.conj().T @ _mult_by_1d(B, shape, _mobius_taylor(a, shape[0] - 1), "z")
    Rb = B.conj().T @ _mult_by_1d(B, shape, _mobius_taylor(b, shape[1] - 1), "w")
    eye = np.eye(B.shape[1], dtype=np.complex128)
    C = eye - Ra @ Ra.conj().T - Rb @ Rb.conj().T + Ra @ Rb @ Ra.conj().T @ Rb.conj().T
    return CoreOperatorMatrix(entries=C, point=(complex(a), complex(b)))


# ----------------------------------------------------------------------
# kernels and core function
# ----------------------------------------------------------------------


def kernel_eval(
    M: SubmoduleApprox,
    param: tuple[complex, complex],
    arg: tuple[complex, complex],
    r_max: float = DEFAULT_RADIUS,
) -> complex:
    """Reproducing kernel K^M(arg; param) = sum_k e_k(arg) conj(e_k(param))."""
    return M.kernel(param, arg, r_max=r_max)


def core_function_eval(
    M: SubmoduleApprox,
    param: tuple[complex, complex],
    arg: tuple[complex, complex],
    r_max: float = DEFAULT_RADIUS,
) -> complex:
    """Core function G^M = (1 - conj(lam) z)(1 - conj(mu) w) K^M."""
    lam, mu = param
    z, w = arg
    k = M.kernel(param, arg, r_max=r_max)
    return complex((1.0 - np.conj(lam) * z) * (1.0 - np.conj(mu) * w) * k)


def szego_kernel(param: tuple[complex, complex], arg: tuple[complex, complex]) -> complex:
    """Szego kernel of H2(D^2): 1/((1 - z conj(lam))(1 - w conj(mu)))."""
    lam, mu = param
    z, w = arg
    return complex(1.0 / ((1.0 - z * np.conj(lam)) * (1.0 - w * np.conj(mu))))


# ----------------------------------------------------------------------
# wedge subspaces
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WedgeBasis:
    """Orthonormal basis of the realized wedge space M - (z-a)M (or w analogue)."""

    parent: SubmoduleApprox
    variable: str
    point: complex
    matrix: np.ndarray = field(repr=False)

    @property
    def basis(self) -> list[Series2D]:
        shape = self.parent._grid_shape
        return [Series2D(self.matrix[:, k].reshape(shape)) for k in range(self.matrix.shape[1])]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def wedge(
    M: SubmoduleApprox,
    variable: str,
    a: complex,
    r_max: float = DEFAULT_RADIUS,
) -> WedgeBasis:
    """Orthonormal basis of M_N minus the shifted copy (z-a) M (w analogue alike).

    The shifted copy is spanned by the products (z - a) z^i w^j g_k with
    i <= N-1 and j <= N, i.e. every shifted multiple that the ambient grid
    represents exactly.  The wedge is the orthogonal complement of that span
    inside the level-N span.
    """
    if variable not in ("z", "w"):
        raise InvalidInputError("wedge variable must be 'z' or 'w'")
    a = complex(a)
    if abs(a) >= 1:
        raise InvalidInputError(f"wedge point must lie in the open disk, got |a|={abs(a)}")
    guard_point((a, 0.0), r_max, what="wedge point")
    key = (variable, a)
    if key not in M._wedges:
        M._wedges[key] = _compute_wedge(M, variable, a)
    return M._wedges[key]


def _shifted_and_extras(M: SubmoduleApprox, variable: str, a: complex):
    """Sparse shifted-copy columns and the complementary seed candidates.

    For the z-wedge the shifted copy uses multipliers i <= N-1, j <= N and the
    seeds are the multiplier-(0, j) candidates; together they span the whole
    level-N candidate space since z^(i+1) w^j g = (z-a)(z^i w^j g) + a z^i w^j g.
    """
    N = M.level
    nz1, nw1 = M._grid_shape
    if variable == "z":
        sub_mults = _graded_multipliers(N, zmax=N - 1, wmax=N)
        seed_mults = [(0, j) for j in range(N + 1)]
    else:
        sub_mults = _graded_multipliers(N, zmax=N, wmax=N - 1)
        seed_mults = [(i, 0) for i in range(N + 1)]
    T_sub, _, _ = M._assemble(sub_mults)
    S = _sparse_shift(T_sub, (nz1, nw1), variable) - a * T_sub
    E_sp, _, _ = M._assemble(seed_mults)
    return S.tocsc(), E_sp.toarray()


def _compute_wedge(M: SubmoduleApprox, variable: str, a: complex) -> WedgeBasis:
    S, E = _shifted_and_extras(M, variable, a)
    if M._independent:
        # Shifted multiples of independent candidates stay independent, so the
        # Gram matrix of S is positive definite and sparse.
        G = (S.conj().T @ S).tocsc()
        lu = spla.splu(G)
        rhs = np.asarray((S.conj().T @ E))
        X = lu.solve(rhs)
        X += lu.solve(rhs - G @ X)
        R = E - S @ X
    else:
        Qs, _ = _pivoted_orthonormalize(S.toarray(), M.rank_tol)
        R = E - Qs @ (Qs.conj().T @ E)
        R -= Qs @ (Qs.conj().T @ R)
    W, _ = _greedy_orthonormalize(R, max(M.rank_tol, 1e-9))
    return WedgeBasis(parent=M, variable=variable, point=a, matrix=W)
