"""Experiment: sigma0/sigma1 via weighted wedge sums vs known closed forms."""
import numpy as np
from scipy.signal import lfilter

from bidisk.series import Series2D
from bidisk.submodule import build_submodule, wedge, core_operator_matrix


def weighted(mat, shape, var, s, mult_shift=False):
    """columns <- (shifted by var if mult_shift) then / (1 - conj(s) var)."""
    nz1, nw1 = shape
    cube = mat.reshape(nz1, nw1, -1)
    if mult_shift:
        pad = np.zeros((nz1 + 1, nw1 + 1, cube.shape[2]), dtype=complex)
        if var == "z":
            pad[1:, :nw1] = cube
        else:
            pad[:nz1, 1:] = cube
        cube = pad
    axis = 0 if var == "z" else 1
    out = lfilter([1.0], [1.0, -np.conj(s)], cube, axis=axis)
    return out.reshape(-1, cube.shape[2])


def sigma_pair(M, a, b):
    Wz = wedge(M, "z", 0.0)
    Ww = wedge(M, "w", 0.0)
    shape = M._grid_shape
    pref = (1 - abs(a) ** 2) * (1 - abs(b) ** 2)
    U0 = weighted(Wz.matrix, shape, "z", a)
    V0 = weighted(Ww.matrix, shape, "w", b)
    P0 = np.abs(U0.conj().T @ V0) ** 2
    U1 = weighted(Wz.matrix, shape, "w", b, mult_shift=True)
    V1 = weighted(Ww.matrix, shape, "z", a, mult_shift=True)
    P1 = np.abs(U1.conj().T @ V1) ** 2
    return pref * P0.sum(), pref * P1.sum(), P0, P1


def zgen():
    return Series2D([[0, -1], [1, 0]])  # z - w


def report(name, gens, levels, pts, truth):
    print("==", name)
    for ab in pts:
        a, b = ab
        for N in levels:
            M = build_submodule(gens, N)
            s0, s1, P0, P1 = sigma_pair(M, a, b)
            t0, t1 = truth(a, b)
            print(
                f"  ({a}, {b}) N={N}: s0={s0:.6f} (err {s0 - t0:+.2e})  "
                f"s1={s1:.6f} (err {s1 - t1:+.2e})  gap={s0 - s1:.6f} "
                f"dims=({P0.shape})"
            )


pi2 = np.pi**2
report(
    "[z-w]",
    [zgen()],
    [10, 20, 40, 60],
    [(0.0, 0.0), (0.5, 0.5), (0.3, -0.4j)],
    lambda a, b: (pi2 / 6, pi2 / 6 - 1) if (a, b) == (0.0, 0.0) else (np.nan, np.nan),
)
report(
    "zH2+wH2",
    [Series2D([[0], [1]]), Series2D([[0, 1]])],
    [10, 20, 40],
    [(0.0, 0.0), (0.5, 0.0), (0.3, -0.4j)],
    lambda a, b: ((1 - abs(a) ** 2) * (1 - abs(b) ** 2) + 1, (1 - abs(a) ** 2) * (1 - abs(b) ** 2)),
)
# Beurling theta = Mobius(0.5) truncated
from bidisk.blaschke import mobius, blaschke_taylor

for N in (20, 40):
    th = blaschke_taylor(mobius(0.5), N)
    g = Series2D(th.coeffs[:, None])
    M = build_submodule([g], N)
    for ab in [(0.0, 0.0), (0.4, 0.3)]:
        s0, s1, *_ = sigma_pair(M, *ab)
        print(f"Beurling N={N} {ab}: s0={s0:.6f} s1={s1:.8f}")
