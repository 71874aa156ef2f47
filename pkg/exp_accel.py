"""Experiment: tail-accelerated sigma sums, N=90 timing, core matrix route."""
import time

import numpy as np

from bidisk.series import Series2D
from bidisk.submodule import build_submodule, wedge, core_operator_matrix
from exp_sigma import sigma_pair, weighted


def accelerated(P):
    """Square partial sums + telescoping-model tail completion."""
    m = min(P.shape)
    s = np.array([P[: k + 1, : k + 1].sum() for k in range(m)])
    if m < 6:
        return s[-1], 0.0
    d = np.diff(s)
    idx = np.arange(1, m)
    c = d * idx * (idx + 1)
    chat = float(np.median(c[-5:]))
    corr = chat / m
    return s[-1] + corr, corr


pi2 = np.pi**2
print("== [z-w] sigma1(0,0) accelerated")
for N in (30, 60, 90):
    t0 = time.time()
    M = build_submodule([Series2D([[0, -1], [1, 0]])], N)
    s0, s1, P0, P1 = sigma_pair(M, 0.0, 0.0)
    v1, corr1 = accelerated(P1)
    v0, corr0 = accelerated(P0)
    dt = time.time() - t0
    print(
        f"N={N}: raw={s1:.7f} acc={v1:.7f} err={v1 - (pi2/6-1):+.2e} "
        f"s0acc_err={v0 - pi2/6:+.2e}  [{dt:.1f} s]"
    )

print("== zH2+wH2 sigma at (0.5,0) accelerated (should stay exact)")
M = build_submodule([Series2D([[0], [1]]), Series2D([[0, 1]])], 40)
s0, s1, P0, P1 = sigma_pair(M, 0.5, 0.0)
v1, c1 = accelerated(P1)
v0, c0 = accelerated(P0)
print(f"s0={v0:.10f} (corr {c0:.2e})  s1={v1:.10f} (corr {c1:.2e})")

print("== core operator matrix route, [z-w]")
for N in (10, 20, 30, 40):
    t0 = time.time()
    M = build_submodule([Series2D([[0, -1], [1, 0]])], N)
    C = core_operator_matrix(M, 0.0, 0.0)
    herm = np.linalg.norm(C.entries - C.entries.conj().T)
    dt = time.time() - t0
    print(
        f"N={N}: hs2={C.hs_norm_sq():.6f} err={C.hs_norm_sq() - (pi2/3 - 1):+.2e} "
        f"tr={C.trace():.6f} herm_resid={herm:.2e} [{dt:.1f} s]"
    )

print("== core matrix at (a,b) != 0, zH2+wH2 (paper closed form)")
M = build_submodule([Series2D([[0], [1]]), Series2D([[0, 1]])], 24)
for (a, b) in [(0.5, 0.0), (0.3, -0.4j)]:
    C = core_operator_matrix(M, a, b)
    t = (1 - abs(a) ** 2) * (1 - abs(b) ** 2)
    herm = np.linalg.norm(C.entries - C.entries.conj().T)
    print(
        f"(a,b)=({a},{b}): hs2={C.hs_norm_sq():.6f} vs {2*t+1:.6f}; "
        f"tr={C.trace():.6f} herm={herm:.2e}"
    )
