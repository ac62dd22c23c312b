"""Compiled inner loops for the density-matrix integrator.

Everything here works on plain arrays. Layer conventions follow ``dynamics``:
row k of ``perm[m]`` is k ^ mask_m, ``a[m, k]`` the matching amplitude.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def lindblad_off(y, a, perm, sperm, sphase, elem, x, out):
    """out = -i[H_off, y] + sum_j sphase_j * y[sperm_j, sperm_j] + elem * y.

    ``y`` must be Hermitian; the commutator is formed as -i(X - X^dag), X = H_off y.
    """
    dim = y.shape[0]
    for k in range(dim):
        for l in range(dim):
            x[k, l] = 0j
        for m in range(perm.shape[0]):
            c = a[m, k]
            if c != 0:
                src = perm[m, k]
                for l in range(dim):
                    x[k, l] += c * y[src, l]
    for k in range(dim):
        for l in range(dim):
            d = x[k, l] - np.conj(x[l, k])
            out[k, l] = complex(d.imag, -d.real) + elem[k, l] * y[k, l]
    for j in range(sperm.shape[0]):
        for k in range(dim):
            src = sperm[j, k]
            for l in range(dim):
                out[k, l] += sphase[j, k, l] * y[src, sperm[j, l]]


@njit(cache=True)
def rk4_density_step(y, h, a0, am, a1, um, u1, perm, sperm, sphase, elem, x, kk, acc, tmp):
    """One rotating-frame RK4 step, in place on ``y``.

    ``um``/``u1`` are the diagonal frame phases at the midpoint and the end of
    the step. Returns (largest Hermitian correction, trace of the new state).
    """
    dim = y.shape[0]
    lindblad_off(y, a0, perm, sperm, sphase, elem, x, kk)
    for k in range(dim):
        for l in range(dim):
            p = um[k] * np.conj(um[l])
            acc[k, l] = y[k, l] + (h / 6) * kk[k, l]
            tmp[k, l] = (y[k, l] + (h / 2) * kk[k, l]) * p
    lindblad_off(tmp, am, perm, sperm, sphase, elem, x, kk)
    for k in range(dim):
        for l in range(dim):
            p = um[k] * np.conj(um[l])
            k2 = kk[k, l] * np.conj(p)
            acc[k, l] += (h / 3) * k2
            tmp[k, l] = (y[k, l] + (h / 2) * k2) * p
    lindblad_off(tmp, am, perm, sperm, sphase, elem, x, kk)
    for k in range(dim):
        for l in range(dim):
            k3 = kk[k, l] * np.conj(um[k] * np.conj(um[l]))
            acc[k, l] += (h / 3) * k3
            tmp[k, l] = (y[k, l] + h * k3) * (u1[k] * np.conj(u1[l]))
    lindblad_off(tmp, a1, perm, sperm, sphase, elem, x, kk)
    for k in range(dim):
        for l in range(dim):
            p = u1[k] * np.conj(u1[l])
            acc[k, l] = (acc[k, l] + (h / 6) * kk[k, l] * np.conj(p)) * p
    fix = 0.0
    tr = 0.0
    for k in range(dim):
        tr += acc[k, k].real
        y[k, k] = acc[k, k].real
        fix = max(fix, abs(acc[k, k].imag))
        for l in range(k + 1, dim):
            s = 0.5 * (acc[k, l] + np.conj(acc[l, k]))
            fix = max(fix, abs(acc[k, l] - s))
            y[k, l] = s
            y[l, k] = np.conj(s)
    return fix, tr
