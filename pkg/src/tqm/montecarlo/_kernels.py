"""Hot loops of the Monte Carlo module.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy version.
The numba path is used unless ``TQM_NUMBA=0`` is set or numba is missing.
Both paths compute the same quantities; their float summation order differs,
so results agree to rounding, not bitwise.
"""
from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

__all__ = [
    "BACKEND",
    "action_batch",
    "field_batch",
    "ratio_moments",
    "sine_series",
    "cosine_series",
    "numpy_kernels",
    "numba_kernels",
]


# -- numpy ------------------------------------------------------------------


def _np_action_batch(X, Y, P, Q, w):
    # S = sum_m w_m (X_m Q_m - Y_m P_m), summed over components
    return np.einsum("nmr,m->n", X * Q - Y * P, w)


def _np_field_batch(A, B, ccos, csin, idx):
    return A[:, :, idx] @ ccos + B[:, :, idx] @ csin


def _np_ratio_moments(S, O_re, O_im, inv_hbar):
    phase = S * inv_hbar
    b_re = np.cos(phase)
    b_im = np.sin(phase)
    v = np.empty((S.shape[0], 4))
    v[:, 0] = O_re * b_re - O_im * b_im
    v[:, 1] = O_re * b_im + O_im * b_re
    v[:, 2] = b_re
    v[:, 3] = b_im
    return v.sum(axis=0), v.T @ v


def _np_sine_series(coef, u):
    m = np.arange(1, coef.shape[0] + 1, dtype=np.float64)
    return float(np.sum(coef * np.sin(2.0 * np.pi * m * u)))


def _np_cosine_series(coef, u):
    m = np.arange(1, coef.shape[0] + 1, dtype=np.float64)
    return float(np.sum(coef * np.cos(2.0 * np.pi * m * u)))


numpy_kernels = {
    "action_batch": _np_action_batch,
    "field_batch": _np_field_batch,
    "ratio_moments": _np_ratio_moments,
    "sine_series": _np_sine_series,
    "cosine_series": _np_cosine_series,
}


# -- numba ------------------------------------------------------------------

numba_kernels: dict = {}

if numba is not None:
    _jit = numba.njit(cache=True, nogil=True, fastmath=False)

    @_jit
    def _nb_action_batch(X, Y, P, Q, w):
        n, N, r = X.shape
        out = np.zeros(n)
        for s in range(n):
            acc = 0.0
            for m in range(N):
                part = 0.0
                for i in range(r):
                    part += X[s, m, i] * Q[s, m, i] - Y[s, m, i] * P[s, m, i]
                acc += w[m] * part
            out[s] = acc
        return out

    @_jit
    def _nb_field_batch(A, B, ccos, csin, idx):
        n, N, _ = A.shape
        out = np.zeros(n)
        for s in range(n):
            acc = 0.0
            for m in range(N):
                acc += ccos[m] * A[s, m, idx] + csin[m] * B[s, m, idx]
            out[s] = acc
        return out

    @_jit
    def _nb_ratio_moments(S, O_re, O_im, inv_hbar):
        tot = np.zeros(4)
        outer = np.zeros((4, 4))
        v = np.zeros(4)
        for s in range(S.shape[0]):
            ph = S[s] * inv_hbar
            br = math.cos(ph)
            bi = math.sin(ph)
            v[0] = O_re[s] * br - O_im[s] * bi
            v[1] = O_re[s] * bi + O_im[s] * br
            v[2] = br
            v[3] = bi
            for a in range(4):
                tot[a] += v[a]
                for b in range(4):
                    outer[a, b] += v[a] * v[b]
        return tot, outer

    @_jit
    def _nb_sine_series(coef, u):
        acc = 0.0
        for k in range(coef.shape[0]):
            acc += coef[k] * math.sin(2.0 * math.pi * (k + 1) * u)
        return acc

    @_jit
    def _nb_cosine_series(coef, u):
        acc = 0.0
        for k in range(coef.shape[0]):
            acc += coef[k] * math.cos(2.0 * math.pi * (k + 1) * u)
        return acc

    numba_kernels = {
        "action_batch": _nb_action_batch,
        "field_batch": _nb_field_batch,
        "ratio_moments": _nb_ratio_moments,
        "sine_series": _nb_sine_series,
        "cosine_series": _nb_cosine_series,
    }


def _select() -> tuple[str, dict]:
    if os.environ.get("TQM_NUMBA", "1").strip().lower() in ("0", "false", "no", "off") or not numba_kernels:
        return "numpy", numpy_kernels
    return "numba", numba_kernels


BACKEND, _active = _select()

action_batch = _active["action_batch"]
field_batch = _active["field_batch"]
ratio_moments = _active["ratio_moments"]
sine_series = _active["sine_series"]
cosine_series = _active["cosine_series"]
