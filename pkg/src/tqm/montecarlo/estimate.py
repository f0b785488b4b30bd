"""Monte Carlo estimates of E[O exp(iS/hbar)] / E[exp(iS/hbar)]."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, SignProblemError
from . import _kernels
from .field import GENERATOR_ID, MCConfig, _trig, draw_modes

__all__ = ["ComplexEstimate", "estimate_correlator", "estimate_partition"]


@dataclass(frozen=True)
class ComplexEstimate:
    mean: complex
    stderr_re: float
    stderr_im: float
    n: int

    def within(self, value: complex, k: float = 4.0) -> bool:
        """True if both components of ``value`` lie within k standard errors."""
        d = value - self.mean
        return abs(d.real) <= k * self.stderr_re and abs(d.imag) <= k * self.stderr_im

    def to_json(self, cfg: MCConfig | None = None) -> dict:
        out = {
            "mean_re": self.mean.real,
            "mean_im": self.mean.imag,
            "stderr_re": self.stderr_re,
            "stderr_im": self.stderr_im,
            "n": self.n,
        }
        if cfg is not None:
            out["config"] = cfg.as_dict()
        out["generator_id"] = GENERATOR_ID
        out["backend"] = _kernels.BACKEND
        return out


def _parse_insertions(insertions, rank):
    out = []
    for which, index, t in insertions:
        if which not in ("X", "P"):
            raise DomainError(f"insertion kind must be 'X' or 'P', got {which!r}")
        if not 1 <= index <= rank:
            raise DomainError(f"component index {index} out of range for rank {rank}")
        out.append((which, index - 1, float(t)))
    return out


def _moments(cfg: MCConfig, ins, threads: int):
    """Chunk-ordered sums of v = (Re A, Im A, Re B, Im B) and of v v^T."""
    n_chunks = -(-cfg.samples // cfg.chunk_size)
    w = 1.0 / (2 * np.pi * np.arange(1, cfg.modes + 1, dtype=np.float64))
    trig = [_trig(cfg.modes, t) for _, _, t in ins]
    inv_hbar = 1.0 / cfg.hbar

    def run(chunk):
        size = min(cfg.chunk_size, cfg.samples - chunk * cfg.chunk_size)
        X, Y, P, Q = draw_modes(cfg, chunk, size)
        S = _kernels.action_batch(X, Y, P, Q, w)
        O = np.ones(size)
        for (which, idx, _), (ccos, csin) in zip(ins, trig):
            A, B = (X, Y) if which == "X" else (P, Q)
            O = O * _kernels.field_batch(A, B, ccos, csin, idx)
        return _kernels.ratio_moments(S, O, np.zeros(size), inv_hbar)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, range(n_chunks)))
    else:
        parts = [run(c) for c in range(n_chunks)]
    tot = np.zeros(4)
    outer = np.zeros((4, 4))
    for s, o in parts:  # fixed chunk order
        tot += s
        outer += o
    return tot, outer


def _covariance(tot, outer, n):
    mean = tot / n
    cov = (outer - n * np.outer(mean, mean)) / (n - 1)
    return mean, cov


def estimate_partition(cfg: MCConfig, threads: int = 1) -> ComplexEstimate:
    """Sample mean of exp(iS/hbar)."""
    n = cfg.samples
    tot, outer = _moments(cfg, [], threads)
    mean, cov = _covariance(tot, outer, n)
    return ComplexEstimate(
        complex(mean[2], mean[3]),
        math.sqrt(max(cov[2, 2], 0.0) / n),
        math.sqrt(max(cov[3, 3], 0.0) / n),
        n,
    )


def estimate_correlator(insertions, cfg: MCConfig, threads: int = 1) -> ComplexEstimate:
    """Ratio estimate of <prod fields> under the weight exp(iS/hbar).

    ``insertions`` is a list of ``(which, index, time)`` with which in {'X', 'P'}
    and a 1-based component index.  With no insertions the result is the
    estimate of E[exp(iS/hbar)] itself.  Standard errors come from the delta
    method applied to the ratio of the two sample means.
    """
    ins = _parse_insertions(insertions, cfg.rank)
    if not ins:
        return estimate_partition(cfg, threads)
    n = cfg.samples
    if n < 2:
        raise DomainError("need at least two samples")
    tot, outer = _moments(cfg, ins, threads)
    mean, cov = _covariance(tot, outer, n)
    num = complex(mean[0], mean[1])
    den = complex(mean[2], mean[3])
    den_se = math.sqrt(max(cov[2, 2] + cov[3, 3], 0.0) / n)
    if abs(den) <= 2 * den_se:
        raise SignProblemError(
            f"|E[exp(iS/hbar)]| = {abs(den):.3g} is within 2 stderr ({den_se:.3g}) of zero; "
            "use a smaller sigma^2 or more samples"
        )
    ratio = num / den
    # z = (A - R B) / mean(B), linear in v = (Re A, Im A, Re B, Im B)
    L = np.array([1.0, 1j, -ratio, -1j * ratio]) / den
    lre, lim = L.real, L.imag
    var_re = float(lre @ cov @ lre)
    var_im = float(lim @ cov @ lim)
    return ComplexEstimate(ratio, math.sqrt(max(var_re, 0.0) / n), math.sqrt(max(var_im, 0.0) / n), n)
