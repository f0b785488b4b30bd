"""Truncated Gaussian free fields X(t), P(t) on R/Z and the topological action."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import DomainError
from . import _kernels

__all__ = ["MCConfig", "ModeSample", "field_eval", "action", "draw_modes", "mode_coefficients", "GENERATOR_ID"]

GENERATOR_ID = "numpy.PCG64 via SeedSequence(seed, spawn_key=(chunk,)); Generator.standard_normal (ziggurat)"


@dataclass(frozen=True)
class MCConfig:
    modes: int
    sigma2: float
    hbar: float
    samples: int
    seed: int
    rank: int = 1
    chunk_size: int = 1 << 15

    def __post_init__(self):
        for name in ("modes", "sigma2", "hbar", "samples", "rank", "chunk_size"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive, got {v!r}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ModeSample:
    """One draw of the mode coefficients; each array has shape (N, r)."""

    X: np.ndarray
    Y: np.ndarray
    P: np.ndarray
    Q: np.ndarray

    @property
    def modes(self) -> int:
        return self.X.shape[0]

    @property
    def rank(self) -> int:
        return self.X.shape[1]

    @classmethod
    def zeros(cls, modes: int, rank: int = 1) -> ModeSample:
        z = np.zeros((modes, rank))
        return cls(z, z.copy(), z.copy(), z.copy())


def mode_coefficients(N: int) -> np.ndarray:
    """1/(sqrt(2) pi m) for m = 1..N."""
    m = np.arange(1, N + 1, dtype=np.float64)
    return 1.0 / (math.sqrt(2.0) * math.pi * m)


def _trig(N: int, t: float):
    m = np.arange(1, N + 1, dtype=np.float64)
    c = mode_coefficients(N)
    return c * np.cos(2 * np.pi * m * t), c * np.sin(2 * np.pi * m * t)


def field_eval(s: ModeSample, t: float, which: str, index: int) -> float:
    """Truncated Fourier sum for X^index(t) ('X') or P_index(t) ('P')."""
    if not 1 <= index <= s.rank:
        raise DomainError(f"component index {index} out of range for rank {s.rank}")
    ccos, csin = _trig(s.modes, t)
    if which == "X":
        A, B = s.X, s.Y
    elif which == "P":
        A, B = s.P, s.Q
    else:
        raise DomainError(f"which must be 'X' or 'P', got {which!r}")
    return float(_kernels.field_batch(A[None], B[None], ccos, csin, index - 1)[0])


def action(s: ModeSample) -> float:
    """sum_m (X_m Q_m - Y_m P_m) / (2 pi m), summed over components."""
    w = 1.0 / (2 * np.pi * np.arange(1, s.modes + 1, dtype=np.float64))
    return float(_kernels.action_batch(s.X[None], s.Y[None], s.P[None], s.Q[None], w)[0])


def draw_modes(cfg: MCConfig, chunk: int, size: int):
    """Mode arrays (X, Y, P, Q), each (size, N, r), for one chunk of the stream."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed, spawn_key=(chunk,))))
    sigma = math.sqrt(cfg.sigma2)
    shape = (size, cfg.modes, cfg.rank)
    return tuple(sigma * rng.standard_normal(shape) for _ in range(4))
