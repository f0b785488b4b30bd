"""Exact finite-(sigma, N) values for the truncated model.

Per mode m the pair (X_m, Q_m) has density proportional to
exp(-(x^2 + q^2)/(2 sigma^2) + i beta_m x q) and (Y_m, P_m) the same with
-i beta_m, where beta_m = 1/(2 pi m hbar).  Writing alpha = 1/sigma^2, the
normalised second moments are the inverse of the quadratic form:

    <X Q> = i beta / (alpha^2 + beta^2)     <X X> = <Q Q> = alpha / (alpha^2 + beta^2)
    <Y P> = -i beta / (alpha^2 + beta^2)    <Y Y> = <P P> = alpha / (alpha^2 + beta^2)

Summing against the mode functions 1/(sqrt(2) pi m) (cos, sin) gives the
propagators below.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from . import _kernels

__all__ = [
    "partition_exact",
    "partition_limit",
    "mode_moments",
    "mode_moments_quadrature",
    "propagator_oracle",
    "sawtooth_limit",
]


def _positive(**kw):
    for k, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{k} must be positive, got {v!r}")


def partition_exact(sigma2: float, hbar: float, N: int, r: int = 1) -> float:
    """prod_{m=1}^N (1 + (sigma^2 / (2 pi m hbar))^2)^(-r)."""
    _positive(sigma2=sigma2, hbar=hbar, r=r)
    if N < 0:
        raise DomainError("N must be non-negative")
    if N == 0:
        return 1.0
    m = np.arange(1, N + 1, dtype=np.float64)
    c = sigma2 / (2 * np.pi * hbar * m)
    return float(np.exp(-r * np.sum(np.log1p(c * c))))


def partition_limit(sigma2: float, hbar: float, r: int = 1) -> float:
    """(c / sinh c)^r with c = sigma^2 / (2 hbar)."""
    _positive(sigma2=sigma2, hbar=hbar, r=r)
    c = sigma2 / (2 * hbar)
    return (c / math.sinh(c)) ** r


def mode_moments(sigma2: float, hbar: float, m: int) -> dict:
    """Closed-form normalised second moments of mode m."""
    _positive(sigma2=sigma2, hbar=hbar, m=m)
    alpha = 1.0 / sigma2
    beta = 1.0 / (2 * math.pi * m * hbar)
    d = alpha * alpha + beta * beta
    return {
        "xq": 1j * beta / d,
        "xx": alpha / d + 0j,
        "qq": alpha / d + 0j,
        "yp": -1j * beta / d,
        "yy": alpha / d + 0j,
        "pp": alpha / d + 0j,
    }


def mode_moments_quadrature(sigma2: float, hbar: float, m: int, nodes: int = 160) -> dict:
    """The same moments by tensor Gauss-Hermite quadrature of the 2-D integrals
    int dx dq exp(-(x^2+q^2)/(2 sigma^2) +- i beta x q) {1, xq, x^2, q^2}."""
    _positive(sigma2=sigma2, hbar=hbar, m=m)
    u, w = np.polynomial.hermite_e.hermegauss(nodes)
    sigma = math.sqrt(sigma2)
    x = sigma * u[:, None]
    q = sigma * u[None, :]
    W = w[:, None] * w[None, :]
    beta = 1.0 / (2 * math.pi * m * hbar)
    out = {}
    for sgn, (a, b) in ((1, ("x", "q")), (-1, ("y", "p"))):
        phase = W * np.exp(sgn * 1j * beta * x * q)
        z = phase.sum()
        out[a + b] = (phase * x * q).sum() / z
        out[a + a] = (phase * x * x).sum() / z
        out[b + b] = (phase * q * q).sum() / z
    return out


def _coefficients(sigma2: float, hbar: float, N: int, diagonal: bool) -> np.ndarray:
    m = np.arange(1, N + 1, dtype=np.float64)
    alpha = 1.0 / sigma2
    beta = 1.0 / (2 * np.pi * m * hbar)
    num = alpha if diagonal else beta
    return num / (alpha * alpha + beta * beta) / (2 * np.pi**2 * m * m)


def propagator_oracle(sigma2: float, hbar: float, N: int, kind: str, t: float, s: float) -> complex:
    """Exact <X(t) P(s)>, <X(t) X(s)> or <P(t) P(s)> (same component) at finite
    sigma^2 and truncation N.

    XP: sum_m i sin(2 pi m (s - t)) beta_m / (alpha^2 + beta_m^2) / (2 pi^2 m^2)
    XX, PP: sum_m cos(2 pi m (s - t)) alpha / (alpha^2 + beta_m^2) / (2 pi^2 m^2)
    """
    _positive(sigma2=sigma2, hbar=hbar)
    if N < 0:
        raise DomainError("N must be non-negative")
    kind = kind.upper()
    u = float(s) - float(t)
    if kind == "XP":
        return 1j * _kernels.sine_series(_coefficients(sigma2, hbar, N, False), u)
    if kind in ("XX", "PP"):
        return complex(_kernels.cosine_series(_coefficients(sigma2, hbar, N, True), u))
    raise DomainError(f"kind must be XP, XX or PP, got {kind!r}")


def sawtooth_limit(hbar: float, t: float, s: float) -> complex:
    """Large-variance, N -> infinity value of the XP oracle: i hbar (1/2 - frac(s - t)), 0 at s = t."""
    u = (float(s) - float(t)) % 1.0
    return 0j if u == 0 else 1j * hbar * (0.5 - u)
