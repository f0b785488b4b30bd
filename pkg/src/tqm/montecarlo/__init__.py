"""Monte Carlo simulation of the truncated free fields and exact finite-(sigma, N) oracles."""

from ._kernels import BACKEND
from .estimate import ComplexEstimate, estimate_correlator, estimate_partition
from .field import GENERATOR_ID, MCConfig, ModeSample, action, draw_modes, field_eval
from .oracles import (
    mode_moments,
    mode_moments_quadrature,
    partition_exact,
    partition_limit,
    propagator_oracle,
    sawtooth_limit,
)

__all__ = [
    "BACKEND",
    "GENERATOR_ID",
    "ComplexEstimate",
    "MCConfig",
    "ModeSample",
    "action",
    "draw_modes",
    "estimate_correlator",
    "estimate_partition",
    "field_eval",
    "mode_moments",
    "mode_moments_quadrature",
    "partition_exact",
    "partition_limit",
    "propagator_oracle",
    "sawtooth_limit",
]
