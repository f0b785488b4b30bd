"""Exact Moyal/Hochschild/quantum-HKR engine with a Monte Carlo check of the
Gaussian free field construction on the circle."""

__version__ = "0.1.0"
