"""Distributional fractional differintegral, fractional Fourier series and
closed-form solutions of two fractional wave equations."""

from .core import cpow_branch, gamma, heaviside, recip_gamma
from .differint import GridFunction, differintegrate, frac_derivative, frac_integral
from .fields import Axis, Field2D

__all__ = [
    "Axis",
    "Field2D",
    "GridFunction",
    "cpow_branch",
    "differintegrate",
    "frac_derivative",
    "frac_integral",
    "gamma",
    "heaviside",
    "recip_gamma",
]
