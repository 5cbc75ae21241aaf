"""Exact and numeric computations around Kahler geometry and projective space."""

from . import cech, chern, exterior, flat_forms, hodge, linear, morse, projective
from .linear import GaussianRational

__version__ = "0.1.0"

__all__ = ["cech", "chern", "exterior", "flat_forms", "hodge", "linear", "morse", "projective", "GaussianRational"]
