"""Exact and numerical verification toolkit for finite-dimensional weak Hopf algebras."""

from .builders import from_expression, gpd, grp, fun, load, loads, pair, save
from .core import WeakHopfAlgebra, connectivity, direct_sum, dual, solve_antipode, verify_axioms
from .numerics import DEFAULT_SEED, DEFAULT_TOL, Tolerances

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "Tolerances",
    "WeakHopfAlgebra",
    "connectivity",
    "direct_sum",
    "dual",
    "from_expression",
    "fun",
    "gpd",
    "grp",
    "load",
    "loads",
    "pair",
    "save",
    "solve_antipode",
    "verify_axioms",
]
