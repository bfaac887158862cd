"""Lattice wave packets, torus Weyl calculus, and dilating-detector checks."""

from lattscat.grid import (
    GridError,
    LatticeState,
    TorusGrid,
    apply_multiplier,
    fourier,
    inverse_fourier,
    smear,
    translate,
)

__version__ = "0.1.0"

__all__ = [
    "GridError",
    "LatticeState",
    "TorusGrid",
    "apply_multiplier",
    "fourier",
    "inverse_fourier",
    "smear",
    "translate",
    "__version__",
]
