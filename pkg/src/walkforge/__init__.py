"""Coined discrete-time quantum walks with shift operators built from shunt decompositions."""

from . import builders, circuit_ir, graphs, kernels, numerics, walk_engine
from .builders import BuilderOptions, build_shift
from .graphs import Complete, Cycle, Hypercube, Line
from .walk_engine import CoinSpec, WalkConfig, run_walk

__version__ = "0.1.0"

__all__ = [
    "BuilderOptions",
    "CoinSpec",
    "Complete",
    "Cycle",
    "Hypercube",
    "Line",
    "WalkConfig",
    "build_shift",
    "builders",
    "circuit_ir",
    "graphs",
    "kernels",
    "numerics",
    "run_walk",
    "walk_engine",
    "__version__",
]
