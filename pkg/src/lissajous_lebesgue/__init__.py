"""Lebesgue constants of Lissajous-Chebyshev interpolation and rhombus partial sums."""

from .asympt import SweepRecord, main_term, remainder_scale, sweep
from .interp import Interpolant, evaluate, fundamental, interpolate, lebesgue_constant_lc
from .lcnodes import DegreePair, NodeSet, build_nodes, spectral_set
from .norms import QuadratureSpec, lebesgue_constant_discrete, lebesgue_continuous
from .search import SearchSpec

__all__ = [
    "DegreePair", "NodeSet", "build_nodes", "spectral_set",
    "Interpolant", "interpolate", "evaluate", "fundamental", "lebesgue_constant_lc",
    "QuadratureSpec", "SearchSpec", "lebesgue_continuous", "lebesgue_constant_discrete",
    "SweepRecord", "main_term", "remainder_scale", "sweep",
]
