"""Knot invariants of closed braids: skein recursions, R-matrix traces,
their power-series expansions, and chord-diagram weight systems."""

from .algebra import ONE, ZERO, HalfLaurent, RationalMatrix, RingMatrix, TruncSeries, parse_poly
from .braid import BraidError, BraidLetter, BraidWord, MarkovMove, random_markov_walk
from .chords import ChordDiagram, enumerate_configurations, weight_space_dimension
from .rmatrix import EnhancedRMatrix, builtin_jones, represent, trace_invariant
from .skein import SkeinSystem, evaluate
from .vassiliev import expand_invariant, stanford_check, v2, vanishing_order

__all__ = [
    "ONE",
    "ZERO",
    "HalfLaurent",
    "RationalMatrix",
    "RingMatrix",
    "TruncSeries",
    "parse_poly",
    "BraidError",
    "BraidLetter",
    "BraidWord",
    "MarkovMove",
    "random_markov_walk",
    "ChordDiagram",
    "enumerate_configurations",
    "weight_space_dimension",
    "EnhancedRMatrix",
    "builtin_jones",
    "represent",
    "trace_invariant",
    "SkeinSystem",
    "evaluate",
    "expand_invariant",
    "stanford_check",
    "v2",
    "vanishing_order",
]

__version__ = "0.1.0"
