"""Exact finite-field toolkit for linked Grassmannians and limit linear series."""

__version__ = "0.1.0"

from .chain import ChainSpec, LinkedChain, axiom_report, make_nested_chain, nested_family
from .invariants import PairConfig, pair_invariants, point_invariants
from .strata import StratumSpec, fiber_bound, pair_locus_report, stratum_report
from .oracle import enum_fiber, enum_lg_points, fit_count_polynomial, verify_configuration

__all__ = [
    "ChainSpec", "LinkedChain", "axiom_report", "make_nested_chain", "nested_family",
    "PairConfig", "pair_invariants", "point_invariants",
    "StratumSpec", "fiber_bound", "pair_locus_report", "stratum_report",
    "enum_fiber", "enum_lg_points", "fit_count_polynomial", "verify_configuration",
]
