"""Modular digraphs of the Collatz map and certificates for sufficient residue sets."""

from .arith import RedFraction, cmp_log_ratio, mult_order, t_step
from .backtrace import (
    FeasibleVector,
    eval_backtrace,
    find_backtrace_to_class,
    greedy_backtrace,
    level_set,
)
from .duality import check_self_color_dual, unfold_sufficient_set, verify_fold
from .gamma import ColoredDigraph, build_gamma, build_pruned_gamma, simple_cycles
from .group import AffineMap, affine_closure, gb_structure
from .sufficiency import check, check_red_fraction, check_strong, search

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "ColoredDigraph",
    "FeasibleVector",
    "RedFraction",
    "affine_closure",
    "build_gamma",
    "build_pruned_gamma",
    "check",
    "check_red_fraction",
    "check_self_color_dual",
    "check_strong",
    "cmp_log_ratio",
    "eval_backtrace",
    "find_backtrace_to_class",
    "gb_structure",
    "greedy_backtrace",
    "level_set",
    "mult_order",
    "search",
    "simple_cycles",
    "t_step",
    "unfold_sufficient_set",
    "verify_fold",
]
