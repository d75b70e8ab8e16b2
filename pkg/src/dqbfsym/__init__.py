"""Symmetry detection and conjunctive symmetry breaking for DQBFs."""

from .breaker import (
    BreakerArtifact,
    BreakResult,
    IneligibleGenerator,
    NotSorted,
    VariableCollision,
    VariableOrder,
    apply,
    break_symmetries,
    build_breaker_formula,
    encode_cnf,
    evaluate,
    variable_order,
)
from .dqdimacs import SourceFormat, parse, read_file, write, write_file
from .errors import BudgetExceeded
from .formula import Dqbf, Interpretation, Prefix, topological_sort, truth_value
from .graph import ColoredDigraph, build_graph
from .autom import GroupReport, VertexPermutation, find_automorphisms, group_order
from .symmetry import (
    EligibilityVerdict,
    LiteralPermutation,
    detect,
    filter_eligible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
