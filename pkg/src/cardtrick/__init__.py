"""Exact analysis of deal-into-n-stacks card tricks."""

__version__ = "0.1.0"

from cardtrick.errors import CrossCheckError, IntegerOverflow, InvalidArgument, SpecError
from cardtrick.solver import Reason, SolveOutcome, Verdict, classify, solve
from cardtrick.trick_core import TrickSpec, validate_spec

__all__ = [
    "CrossCheckError",
    "IntegerOverflow",
    "InvalidArgument",
    "Reason",
    "SolveOutcome",
    "SpecError",
    "TrickSpec",
    "Verdict",
    "classify",
    "solve",
    "validate_spec",
]
