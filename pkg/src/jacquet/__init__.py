"""Symbolic Jacquet modules of products of Zelevinsky segment representations."""

from .engine import (
    JacquetTerm,
    cuspidal_support,
    jacquet_levi,
    jacquet_max_levi,
    refine_factor,
    split_segment,
)
from .errors import PreconditionError
from .expression import Expression, ParseError, parse, print_expression
from .formal import FormalSum
from .geometric import (
    Composition,
    SplitMatrix,
    enumerate_split_matrices,
    is_subpartition,
    oracle_jacquet_cuspidal,
    vanishing_cuspidal,
)
from .segments import (
    CuspidalLine,
    Multisegment,
    Segment,
    canonicalize,
    contains,
    in_M_irr,
    is_irreducible,
    is_linked,
    precedes,
)
from .verify import SweepConfig, Verdict, check_mult_free, sweep_consistency, sweep_theorem1

__version__ = "0.1.0"

__all__ = [
    "Composition",
    "CuspidalLine",
    "Expression",
    "FormalSum",
    "JacquetTerm",
    "Multisegment",
    "ParseError",
    "PreconditionError",
    "Segment",
    "SplitMatrix",
    "SweepConfig",
    "Verdict",
    "canonicalize",
    "check_mult_free",
    "contains",
    "cuspidal_support",
    "enumerate_split_matrices",
    "in_M_irr",
    "is_irreducible",
    "is_linked",
    "is_subpartition",
    "jacquet_levi",
    "jacquet_max_levi",
    "oracle_jacquet_cuspidal",
    "parse",
    "precedes",
    "print_expression",
    "refine_factor",
    "split_segment",
    "sweep_consistency",
    "sweep_theorem1",
    "vanishing_cuspidal",
]
