"""
Cyclic six-term exact sequences: model, solver and exactness check.
"""

from kpull.sixterm.exactness import ExactnessResult, check_exactness
from kpull.sixterm.sequence import (
    EXTERNAL_FACT,
    GIVEN,
    NODE_NAMES,
    SOLVED,
    SixTermSequence,
    SolveReport,
    Status,
    Step,
)
from kpull.sixterm.solver import solve, surjective_for_all_completions

__all__ = [
    "EXTERNAL_FACT",
    "ExactnessResult",
    "GIVEN",
    "NODE_NAMES",
    "SOLVED",
    "SixTermSequence",
    "SolveReport",
    "Status",
    "Step",
    "check_exactness",
    "solve",
    "surjective_for_all_completions",
]
