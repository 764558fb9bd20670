"""Exact-arithmetic toolkit for digit expansions, block statistics of
sequences, invariant-measure oracles, generic-point synthesis, and the two
stream transducers whose finite-depth behaviour separates convergent from
oscillating frequency trajectories."""

__version__ = "0.1.0"

from .blocks import (
    Alphabet,
    Block,
    DigitStream,
    INF,
    block_frequencies,
    count_in_block,
    count_in_stream,
    enumerate_blocks,
    hamming,
    iter_blocks,
)
from .errors import (
    ContractViolation,
    DomainError,
    RetryBudgetExceeded,
    ShiftlabError,
    UndecidedError,
)
from .measures import (
    BernoulliOracle,
    DiracZeroOracle,
    MeasureOracle,
    MixOracle,
    is_good,
    robustness_delta,
)
from .realnum import (
    AlgebraicPoint,
    RationalPoint,
    RealPoint,
    golden_ratio,
    sqrt2_minus_1,
    tribonacci_constant,
)

__all__ = [
    "Alphabet",
    "Block",
    "DigitStream",
    "INF",
    "block_frequencies",
    "count_in_block",
    "count_in_stream",
    "enumerate_blocks",
    "hamming",
    "iter_blocks",
    "ContractViolation",
    "DomainError",
    "RetryBudgetExceeded",
    "ShiftlabError",
    "UndecidedError",
    "BernoulliOracle",
    "DiracZeroOracle",
    "MeasureOracle",
    "MixOracle",
    "is_good",
    "robustness_delta",
    "AlgebraicPoint",
    "RationalPoint",
    "RealPoint",
    "golden_ratio",
    "sqrt2_minus_1",
    "tribonacci_constant",
    "__version__",
]
