"""Log-linear learning on binary-action games.

Kernels and path measures for asynchronous logistic-choice dynamics,
monotone one-step and path couplings between a static potential game and
a history-dependent partner, dominance certification for the all-ones
profile, and a coupled epidemic / coordination case study.
"""

__version__ = "0.1.0"

from .errors import (
    AlignmentError,
    ContractError,
    DeviationError,
    DimensionError,
    EnumerationBoundError,
    LlgamesError,
    MissingBoundsError,
    MissingStatisticError,
    NumericError,
    OrderError,
    ParameterError,
)
from .games import (
    Graph,
    HistoryGame,
    PotentialGame,
    SufficientStatistic,
    UtilityBounds,
    gcg_game,
    game_from_json,
    static_history_game,
    table_game,
    verify_alignment,
    verify_exact_potential,
)

__all__ = [
    "AlignmentError",
    "ContractError",
    "DeviationError",
    "DimensionError",
    "EnumerationBoundError",
    "Graph",
    "HistoryGame",
    "LlgamesError",
    "MissingBoundsError",
    "MissingStatisticError",
    "NumericError",
    "OrderError",
    "ParameterError",
    "PotentialGame",
    "SufficientStatistic",
    "UtilityBounds",
    "game_from_json",
    "gcg_game",
    "static_history_game",
    "table_game",
    "verify_alignment",
    "verify_exact_potential",
    "__version__",
]
