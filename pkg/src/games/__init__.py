"""
CB games: configuration, play, strategies and the exact solver.
"""

from .config import GameConfig, WinCondition, WinKind
from .engine import (
    Player,
    Round,
    Transcript,
    WorstCase,
    check_certificate,
    evaluate_strategy,
    play_game,
    player_one_sequences,
    verify_on_probe,
)
from .principles import (
    Principle,
    check_o_bounded,
    check_principle,
    check_strictly_o_bounded,
    of_game_on_group,
)
from .solver import CoverGameSolver, PlayerOnePolicy, SolveResult, solve
from .strategy import (
    FunctionStrategy,
    GreedyStrategy,
    History,
    MarkovStrategy,
    Strategy,
    TableStrategy,
    cover_all_strategy,
    empty_strategy,
)

__all__ = [
    "CoverGameSolver",
    "FunctionStrategy",
    "GameConfig",
    "GreedyStrategy",
    "History",
    "MarkovStrategy",
    "Player",
    "PlayerOnePolicy",
    "Principle",
    "Round",
    "SolveResult",
    "Strategy",
    "TableStrategy",
    "Transcript",
    "WinCondition",
    "WinKind",
    "WorstCase",
    "check_certificate",
    "check_o_bounded",
    "check_principle",
    "check_strictly_o_bounded",
    "cover_all_strategy",
    "empty_strategy",
    "evaluate_strategy",
    "of_game_on_group",
    "play_game",
    "player_one_sequences",
    "solve",
    "verify_on_probe",
]
