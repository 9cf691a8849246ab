"""
Selection principles on finite spaces and the OF game on groups.

Menger, Scheepers and Hurewicz are the non-game selection properties:
for every Player I sequence there exist budget-legal bounded sets forming
a cover, an ω-cover or a γ-cover. The winning principle asks for a
strategy that does so without seeing the future.
"""

import logging
from enum import Enum
from typing import Optional, Sequence, Tuple

from ..covers import MulticoveredSpace, Side, TriBool, is_omega_bounded, is_totally_bounded, restrict
from ..covers.bounded import DEFAULT_EXACT_LIMIT
from .config import GameConfig, WinKind
from .engine import Player, PlayerOne, Transcript, play_game, player_one_sequences
from .solver import DEFAULT_OMEGA_MAX_K, DEFAULT_STATE_LIMIT, CoverGameSolver
from .strategy import Strategy

logger = logging.getLogger(__name__)


class Principle(str, Enum):
    WINNING = "winning"
    MENGER = "menger"
    SCHEEPERS = "scheepers"
    HUREWICZ = "hurewicz"
    TOTALLY_BOUNDED = "totally-bounded"
    OMEGA_BOUNDED = "omega-bounded"


SELECTION_KINDS = {
    Principle.MENGER: WinKind.COVER,
    Principle.SCHEEPERS: WinKind.OMEGA,
    Principle.HUREWICZ: WinKind.GAMMA,
}


def check_principle(
    space: MulticoveredSpace,
    config: GameConfig,
    principle: Principle,
    state_limit: int = DEFAULT_STATE_LIMIT,
    omega_max_k: int = DEFAULT_OMEGA_MAX_K,
    covers: Optional[Sequence[int]] = None,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> TriBool:
    """
    Decide a principle on a space at the configured horizon and budgets.

    The selection principles keep the configuration's k, start round and
    miss budget and switch only the condition kind.

    Args:
        covers: Restrict Player I to these cover positions
        exact_limit: Combination cap for the totally-bounded search
    """
    principle = Principle(principle)
    if principle is Principle.TOTALLY_BOUNDED:
        return is_totally_bounded(space, config.budgets[0], exact_limit)
    if principle is Principle.OMEGA_BOUNDED:
        return is_omega_bounded(space)
    if principle is Principle.WINNING:
        result = CoverGameSolver(space, config, state_limit, omega_max_k).solve()
        if result.winner is Player.TWO:
            return TriBool.yes({"states_explored": result.states_explored})
        return TriBool.no({"states_explored": result.states_explored})

    selection = config.with_win(config.win.as_kind(SELECTION_KINDS[principle]))
    solver = CoverGameSolver(space, selection, state_limit, omega_max_k)
    checked = 0
    for sequence in player_one_sequences(space, selection.horizon, covers):
        responses = solver.select(sequence)
        if responses is None:
            logger.debug(f"{principle.value} fails on {space.name!r} for {list(sequence)}")
            return TriBool.no({"sequence": list(sequence)})
        checked += 1
    return TriBool.yes({"sequences": checked})


def _group_game_space(group, radii: Sequence[int], side: Side, probe=None) -> Tuple[MulticoveredSpace, bool]:
    """The translate space of a finite group, or the restriction of an infinite one to its probe."""
    from ..spaces.group_covers import group_space

    space = group_space(group, radii, side, probe=probe)
    if space.is_finite:
        return space, False
    logger.debug(f"Playing {space.name!r} on {len(space.probe_points())} probe points")
    return restrict(space, space.probe_points()), True


def of_game_on_group(
    group,
    radii: Sequence[int],
    side: Side,
    config: GameConfig,
    player_one: PlayerOne,
    player_two: Strategy,
    probe=None,
) -> Transcript:
    """Play the OF game on a group as the CB game on its translate multicover."""
    from ..spaces.group_covers import group_space

    space = group_space(group, radii, side, probe=probe)
    return play_game(space, config, player_one, player_two)


def check_o_bounded(group, radii: Sequence[int], config: GameConfig, probe=None, **limits) -> TriBool:
    """o-bounded: the right translate multicover is Menger."""
    space, on_probe = _group_game_space(group, radii, Side.RIGHT, probe)
    result = check_principle(space, config, Principle.MENGER, **limits)
    return result.on_probe() if on_probe else result


def check_strictly_o_bounded(group, radii: Sequence[int], config: GameConfig, probe=None, **limits) -> TriBool:
    """Strictly o-bounded: II wins the CB game on the left translate multicover."""
    space, on_probe = _group_game_space(group, radii, Side.LEFT, probe)
    result = check_principle(space, config, Principle.WINNING, **limits)
    return result.on_probe() if on_probe else result

