"""
Exact backward-induction solver for finite CB games.

States are tracked per win condition:

- Cover: bitmask of probe points not yet covered
- Omega: bitmask of probe k-subsets not yet engulfed by a single played set
- Gamma: per-point miss counts since the start round, capped at f + 1

The game value only depends on the probe trace of II's certificate, and
every win condition is monotone in the played sets, so the value is
computed over the distinct traces of maximal-size certificates. The
reported policy then takes the lexicographically smallest winning
member list.
"""

import logging
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..covers import Certificate, MulticoveredSpace, covered_points
from ..errors import InvalidSpaceError, StateSpaceExceeded
from .config import GameConfig, WinKind
from .engine import Player, Round
from .strategy import TableStrategy

logger = logging.getLogger(__name__)

DEFAULT_STATE_LIMIT = 1 << 22
DEFAULT_OMEGA_MAX_K = 3
DEFAULT_OPTION_LIMIT = 1 << 16


class CoverTracker:
    def __init__(self, size: int):
        self.initial = (1 << size) - 1

    def advance(self, state: int, mask: int, round_index: int) -> int:
        return state & ~mask

    def settled(self, state: int) -> Optional[bool]:
        return True if state == 0 else None

    def final(self, state: int) -> bool:
        return state == 0


class OmegaTracker:
    def __init__(self, size: int, k: int):
        width = min(k, size)
        self.subsets = [sum(1 << i for i in chosen) for chosen in combinations(range(size), width)]
        self.initial = (1 << len(self.subsets)) - 1
        self._engulfed: Dict[int, int] = {}

    def engulfed(self, mask: int) -> int:
        cached = self._engulfed.get(mask)
        if cached is None:
            cached = 0
            for j, subset in enumerate(self.subsets):
                if subset & ~mask == 0:
                    cached |= 1 << j
            self._engulfed[mask] = cached
        return cached

    def advance(self, state: int, mask: int, round_index: int) -> int:
        return state & ~self.engulfed(mask)

    def settled(self, state: int) -> Optional[bool]:
        return True if state == 0 else None

    def final(self, state: int) -> bool:
        return state == 0


class GammaTracker:
    def __init__(self, size: int, start: int, miss_budget: int):
        self.size = size
        self.start = start
        self.cap = miss_budget + 1
        self.initial = (0,) * size

    def advance(self, state: Tuple[int, ...], mask: int, round_index: int) -> Tuple[int, ...]:
        if round_index < self.start:
            return state
        return tuple(
            count if mask >> i & 1 else min(count + 1, self.cap)
            for i, count in enumerate(state)
        )

    def settled(self, state: Tuple[int, ...]) -> Optional[bool]:
        return False if any(count >= self.cap for count in state) else None

    def final(self, state: Tuple[int, ...]) -> bool:
        return all(count < self.cap for count in state)


Tracker = Union[CoverTracker, OmegaTracker, GammaTracker]


class GameTables:
    """
    Precomputed probe traces and certificate options of a finite game.

    Args:
        space: Finite multicovered space
        config: Game configuration
        omega_max_k: Largest k accepted for Omega conditions
        option_limit: Largest number of certificates enumerated per cover
    """

    def __init__(
        self,
        space: MulticoveredSpace,
        config: GameConfig,
        omega_max_k: int = DEFAULT_OMEGA_MAX_K,
        option_limit: int = DEFAULT_OPTION_LIMIT,
    ):
        if not space.is_finite:
            raise InvalidSpaceError(f"{space.name!r} is not a finite explicit space")
        self.space = space
        self.config = config
        self.probe = config.validate(space)
        self.option_limit = option_limit
        ground = space.ground
        positions = [ground.index(p) for p in self.probe]
        self.member_masks: List[Tuple[int, ...]] = []
        for cover in space.multicover:
            masks = []
            for member_mask in cover.masks:
                mask = 0
                for bit, pos in enumerate(positions):
                    if member_mask >> pos & 1:
                        mask |= 1 << bit
                masks.append(mask)
            self.member_masks.append(tuple(masks))
        win = config.win
        if win.kind is WinKind.COVER:
            self.tracker: Tracker = CoverTracker(len(self.probe))
        elif win.kind is WinKind.OMEGA:
            if win.k > omega_max_k:
                raise InvalidSpaceError(f"Omega condition supports k <= {omega_max_k}, got {win.k}")
            self.tracker = OmegaTracker(len(self.probe), win.k)
        else:
            self.tracker = GammaTracker(len(self.probe), win.start, win.miss_budget)
        self._options: Dict[Tuple[int, Optional[int]], List[Tuple[Tuple[int, ...], int]]] = {}
        self._maximal: Dict[Tuple[int, Optional[int]], List[Tuple[Tuple[int, ...], int]]] = {}

    def _size(self, cover_index: int, round_index: int) -> int:
        members = len(self.member_masks[cover_index])
        budget = self.config.budgets[round_index]
        return members if budget is None else min(budget, members)

    def mask_of(self, cover_index: int, chosen: Sequence[int]) -> int:
        mask = 0
        for i in chosen:
            mask |= self.member_masks[cover_index][i]
        return mask

    def options(self, cover_index: int, round_index: int) -> List[Tuple[Tuple[int, ...], int]]:
        """Every budget-legal member list with its trace, lexicographically."""
        size = self._size(cover_index, round_index)
        key = (cover_index, size)
        cached = self._options.get(key)
        if cached is None:
            members = len(self.member_masks[cover_index])
            total = sum(comb(members, s) for s in range(size + 1))
            if total > self.option_limit:
                raise StateSpaceExceeded(self.option_limit, "certificate options")
            chosen = [c for s in range(size + 1) for c in combinations(range(members), s)]
            cached = [(c, self.mask_of(cover_index, c)) for c in sorted(chosen)]
            self._options[key] = cached
        return cached

    def maximal_traces(self, cover_index: int, round_index: int) -> List[Tuple[Tuple[int, ...], int]]:
        """Distinct traces of maximal-size member lists, first list per trace."""
        size = self._size(cover_index, round_index)
        key = (cover_index, size)
        cached = self._maximal.get(key)
        if cached is None:
            members = len(self.member_masks[cover_index])
            if comb(members, size) > self.option_limit:
                raise StateSpaceExceeded(self.option_limit, "certificate options")
            seen = {}
            for chosen in combinations(range(members), size):
                mask = self.mask_of(cover_index, chosen)
                seen.setdefault(mask, chosen)
            # Traces contained in another trace are dominated.
            traces = list(seen)
            kept = [m for m in traces if not any(o != m and m & ~o == 0 for o in traces)]
            cached = [(seen[m], m) for m in kept]
            self._maximal[key] = cached
        return cached

    def certificate_mask(self, cover_index: int, certificate: Optional[Certificate]) -> int:
        if certificate is None:
            return 0
        inside = covered_points(self.space.cover(cover_index), certificate, self.probe)
        return sum(1 << bit for bit, point in enumerate(self.probe) if point in inside)


@dataclass
class SolveResult:
    """Solver outcome: the winner, its policy and the memo size."""

    winner: Player
    policy: Union[TableStrategy, "PlayerOnePolicy"]
    states_explored: int

    def to_dict(self) -> dict:
        data = {"winner": self.winner.value, "states_explored": self.states_explored}
        if isinstance(self.policy, TableStrategy):
            data["policy"] = self.policy.to_rows()
        return data


class CoverGameSolver:
    """
    Backward induction over (round, tracker state).

    Args:
        space: Finite multicovered space
        config: Game configuration
        state_limit: Memo entries allowed before giving up
        omega_max_k: Largest k accepted for Omega conditions
    """

    def __init__(
        self,
        space: MulticoveredSpace,
        config: GameConfig,
        state_limit: int = DEFAULT_STATE_LIMIT,
        omega_max_k: int = DEFAULT_OMEGA_MAX_K,
    ):
        self.tables = GameTables(space, config, omega_max_k)
        self.tracker = self.tables.tracker
        self.horizon = config.horizon
        self.covers = len(space.multicover)
        self.state_limit = state_limit
        self.memo: Dict[Tuple[int, Any], bool] = {}

    def value(self, round_index: int, state: Any) -> bool:
        """True when II wins from this position with I to move."""
        settled = self.tracker.settled(state)
        if settled is not None:
            return settled
        if round_index == self.horizon:
            return self.tracker.final(state)
        key = (round_index, state)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if len(self.memo) >= self.state_limit:
            raise StateSpaceExceeded(self.state_limit)
        result = all(self.answerable(round_index, state, c) for c in range(self.covers))
        self.memo[key] = result
        return result

    def answerable(self, round_index: int, state: Any, cover_index: int) -> bool:
        return any(
            self.value(round_index + 1, self.tracker.advance(state, mask, round_index))
            for _, mask in self.tables.maximal_traces(cover_index, round_index)
        )

    def best_response(self, round_index: int, state: Any, cover_index: int) -> Optional[Tuple[int, ...]]:
        """Lexicographically smallest winning member list, or None."""
        if self.tracker.settled(state) is True:
            return ()
        for chosen, mask in self.tables.options(cover_index, round_index):
            if self.value(round_index + 1, self.tracker.advance(state, mask, round_index)):
                return chosen
        return None

    def best_cover(self, round_index: int, state: Any) -> int:
        """First cover II cannot answer; cover 0 when II wins anyway."""
        for cover_index in range(self.covers):
            if not self.answerable(round_index, state, cover_index):
                return cover_index
        return 0

    def replay(self, rounds: Sequence[Round]) -> Any:
        state = self.tracker.initial
        for n, played in enumerate(rounds):
            mask = self.tables.certificate_mask(played.cover_index, played.certificate)
            state = self.tracker.advance(state, mask, n)
        return state

    def _materialise(self) -> TableStrategy:
        table: Dict[Tuple[int, ...], Certificate] = {}
        frontier = [((), self.tracker.initial)]
        for n in range(self.horizon):
            following = []
            for history, state in frontier:
                for cover_index in range(self.covers):
                    chosen = self.best_response(n, state, cover_index)
                    extended = history + (cover_index,)
                    table[extended] = Certificate(cover_index, chosen)
                    mask = self.tables.mask_of(cover_index, chosen)
                    following.append((extended, self.tracker.advance(state, mask, n)))
            frontier = following
        return TableStrategy(table, self.tables.config.budgets)

    def solve(self) -> SolveResult:
        started = time.monotonic()
        won = self.value(0, self.tracker.initial)
        if won:
            policy: Union[TableStrategy, PlayerOnePolicy] = self._materialise()
        else:
            policy = PlayerOnePolicy(self)
        duration_ms = int((time.monotonic() - started) * 1000)
        winner = Player.TWO if won else Player.ONE
        logger.info(
            f"Solved {self.tables.space.name!r}: winner {winner.value}, {len(self.memo)} states",
            extra={"duration_ms": duration_ms},
        )
        return SolveResult(winner, policy, len(self.memo))

    def select(self, sequence: Sequence[int]) -> Optional[Tuple[Certificate, ...]]:
        """Responses to a fixed cover sequence meeting the win condition, or None.

        II sees the whole sequence in advance.
        """
        memo: Dict[Tuple[int, Any], bool] = {}

        def feasible(n: int, state: Any) -> bool:
            settled = self.tracker.settled(state)
            if settled is not None:
                return settled
            if n == self.horizon:
                return self.tracker.final(state)
            key = (n, state)
            if key not in memo:
                if len(memo) >= self.state_limit:
                    raise StateSpaceExceeded(self.state_limit)
                memo[key] = any(
                    feasible(n + 1, self.tracker.advance(state, mask, n))
                    for _, mask in self.tables.maximal_traces(sequence[n], n)
                )
            return memo[key]

        if not feasible(0, self.tracker.initial):
            return None
        responses = []
        state = self.tracker.initial
        for n, cover_index in enumerate(sequence[: self.horizon]):
            for chosen, mask in self.tables.maximal_traces(cover_index, n):
                following = self.tracker.advance(state, mask, n)
                if feasible(n + 1, following):
                    responses.append(Certificate(cover_index, chosen))
                    state = following
                    break
        return tuple(responses)


class PlayerOnePolicy:
    """Adaptive Player I chooser backed by a solver that found an I win."""

    def __init__(self, solver: CoverGameSolver):
        self.solver = solver

    def __call__(self, rounds: Tuple[Round, ...]) -> int:
        state = self.solver.replay(rounds)
        return self.solver.best_cover(len(rounds), state)


def solve(
    space: MulticoveredSpace,
    config: GameConfig,
    state_limit: int = DEFAULT_STATE_LIMIT,
    omega_max_k: int = DEFAULT_OMEGA_MAX_K,
) -> SolveResult:
    """
    Exactly solve a finite CB game.

    Raises:
        InvalidSpaceError: The space is lazy or the configuration is invalid
        StateSpaceExceeded: The memo table outgrew ``state_limit``
    """
    return CoverGameSolver(space, config, state_limit, omega_max_k).solve()
