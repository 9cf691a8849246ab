"""
Playing CB games: deterministic replay, exhaustive strategy evaluation
and probe verification on lazy spaces.
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from ..covers import Certificate, MulticoveredSpace, TriBool, covered_points
from ..covers.tribool import Scope
from ..errors import CertificateError, MulticoverError, SearchBoundExceeded
from .config import GameConfig, WinCondition
from .strategy import Strategy

logger = logging.getLogger(__name__)


class Player(str, Enum):
    ONE = "I"
    TWO = "II"


@dataclass(frozen=True)
class Round:
    cover_index: int
    certificate: Optional[Certificate]


@dataclass(frozen=True)
class Transcript:
    """Result of one play. ``forfeit`` names II's illegal move, if any."""

    winner: Player
    rounds: Tuple[Round, ...]
    forfeit: Optional[str] = None

    @property
    def covers(self) -> Tuple[int, ...]:
        return tuple(r.cover_index for r in self.rounds)

    def to_dict(self) -> dict:
        return {
            "winner": self.winner.value,
            "forfeit": self.forfeit,
            "rounds": [
                {
                    "cover": r.cover_index,
                    "certificate": r.certificate.to_dict() if r.certificate is not None else None,
                }
                for r in self.rounds
            ],
        }


Chooser = Callable[[Tuple[Round, ...]], int]
PlayerOne = Union[Sequence[int], Chooser]


def check_certificate(
    space: MulticoveredSpace, certificate: Certificate, cover_index: int, budget: Optional[int]
) -> Optional[str]:
    """Reason a certificate is illegal for this round, or None."""
    if certificate.cover_index != cover_index:
        return f"certificate references cover {certificate.cover_index}, round cover is {cover_index}"
    if budget is not None and len(certificate) > budget:
        return f"certificate has {len(certificate)} members, budget is {budget}"
    cover = space.cover(cover_index)
    for index in certificate.members:
        if not cover.is_index(index):
            return f"member index {index!r} is not valid for cover {cover_index}"
    if certificate.support is not None:
        members = [cover.member(i) for i in certificate.members]
        for point in certificate.support:
            if point not in space.ground or not any(point in m for m in members):
                return f"support point {point!r} is outside the certified members"
    return None


def play_game(
    space: MulticoveredSpace,
    config: GameConfig,
    player_one: PlayerOne,
    player_two: Strategy,
) -> Transcript:
    """
    Replay one game.

    Args:
        space: Multicovered space the game is played on
        config: Horizon, budgets and win condition
        player_one: Cover index sequence of length >= horizon, or an
            adaptive chooser called with the rounds played so far
        player_two: Strategy answering each history

    Returns:
        Transcript with the winner; an illegal II move forfeits the game

    Raises:
        CertificateError: Player I chose a cover outside the multicover
    """
    probe = config.validate(space)
    rounds: List[Round] = []
    played: List[frozenset] = []
    history: List[int] = []
    for n in range(config.horizon):
        choice = player_one[n] if isinstance(player_one, Sequence) else player_one(tuple(rounds))
        if not 0 <= choice < len(space.multicover):
            raise CertificateError(f"Player I chose cover {choice}, multicover has {len(space.multicover)}")
        history.append(choice)
        try:
            certificate = player_two(tuple(history))
        except CertificateError as e:
            rounds.append(Round(choice, None))
            return Transcript(Player.ONE, tuple(rounds), forfeit=f"round {n}: {e}")
        problem = check_certificate(space, certificate, choice, config.budgets[n])
        rounds.append(Round(choice, certificate))
        if problem is not None:
            return Transcript(Player.ONE, tuple(rounds), forfeit=f"round {n}: {problem}")
        played.append(covered_points(space.cover(choice), certificate, probe))
    winner = Player.TWO if config.win.holds(played, probe) else Player.ONE
    return Transcript(winner, tuple(rounds))


@dataclass(frozen=True)
class WorstCase:
    """Outcome of a strategy against every Player I sequence."""

    winner: Player
    refutation: Optional[Tuple[int, ...]] = None
    transcript: Optional[Transcript] = None
    plays: int = 0

    def to_dict(self) -> dict:
        return {
            "winner": self.winner.value,
            "refutation": list(self.refutation) if self.refutation is not None else None,
            "plays": self.plays,
        }


def player_one_sequences(space: MulticoveredSpace, horizon: int, covers: Optional[Sequence[int]] = None):
    """All cover sequences of length ``horizon``, lexicographically."""
    choices = list(covers) if covers is not None else list(range(len(space.multicover)))
    return product(choices, repeat=horizon)


def evaluate_strategy(
    space: MulticoveredSpace,
    config: GameConfig,
    strategy: Strategy,
    covers: Optional[Sequence[int]] = None,
) -> WorstCase:
    """
    Play the strategy against every Player I sequence.

    Args:
        covers: Restrict Player I to these cover positions

    Returns:
        II if every play is won, otherwise I with the first refuting sequence
    """
    started = time.monotonic()
    plays = 0
    for sequence in player_one_sequences(space, config.horizon, covers):
        plays += 1
        transcript = play_game(space, config, sequence, strategy)
        if transcript.winner is Player.ONE:
            logger.debug(f"{strategy.name} refuted by {list(sequence)} after {plays} plays")
            return WorstCase(Player.ONE, tuple(sequence), transcript, plays)
    duration_ms = int((time.monotonic() - started) * 1000)
    logger.debug(f"{strategy.name} survived {plays} plays", extra={"duration_ms": duration_ms})
    return WorstCase(Player.TWO, None, None, plays)


def verify_on_probe(
    space: MulticoveredSpace,
    sequences: Iterable[Sequence[int]],
    strategy: Strategy,
    win: WinCondition,
    budgets: Optional[Sequence[Optional[int]]] = None,
) -> TriBool:
    """
    Check a strategy on a lazy space for the supplied Player I sequences.

    Each sequence is played to its own length with the strategy's declared
    schedule unless ``budgets`` is given.

    Returns:
        Yes (scope probe) when every play is won, No with the losing
        sequence and transcript, Unknown when evaluation failed
    """
    count = 0
    for sequence in sequences:
        sequence = tuple(sequence)
        schedule = tuple(budgets[: len(sequence)]) if budgets is not None else strategy.schedule(len(sequence))
        config = GameConfig(len(sequence), schedule, win)
        try:
            transcript = play_game(space, config, sequence, strategy)
        except SearchBoundExceeded as e:
            return TriBool.unknown({"sequence": list(sequence), "reason": str(e)})
        except MulticoverError as e:
            return TriBool.unknown({"sequence": list(sequence), "reason": str(e)})
        count += 1
        if transcript.winner is Player.ONE:
            return TriBool.no({"sequence": list(sequence), "transcript": transcript.to_dict()}, Scope.PROBE)
    return TriBool.yes({"sequences": count}, Scope.PROBE)
