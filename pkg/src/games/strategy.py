"""
Player II strategies: maps from histories of cover choices to certificates.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from ..covers import Certificate, MulticoveredSpace, bounded_by, candidate_pool, covered_points, greedy_selection
from ..covers.ground import as_point_list
from ..errors import CertificateError

logger = logging.getLogger(__name__)

History = Tuple[int, ...]


class Strategy(ABC):
    """
    Player II strategy Θ: λ^{<ω} -> certificates.

    Responses are memoised per instance. ``budget(n)`` is the declared
    certificate size bound for round n (None for unbounded).
    """

    name = "strategy"
    depends_only_on_last_cover = False

    def __init__(self):
        self._memo: Dict[History, Certificate] = {}

    def __call__(self, history: Sequence[int]) -> Certificate:
        key = tuple(history)
        if not key:
            raise CertificateError("A strategy responds to nonempty histories only")
        cached = self._memo.get(key)
        if cached is None:
            cached = self.respond(key)
            if cached.cover_index != key[-1]:
                raise CertificateError(
                    f"{self.name} answered cover {cached.cover_index} to a history ending in {key[-1]}"
                )
            self._memo[key] = cached
        return cached

    @abstractmethod
    def respond(self, history: History) -> Certificate:
        ...

    def budget(self, round_index: int) -> Optional[int]:
        return None

    def schedule(self, horizon: int) -> Tuple[Optional[int], ...]:
        return tuple(self.budget(n) for n in range(horizon))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class TableStrategy(Strategy):
    """Strategy given by an explicit table (solver policies, JSON dumps)."""

    name = "table"

    def __init__(self, table: Mapping[History, Certificate], budgets: Sequence[Optional[int]] = ()):
        super().__init__()
        self.table = dict(table)
        self.budgets = tuple(budgets)

    def respond(self, history: History) -> Certificate:
        try:
            return self.table[history]
        except KeyError:
            raise CertificateError(f"Table strategy undefined on history {list(history)}") from None

    def budget(self, round_index: int) -> Optional[int]:
        if round_index < len(self.budgets):
            return self.budgets[round_index]
        return None

    def to_rows(self) -> list:
        return [
            {"history": list(history), "certificate": certificate.to_dict()}
            for history, certificate in sorted(self.table.items())
        ]


class FunctionStrategy(Strategy):
    """Strategy wrapping a plain callable."""

    def __init__(
        self,
        fn: Callable[[History], Certificate],
        budgets: Sequence[Optional[int]] = (),
        name: str = "function",
        depends_only_on_last_cover: bool = False,
    ):
        super().__init__()
        self.fn = fn
        self.budgets = tuple(budgets)
        self.name = name
        self.depends_only_on_last_cover = depends_only_on_last_cover

    def respond(self, history: History) -> Certificate:
        return self.fn(history)

    def budget(self, round_index: int) -> Optional[int]:
        if round_index < len(self.budgets):
            return self.budgets[round_index]
        return self.budgets[-1] if self.budgets else None


class MarkovStrategy(Strategy):
    """Strategy answering each cover with a fixed certificate."""

    name = "markov"
    depends_only_on_last_cover = True

    def __init__(self, answers: Mapping[int, Certificate], budget: Optional[int] = None, name: str = "markov"):
        super().__init__()
        self.answers = dict(answers)
        self.fixed_budget = budget
        self.name = name

    def respond(self, history: History) -> Certificate:
        try:
            return self.answers[history[-1]]
        except KeyError:
            raise CertificateError(f"{self.name} has no answer for cover {history[-1]}") from None

    def budget(self, round_index: int) -> Optional[int]:
        return self.fixed_budget


class GreedyStrategy(Strategy):
    """Each round, take up to b members covering the most still-uncovered probe points.

    Ties go to the lowest member index.
    """

    name = "greedy"

    def __init__(self, space: MulticoveredSpace, budgets: Sequence[Optional[int]], probe: Optional[Iterable[Any]] = None):
        super().__init__()
        self.space = space
        self.budgets = tuple(budgets)
        self.probe = as_point_list(probe, space.ground)

    def budget(self, round_index: int) -> Optional[int]:
        if round_index < len(self.budgets):
            return self.budgets[round_index]
        return self.budgets[-1] if self.budgets else None

    def respond(self, history: History) -> Certificate:
        uncovered = set(self.probe)
        for n in range(len(history) - 1):
            prefix = history[: n + 1]
            uncovered -= covered_points(self.space.cover(prefix[-1]), self(prefix), uncovered)
        cover_index = history[-1]
        cover = self.space.cover(cover_index)
        target = [p for p in self.probe if p in uncovered]
        if not target:
            return Certificate(cover_index, ())
        pool = candidate_pool(cover, target)
        chosen, _ = greedy_selection(pool, (1 << len(target)) - 1, self.budget(len(history) - 1))
        return Certificate(cover_index, chosen)


def cover_all_strategy(
    space: MulticoveredSpace,
    probe: Optional[Iterable[Any]] = None,
    budget: Optional[int] = None,
) -> MarkovStrategy:
    """Bound the whole probe in every round.

    Raises:
        CertificateError: Some cover does not bound the probe within budget
    """
    points = as_point_list(probe, space.ground)
    answers = {}
    for index, cover in enumerate(space.multicover):
        certificate = bounded_by(cover, points, budget, cover_index=index)
        if certificate is None:
            raise CertificateError(f"Cover {index} does not bound the probe with {budget} members")
        answers[index] = certificate
    sizes = [len(c) for c in answers.values()]
    logger.debug(f"cover-all strategy on {space.name!r}: certificate sizes {sizes}")
    return MarkovStrategy(answers, budget if budget is not None else max(sizes), name="cover-all")


def empty_strategy() -> FunctionStrategy:
    """Always plays the empty bounded set."""
    return FunctionStrategy(
        lambda history: Certificate(history[-1], ()),
        budgets=(0,),
        name="constant-empty",
        depends_only_on_last_cover=True,
    )
