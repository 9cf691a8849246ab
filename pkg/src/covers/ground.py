"""
Ground sets of multicovered spaces.
"""

import logging
from abc import ABC, abstractmethod
from itertools import islice
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import InvalidSpaceError
from .points import canonical_order, point_key

logger = logging.getLogger(__name__)


class GroundSet(ABC):
    """The set X of a multicovered space."""

    is_finite: bool = False

    @abstractmethod
    def __contains__(self, point: Any) -> bool:
        ...

    @abstractmethod
    def probe_points(self) -> Tuple[Any, ...]:
        """All points quantified over by checks, in canonical order."""

    @abstractmethod
    def enumerate(self, limit: int) -> Iterator[Any]:
        """Yield at most ``limit`` points in a fixed order."""


class FiniteGroundSet(GroundSet):
    """Explicit, nonempty, duplicate-free point list."""

    is_finite = True

    def __init__(self, points: Iterable[Any]):
        raw = list(points)
        if not raw:
            raise InvalidSpaceError("Ground set must be nonempty")
        if len(set(raw)) != len(raw):
            raise InvalidSpaceError("Ground set contains duplicate points")
        self.points: Tuple[Any, ...] = tuple(canonical_order(raw))
        self._index: Dict[Any, int] = {p: i for i, p in enumerate(self.points)}
        self.full_mask = (1 << len(self.points)) - 1

    def __contains__(self, point: Any) -> bool:
        return point in self._index

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.points)

    def __repr__(self) -> str:
        return f"FiniteGroundSet({list(self.points)!r})"

    def index(self, point: Any) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise InvalidSpaceError(f"Point {point!r} is not in the ground set") from None

    def mask_of(self, points: Iterable[Any]) -> int:
        mask = 0
        for point in points:
            mask |= 1 << self.index(point)
        return mask

    def points_of(self, mask: int) -> FrozenSet[Any]:
        return frozenset(p for i, p in enumerate(self.points) if mask >> i & 1)

    def probe_points(self) -> Tuple[Any, ...]:
        return self.points

    def enumerate(self, limit: int) -> Iterator[Any]:
        return islice(iter(self.points), limit)


class LazyGroundSet(GroundSet):
    """Infinite (or huge) point universe described by a predicate.

    Args:
        membership: Decides whether a value is a point of X
        enumerator: Returns an iterator over X in a fixed order
        probes: Finite point sets that universal checks run over
        label: Human readable description
    """

    def __init__(
        self,
        membership: Callable[[Any], bool],
        enumerator: Callable[[], Iterator[Any]],
        probes: Sequence[Iterable[Any]],
        label: str = "lazy",
    ):
        self.membership = membership
        self.enumerator = enumerator
        self.label = label
        self.probes: Tuple[FrozenSet[Any], ...] = tuple(frozenset(p) for p in probes)
        if not self.probes or not any(self.probes):
            raise InvalidSpaceError(f"Lazy ground set {label} needs a nonempty probe")
        for probe in self.probes:
            for point in probe:
                if not membership(point):
                    raise InvalidSpaceError(f"Probe point {point!r} is not in {label}")
        union = set().union(*self.probes)
        self._probe_points = tuple(canonical_order(union))
        logger.debug(f"Lazy ground set {label} with {len(self._probe_points)} probe points")

    def __contains__(self, point: Any) -> bool:
        try:
            return bool(self.membership(point))
        except (TypeError, ValueError):
            return False

    def __repr__(self) -> str:
        return f"LazyGroundSet({self.label})"

    def probe_points(self) -> Tuple[Any, ...]:
        return self._probe_points

    def enumerate(self, limit: int) -> Iterator[Any]:
        return islice(self.enumerator(), limit)


def sorted_points(points: Iterable[Any]) -> Tuple[Any, ...]:
    """Deduplicate and order a point collection."""
    return tuple(canonical_order(set(points)))


def as_point_list(points: Optional[Iterable[Any]], ground: GroundSet) -> List[Any]:
    """Resolve an optional probe against a ground set."""
    if points is None:
        return list(ground.probe_points())
    result = list(sorted_points(points))
    for point in result:
        if point not in ground:
            raise InvalidSpaceError(f"Probe point {point!r} is outside the ground set")
    return result


__all__ = [
    "GroundSet",
    "FiniteGroundSet",
    "LazyGroundSet",
    "sorted_points",
    "as_point_list",
    "point_key",
]
