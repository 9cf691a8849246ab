"""
Maps between multicovered spaces.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, FrozenSet, Iterable, Mapping, Optional, Tuple

from ..errors import InvalidSpaceError, SearchBoundExceeded
from .bounded import bounded_by
from .cover import Cover, MulticoveredSpace
from .order import DEFAULT_SEARCH_BOUND
from .points import canonical_order, format_point
from .tribool import Scope, TriBool

logger = logging.getLogger(__name__)


class MapKind(str, Enum):
    """PERFECT maps pull strategies back; UNIFORMLY_BOUNDED maps push witnesses forward."""

    PERFECT = "perfect"
    UNIFORMLY_BOUNDED = "uniformly_bounded"


@dataclass(frozen=True)
class SpaceMap:
    """
    A function f: X -> Y with its boundedness data.

    ``assign`` maps source cover positions to target cover positions for
    perfect maps, and target positions to source positions for uniformly
    bounded ones. ``domain`` lists the source points f is evaluated on;
    it defaults to the source probe.
    """

    fn: Callable[[Any], Any]
    source: MulticoveredSpace
    target: MulticoveredSpace
    kind: MapKind
    assign: Mapping[int, int] = field(default_factory=dict)
    domain: Optional[FrozenSet[Any]] = None

    def __post_init__(self):
        size_from, size_to = (
            (len(self.source.multicover), len(self.target.multicover))
            if self.kind is MapKind.PERFECT
            else (len(self.target.multicover), len(self.source.multicover))
        )
        for key in range(size_from):
            if key not in self.assign:
                raise InvalidSpaceError(f"Map {self.kind.value} has no assignment for cover {key}")
            if not 0 <= self.assign[key] < size_to:
                raise InvalidSpaceError(f"Assignment {key}->{self.assign[key]} out of range")

    def domain_points(self) -> Tuple[Any, ...]:
        if self.domain is not None:
            return tuple(canonical_order(self.domain))
        return self.source.probe_points()

    def image(self, points: Iterable[Any]) -> FrozenSet[Any]:
        return frozenset(self.fn(p) for p in points)

    def preimage(self, contains: Callable[[Any], bool]) -> FrozenSet[Any]:
        """Domain points whose image satisfies ``contains``."""
        return frozenset(p for p in self.domain_points() if contains(self.fn(p)))

    def is_onto(self, points: Iterable[Any]) -> bool:
        image = self.image(self.domain_points())
        return all(p in image for p in points)

    def verify(self, search_bound: int = DEFAULT_SEARCH_BOUND) -> TriBool:
        """Check the boundedness data member by member.

        Perfect: the preimage of every member of the assigned target cover
        is bounded in the source cover. Uniformly bounded: the image of
        every member of the assigned source cover is bounded in the target
        cover. Members are taken from the representatives on the domain.
        """
        domain = self.domain_points()
        exact = self.source.is_finite and self.target.is_finite
        scope = Scope.EXACT if exact else Scope.PROBE
        for key, value in sorted(self.assign.items()):
            if self.kind is MapKind.PERFECT:
                source_cover, target_cover = self.source.cover(key), self.target.cover(value)
                representatives = target_cover.representative_indices(list(self.image(domain)))
                for index in representatives:
                    member = target_cover.member(index)
                    pre = self.preimage(lambda y: y in member)
                    result = self._bounded(source_cover, pre, search_bound)
                    if result is not None:
                        return result if result.is_unknown else TriBool.no(
                            {"source_cover": key, "target_member": format_point(index)}, scope
                        )
            else:
                target_cover, source_cover = self.target.cover(key), self.source.cover(value)
                for index in source_cover.representative_indices(list(domain)):
                    member = source_cover.member(index)
                    image = self.image(p for p in domain if p in member)
                    result = self._bounded(target_cover, image, search_bound)
                    if result is not None:
                        return result if result.is_unknown else TriBool.no(
                            {"target_cover": key, "source_member": format_point(index)}, scope
                        )
        return TriBool.yes({"kind": self.kind.value}, scope)

    @staticmethod
    def _bounded(cover: Cover, points: FrozenSet[Any], search_bound: int) -> Optional[TriBool]:
        try:
            if bounded_by(cover, points, search_bound) is None:
                return TriBool.no()
        except SearchBoundExceeded as e:
            return TriBool.unknown(str(e))
        return None


def identity_map(
    source: MulticoveredSpace,
    target: MulticoveredSpace,
    kind: MapKind,
    assign: Mapping[int, int],
) -> SpaceMap:
    """The identity X -> X between two multicovers of the same points."""
    return SpaceMap(lambda x: x, source, target, kind, assign)


def projection_map(product: MulticoveredSpace, assign: Mapping[int, int], domain=None) -> SpaceMap:
    """Projection X × Y -> X onto the first factor, as a perfect map."""
    if product.factors is None:
        raise InvalidSpaceError(f"{product.name!r} is not a product space")
    return SpaceMap(lambda pair: pair[0], product, product.factors[0], MapKind.PERFECT, assign, domain)


__all__ = ["MapKind", "SpaceMap", "identity_map", "projection_map"]
