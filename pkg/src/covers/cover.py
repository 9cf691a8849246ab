"""
Covers, multicovers, certificates and multicovered spaces.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..errors import CertificateError, InvalidSpaceError, SearchBoundExceeded
from .ground import FiniteGroundSet, GroundSet
from .members import CoverMember
from .points import canonical_order, format_point, point_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Certificate:
    """Finite subfamily of one cover witnessing a bounded set.

    The bounded set is ``support`` when given (it must lie inside the
    member union), otherwise the union of the listed members.
    """

    cover_index: int
    members: Tuple[Any, ...] = ()
    support: Optional[FrozenSet[Any]] = None

    def __post_init__(self):
        ordered = tuple(canonical_order(set(self.members)))
        object.__setattr__(self, "members", ordered)
        if self.support is not None and not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))

    def __len__(self) -> int:
        return len(self.members)

    def merge(self, other: "Certificate") -> "Certificate":
        """Union of two certificates of the same cover."""
        if other.cover_index != self.cover_index:
            raise CertificateError(
                f"Cannot merge certificates of covers {self.cover_index} and {other.cover_index}"
            )
        support = None
        if self.support is not None and other.support is not None:
            support = self.support | other.support
        return Certificate(self.cover_index, self.members + other.members, support)

    def to_dict(self) -> dict:
        data = {
            "cover": self.cover_index,
            "members": [format_point(m) for m in self.members],
        }
        if self.support is not None:
            data["support_size"] = len(self.support)
        return data


class Cover(ABC):
    """Indexed family of members covering the ground set."""

    is_finite: bool = False

    def __init__(self, ground: GroundSet, label: str = ""):
        self.ground = ground
        self.label = label

    @abstractmethod
    def member(self, index: Any) -> CoverMember:
        ...

    @abstractmethod
    def is_index(self, index: Any) -> bool:
        ...

    @abstractmethod
    def indices_containing(self, point: Any, limit: Optional[int] = None) -> Iterator[Any]:
        """Member indices whose member contains ``point``, in a fixed order."""

    @abstractmethod
    def representative_indices(self, points: Sequence[Any]) -> List[Any]:
        """Indices whose members stand for the whole cover on ``points``."""

    def origin(self, index: Any) -> Optional[Any]:
        return None

    def contains(self, certificate: Certificate, point: Any) -> bool:
        if certificate.support is not None:
            return point in certificate.support
        return any(point in self.member(i) for i in certificate.members)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label!r})"


class FiniteCover(Cover):
    """Cover given as an explicit member list over a finite ground set.

    Args:
        members: The members, indexed by position
        ground: Finite ground set they cover
        label: Human readable description
        origins: Optional parent index per member (set by restriction)
    """

    is_finite = True

    def __init__(
        self,
        members: Sequence[CoverMember],
        ground: FiniteGroundSet,
        label: str = "",
        origins: Optional[Sequence[Any]] = None,
    ):
        super().__init__(ground, label)
        if not isinstance(ground, FiniteGroundSet):
            raise InvalidSpaceError("FiniteCover needs a finite ground set")
        self.members: Tuple[CoverMember, ...] = tuple(members)
        self.origins = tuple(origins) if origins is not None else None
        if self.origins is not None and len(self.origins) != len(self.members):
            raise InvalidSpaceError("One origin per member is required")
        self.masks: Tuple[int, ...] = tuple(self._mask(m) for m in self.members)
        covered = 0
        for mask in self.masks:
            covered |= mask
        if covered != ground.full_mask:
            missing = sorted(ground.points_of(ground.full_mask & ~covered), key=point_key)
            raise InvalidSpaceError(f"Cover {label!r} misses points {missing[:5]!r}")

    def _mask(self, member: CoverMember) -> int:
        listed = member.points()
        if listed is not None:
            return self.ground.mask_of(p for p in listed if p in self.ground)
        mask = 0
        for i, point in enumerate(self.ground.points):
            if point in member:
                mask |= 1 << i
        return mask

    def __len__(self) -> int:
        return len(self.members)

    def member(self, index: Any) -> CoverMember:
        if not self.is_index(index):
            raise CertificateError(f"Member index {index!r} out of range for cover {self.label!r}")
        return self.members[index]

    def is_index(self, index: Any) -> bool:
        return isinstance(index, int) and not isinstance(index, bool) and 0 <= index < len(self.members)

    def indices(self) -> range:
        return range(len(self.members))

    def indices_containing(self, point: Any, limit: Optional[int] = None) -> Iterator[Any]:
        bit = 1 << self.ground.index(point)
        hits = (i for i, mask in enumerate(self.masks) if mask & bit)
        return islice(hits, limit) if limit is not None else hits

    def representative_indices(self, points: Sequence[Any]) -> List[Any]:
        return list(self.indices())

    def origin(self, index: Any) -> Optional[Any]:
        if self.origins is None:
            return None
        return self.origins[index]

    def union_mask(self, indices: Iterable[int]) -> int:
        mask = 0
        for i in indices:
            mask |= self.masks[i]
        return mask

    def member_points(self, index: int) -> FrozenSet[Any]:
        return self.ground.points_of(self.masks[index])


class LazyCover(Cover):
    """Cover of a lazy ground set with members built on demand.

    Args:
        ground: The ground set
        factory: Builds the member with a given index
        is_index: Decides whether a value is a member index
        locator: Yields indices of members containing a point (shortlex);
            None when no such shortcut exists
        label: Human readable description
        indexed_by_points: Member indices are points of the ground set
            (centers or translating elements)
    """

    def __init__(
        self,
        ground: GroundSet,
        factory: Callable[[Any], CoverMember],
        is_index: Callable[[Any], bool],
        locator: Optional[Callable[[Any], Iterator[Any]]] = None,
        label: str = "",
        indexed_by_points: bool = True,
    ):
        super().__init__(ground, label)
        self.factory = factory
        self._is_index = is_index
        self.locator = locator
        self.indexed_by_points = indexed_by_points
        self._members: Dict[Any, CoverMember] = {}
        if locator is None:
            logger.warning(f"Cover {label!r} has no locator; probe coverage is not checked")
        else:
            for point in ground.probe_points():
                first = next(iter(locator(point)), None)
                if first is None or point not in self.member(first):
                    raise InvalidSpaceError(f"Cover {label!r} misses probe point {point!r}")

    def member(self, index: Any) -> CoverMember:
        cached = self._members.get(index)
        if cached is None:
            if not self._is_index(index):
                raise CertificateError(f"Invalid member index {index!r} for cover {self.label!r}")
            cached = self.factory(index)
            self._members[index] = cached
        return cached

    def is_index(self, index: Any) -> bool:
        try:
            return bool(self._is_index(index))
        except (TypeError, ValueError):
            return False

    def indices_containing(self, point: Any, limit: Optional[int] = None) -> Iterator[Any]:
        if self.locator is None:
            raise SearchBoundExceeded(f"Cover {self.label!r} cannot locate members containing a point")
        hits = (i for i in self.locator(point) if point in self.member(i))
        return islice(hits, limit) if limit is not None else hits

    def representative_indices(self, points: Sequence[Any]) -> List[Any]:
        if self.indexed_by_points:
            return [p for p in points if self.is_index(p)]
        seen: Dict[Any, None] = {}
        for point in points:
            for index in self.indices_containing(point, limit=1):
                seen.setdefault(index, None)
        return canonical_order(seen)


class Multicover:
    """Ordered family of covers of one ground set.

    Args:
        covers: The covers; list order is the declared refinement direction
        centered_witness: Optional map from a pair of cover positions to
            a cover position that bounds both
    """

    def __init__(
        self,
        covers: Sequence[Cover],
        centered_witness: Optional[Mapping[Tuple[int, int], int]] = None,
    ):
        if not covers:
            raise InvalidSpaceError("A multicover needs at least one cover")
        self.covers: Tuple[Cover, ...] = tuple(covers)
        self.centered_witness: Dict[Tuple[int, int], int] = dict(centered_witness or {})

    def __len__(self) -> int:
        return len(self.covers)

    def __getitem__(self, index: int) -> Cover:
        return self.covers[index]

    def __iter__(self) -> Iterator[Cover]:
        return iter(self.covers)

    @property
    def is_finite(self) -> bool:
        return all(cover.is_finite for cover in self.covers)


class MulticoveredSpace:
    """A ground set together with a multicover.

    Args:
        ground: The ground set X
        multicover: The multicover λ
        name: Label used in reports
        factors: The two factor spaces when this is a product space
        group: The group when this space is a group multicover
        parent: The space this one was restricted from
    """

    def __init__(
        self,
        ground: GroundSet,
        multicover: Multicover,
        name: str = "",
        factors: Optional[Tuple["MulticoveredSpace", "MulticoveredSpace"]] = None,
        group: Any = None,
        parent: Optional["MulticoveredSpace"] = None,
    ):
        for cover in multicover:
            if cover.ground is not ground:
                raise InvalidSpaceError(f"Cover {cover.label!r} belongs to a different ground set")
        self.ground = ground
        self.multicover = multicover
        self.name = name
        self.factors = factors
        self.group = group
        self.parent = parent

    @property
    def is_finite(self) -> bool:
        return self.ground.is_finite and self.multicover.is_finite

    def cover(self, index: int) -> Cover:
        if not 0 <= index < len(self.multicover):
            raise CertificateError(f"Cover index {index} out of range for {self.name!r}")
        return self.multicover[index]

    def probe_points(self) -> Tuple[Any, ...]:
        return self.ground.probe_points()

    def __repr__(self) -> str:
        return f"MulticoveredSpace({self.name!r}, covers={len(self.multicover)})"
