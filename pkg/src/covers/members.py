"""
Cover members: the sets U of a cover u.

Every member decides membership exactly. Members whose point set can be
listed expose it through ``points()``; lazy members over infinite sets
return ``None`` only when listing is impossible.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, Callable, FrozenSet, Optional


class Side(str, Enum):
    """Which translate of a neighborhood a group cover uses."""

    LEFT = "L"
    RIGHT = "R"
    JOIN = "Join"
    MEET = "Meet"


class CoverMember(ABC):
    """A single set of a cover."""

    @abstractmethod
    def __contains__(self, point: Any) -> bool:
        ...

    def points(self) -> Optional[FrozenSet[Any]]:
        """The member's points, or None if they cannot be listed."""
        return None

    def describe(self) -> dict:
        return {"kind": type(self).__name__}


@dataclass(frozen=True)
class ExplicitMember(CoverMember):
    elements: FrozenSet[Any]

    def __contains__(self, point: Any) -> bool:
        return point in self.elements

    def points(self) -> FrozenSet[Any]:
        return self.elements

    def describe(self) -> dict:
        from .points import canonical_order, format_point

        return {"kind": "explicit", "points": [format_point(p) for p in canonical_order(self.elements)]}


@dataclass(frozen=True)
class BallMember(CoverMember):
    """Open ball {y : d(y, center) < radius}.

    ``lister`` optionally enumerates the ball for lazy metric spaces.
    """

    center: Any
    radius: Fraction
    distance: Callable[[Any, Any], Any] = field(compare=False, repr=False)
    lister: Optional[Callable[[Any, Fraction], FrozenSet[Any]]] = field(
        default=None, compare=False, repr=False
    )

    def __contains__(self, point: Any) -> bool:
        return self.distance(point, self.center) < self.radius

    def points(self) -> Optional[FrozenSet[Any]]:
        if self.lister is None:
            return None
        return self.lister(self.center, self.radius)

    def describe(self) -> dict:
        from .points import format_point

        return {"kind": "ball", "center": format_point(self.center), "radius": str(self.radius)}


@dataclass(frozen=True)
class TranslateMember(CoverMember):
    """Translate of the word ball U = {g : |g| <= radius} in a group.

    LEFT is gU, RIGHT is Ug, JOIN is gU ∩ Ug and MEET is UgU.
    """

    element: Any
    radius: int
    group: Any = field(compare=False, repr=False)
    side: Side = Side.LEFT

    def __contains__(self, point: Any) -> bool:
        group = self.group
        if not group.contains(point):
            return False
        if self.side is Side.MEET:
            return group.in_double_coset(point, self.element, self.radius)
        if self.side is not Side.RIGHT:
            left = group.length(group.multiply(group.inverse(self.element), point))
            if left > self.radius:
                return False
            if self.side is Side.LEFT:
                return True
        right = group.length(group.multiply(point, group.inverse(self.element)))
        return right <= self.radius

    def points(self) -> FrozenSet[Any]:
        group = self.group
        ball = list(group.ball(self.radius))
        g = self.element
        if self.side is Side.LEFT:
            return frozenset(group.multiply(g, u) for u in ball)
        if self.side is Side.RIGHT:
            return frozenset(group.multiply(u, g) for u in ball)
        if self.side is Side.JOIN:
            return frozenset(y for y in (group.multiply(g, u) for u in ball) if y in self)
        return frozenset(group.multiply(group.multiply(u, g), v) for u, v in product(ball, ball))

    def describe(self) -> dict:
        from .points import format_point

        return {
            "kind": "translate",
            "side": self.side.value,
            "element": format_point(self.element),
            "radius": self.radius,
        }


@dataclass(frozen=True)
class ProductMember(CoverMember):
    """Rectangle U × V in a product space; points are pairs."""

    left: CoverMember
    right: CoverMember

    def __contains__(self, point: Any) -> bool:
        if not isinstance(point, tuple) or len(point) != 2:
            return False
        return point[0] in self.left and point[1] in self.right

    def points(self) -> Optional[FrozenSet[Any]]:
        left = self.left.points()
        right = self.right.points()
        if left is None or right is None:
            return None
        return frozenset(product(left, right))

    def describe(self) -> dict:
        return {"kind": "product", "left": self.left.describe(), "right": self.right.describe()}
