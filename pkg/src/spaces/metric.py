"""
Metric multicovers: covers by open ε-balls.
"""

import logging
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Any, Callable, FrozenSet, Iterator, Optional, Sequence

import numpy as np

from ..covers import (
    BallMember,
    FiniteCover,
    FiniteGroundSet,
    LazyCover,
    LazyGroundSet,
    Multicover,
    MulticoveredSpace,
)
from ..errors import InvalidSpaceError
from .groups import LatticeGroup

logger = logging.getLogger(__name__)

DEFAULT_PROBE_BOX = 20


class FiniteMetricSpace:
    """
    Finite (pseudo)metric space.

    Args:
        points: Point labels
        distances: Symmetric matrix of nonnegative rationals with zero diagonal
        name: Label used in reports

    Raises:
        InvalidSpaceError: The matrix is not a pseudometric
    """

    def __init__(self, points: Sequence[Any], distances, name: str = "metric"):
        self.points = tuple(points)
        self.name = name
        n = len(self.points)
        if n == 0:
            raise InvalidSpaceError(f"{name}: metric space needs at least one point")
        if len(set(self.points)) != n:
            raise InvalidSpaceError(f"{name}: duplicate points")
        matrix = np.array([[Fraction(x) for x in row] for row in distances], dtype=object)
        if matrix.shape != (n, n):
            raise InvalidSpaceError(f"{name}: distance matrix must be {n}x{n}")
        if any(matrix[i, i] != 0 for i in range(n)):
            raise InvalidSpaceError(f"{name}: diagonal must be zero")
        if not (matrix == matrix.T).all():
            raise InvalidSpaceError(f"{name}: distances must be symmetric")
        if (matrix < 0).any():
            raise InvalidSpaceError(f"{name}: distances must be nonnegative")
        # d(i, k) <= d(i, j) + d(j, k) for every j.
        through = matrix[:, :, None] + matrix[None, :, :]
        if (matrix[:, None, :] > through).any():
            raise InvalidSpaceError(f"{name}: triangle inequality fails")
        self.matrix = matrix
        self._index = {p: i for i, p in enumerate(self.points)}

    def distance(self, left: Any, right: Any) -> Fraction:
        return self.matrix[self._index[left], self._index[right]]

    def ball(self, center: Any, radius: Fraction) -> FrozenSet[Any]:
        return frozenset(p for p in self.points if self.distance(p, center) < radius)

    @classmethod
    def path(cls, n: int, name: Optional[str] = None) -> "FiniteMetricSpace":
        """0, 1, ..., n-1 with |i - j|."""
        return cls.from_function(range(n), lambda a, b: abs(a - b), name or f"path{n}")

    @classmethod
    def from_function(cls, points: Sequence[Any], fn: Callable[[Any, Any], Any], name: str = "metric") -> "FiniteMetricSpace":
        points = list(points)
        return cls(points, [[fn(a, b) for b in points] for a in points], name)


def max_product_metric(left: FiniteMetricSpace, right: FiniteMetricSpace) -> FiniteMetricSpace:
    """X × Y with ρ((x, y), (x', y')) = max(ρ_X(x, x'), ρ_Y(y, y'))."""
    points = list(product(left.points, right.points))
    return FiniteMetricSpace.from_function(
        points,
        lambda a, b: max(left.distance(a[0], b[0]), right.distance(a[1], b[1])),
        name=f"{left.name}x{right.name}",
    )


def _check_radii(radii: Sequence[Any]) -> list:
    values = [Fraction(r) for r in radii]
    if not values:
        raise InvalidSpaceError("At least one radius is required")
    if any(r <= 0 for r in values):
        raise InvalidSpaceError("Radii must be positive")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise InvalidSpaceError("Radii must be strictly decreasing")
    return values


def metric_multicover(space: FiniteMetricSpace, radii: Sequence[Any]) -> MulticoveredSpace:
    """One cover {B(x, ε) : x ∈ X} per radius, coarsest first."""
    values = _check_radii(radii)
    ground = FiniteGroundSet(space.points)
    covers = []
    for radius in values:
        members = [
            BallMember(center, radius, space.distance, lambda c, r: space.ball(c, r))
            for center in ground.points
        ]
        covers.append(FiniteCover(members, ground, label=f"ball<{radius}"))
    witness = {(i, j): j for i in range(len(covers)) for j in range(i + 1, len(covers))}
    return MulticoveredSpace(ground, Multicover(covers, witness), name=f"{space.name}:metric")


def lattice_ground(group: LatticeGroup, probe_box: int = DEFAULT_PROBE_BOX, probe=None) -> LazyGroundSet:
    """Z^d as a lazy ground set with probe [−M, M]^d unless a probe is given."""
    points = probe if probe is not None else group.box(probe_box)
    return LazyGroundSet(group.contains, group.enumerate, [points], label=group.name)


def lattice_metric_multicover(
    dimension: int,
    radii: Sequence[Any],
    norm: str = "l1",
    probe_box: int = DEFAULT_PROBE_BOX,
    probe=None,
) -> MulticoveredSpace:
    """Open-ball covers of Z^d in the l1 or max norm, coarsest first."""
    group = LatticeGroup(dimension, norm)
    values = _check_radii(radii)
    ground = lattice_ground(group, probe_box, probe)

    def lister(center, radius: Fraction) -> FrozenSet[Any]:
        reach = ceil(radius) - 1
        return frozenset(group.multiply(center, u) for u in group.ball(reach) if group.length(u) < radius)

    covers = []
    for radius in values:
        reach = ceil(radius) - 1

        def factory(center, radius=radius):
            return BallMember(center, radius, group.distance, lister)

        def locator(point, reach=reach) -> Iterator[Any]:
            return (group.multiply(point, u) for u in group.ball(reach))

        covers.append(LazyCover(ground, factory, group.contains, locator, label=f"ball<{radius}"))
    witness = {(i, j): j for i in range(len(covers)) for j in range(i + 1, len(covers))}
    return MulticoveredSpace(ground, Multicover(covers, witness), name=f"{group.name}:{norm}-balls", group=group)
