"""
Neighborhood schedules and generator chains used by the lifting constructions.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, FrozenSet, Iterable, List, Sequence, Tuple, Union

from ..errors import InvalidSpaceError, RangeError, ScheduleViolation
from .groups import Group, LatticeGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NeighborhoodSchedule:
    """Strictly decreasing word-ball radii r_0 > r_1 > ...; U_n is the ball of radius r_n."""

    radii: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(r) for r in self.radii)
        if not values:
            raise InvalidSpaceError("A schedule needs at least one radius")
        if any(r <= 0 for r in values):
            raise InvalidSpaceError("Schedule radii must be positive")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise InvalidSpaceError("Schedule radii must be strictly decreasing")
        object.__setattr__(self, "radii", values)

    def __len__(self) -> int:
        return len(self.radii)

    def __getitem__(self, index: int) -> int:
        return self.radii[index]

    @classmethod
    def halving(cls, top_exponent: int) -> "NeighborhoodSchedule":
        """2^k, 2^(k-1), ..., 1."""
        return cls(tuple(2 ** e for e in range(top_exponent, -1, -1)))

    def require_halving(self) -> None:
        """U_{n+1}U_{n+1} ⊆ U_n, i.e. 2r_{n+1} <= r_n.

        Raises:
            ScheduleViolation: Some consecutive pair does not halve
        """
        for n, (a, b) in enumerate(zip(self.radii, self.radii[1:])):
            if 2 * b > a:
                raise ScheduleViolation("(ii)", f"2*r_{n + 1} = {2 * b} exceeds r_{n} = {a}")

    def verify_on_probe(self, group: Group, probe: Iterable[Any], conjugators: Sequence[Iterable[Any]] = ()) -> None:
        """Exact ball arithmetic on probe elements.

        Checks xy ∈ U_n for x, y ∈ U_{n+1} and, when conjugators K_n are
        given, z U_{n+1} z⁻¹ ⊆ U_n for z ∈ K_n.

        Raises:
            ScheduleViolation: A probe element breaks a containment
        """
        points = list(probe)
        for n, (outer, inner) in enumerate(zip(self.radii, self.radii[1:])):
            small = [p for p in points if group.length(p) <= inner]
            for x, y in product(small, small):
                if group.length(group.multiply(x, y)) > outer:
                    raise ScheduleViolation("(ii)", f"{x!r}*{y!r} leaves U_{n}")
            if n < len(conjugators):
                for z in conjugators[n]:
                    for x in small:
                        if group.length(group.conjugate(x, z)) > outer:
                            raise ScheduleViolation("(iii)", f"conjugate of {x!r} by {z!r} leaves U_{n}")


class BoxSet:
    """The box [−h, h]^d in Z^d."""

    def __init__(self, dimension: int, half_width: int):
        self.dimension = dimension
        self.half_width = half_width

    def __contains__(self, point: Any) -> bool:
        return all(abs(c) <= self.half_width for c in point)

    def excess(self, point: Tuple[int, ...]) -> Tuple[int, ...]:
        """Per-coordinate distance from the box."""
        return tuple(max(0, abs(c) - self.half_width) for c in point)

    def points(self) -> List[Tuple[int, ...]]:
        span = range(-self.half_width, self.half_width + 1)
        return list(product(span, repeat=self.dimension))

    def __repr__(self) -> str:
        return f"[-{self.half_width},{self.half_width}]^{self.dimension}"


ChainSet = Union[BoxSet, FrozenSet[Any]]


class GeneratorChain:
    """
    Finite symmetric sets K_0 ⊆ K_1 ⊆ ... with K_n + K_n ⊆ K_{n+1}.

    Raises:
        InvalidSpaceError: A set is not symmetric or the sum closure fails
    """

    def __init__(self, group: LatticeGroup, sets: Sequence[ChainSet]):
        if not sets:
            raise InvalidSpaceError("A generator chain needs at least one set")
        self.group = group
        self.sets: Tuple[ChainSet, ...] = tuple(s if isinstance(s, BoxSet) else frozenset(s) for s in sets)
        for n, current in enumerate(self.sets):
            if isinstance(current, BoxSet):
                continue
            for x in current:
                if group.inverse(x) not in current:
                    raise InvalidSpaceError(f"K_{n} is not symmetric: missing {group.inverse(x)!r}")
        for n, (current, following) in enumerate(zip(self.sets, self.sets[1:])):
            if isinstance(current, BoxSet) and isinstance(following, BoxSet):
                if 2 * current.half_width > following.half_width:
                    raise InvalidSpaceError(f"K_{n} + K_{n} is not inside K_{n + 1}")
                continue
            elements = current.points() if isinstance(current, BoxSet) else current
            for x, y in product(elements, elements):
                if group.multiply(x, y) not in following:
                    raise InvalidSpaceError(f"K_{n} + K_{n} is not inside K_{n + 1}: {x!r}+{y!r}")

    @classmethod
    def boxes(cls, group: LatticeGroup, length: int) -> "GeneratorChain":
        """K_n = [−2^n, 2^n]^d."""
        return cls(group, [BoxSet(group.dimension, 2 ** n) for n in range(length)])

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, index: int) -> ChainSet:
        if not 0 <= index < len(self.sets):
            raise RangeError(f"Generator chain has {len(self.sets)} sets, K_{index} requested")
        return self.sets[index]


class SumNeighborhood:
    """K + O for a chain set K and the closed word ball O of ``radius``."""

    def __init__(self, group: LatticeGroup, chain_set: ChainSet, radius: int):
        self.group = group
        self.chain_set = chain_set
        self.radius = radius

    def __contains__(self, point: Any) -> bool:
        if isinstance(self.chain_set, BoxSet):
            excess = self.chain_set.excess(point)
            distance = sum(excess) if self.group.norm == "l1" else max(excess, default=0)
            return distance <= self.radius
        return any(self.group.distance(point, k) <= self.radius for k in self.chain_set)

    def __repr__(self) -> str:
        return f"{self.chain_set!r}+O({self.radius})"
