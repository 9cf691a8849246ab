"""
Witness sequences: II's bounded sets detached from a game.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import product
from typing import Any, Container, FrozenSet, List, Optional, Sequence, Tuple

from ..covers import (
    Certificate,
    MulticoveredSpace,
    covered_points,
    is_cover,
    is_gamma_cover,
    is_omega_cover,
    is_proper_omega_cover,
)
from ..covers.ground import as_point_list


class WitnessClass(str, Enum):
    COVER = "cover"
    OMEGA = "omega"
    GAMMA = "gamma"
    PROPER_OMEGA = "proper-omega"
    NONE = "none"


@dataclass(frozen=True)
class WitnessSequence:
    """
    A sequence of bounded sets B_0, B_1, ... with a claimed cover class.

    Items are certificates on ``space`` or set-like containers (used for
    constructed sets such as K + O that are too large to list). The claim
    is checked on demand by ``check``.

    Attributes:
        items: Per-round certificates or containers
        klass: Claimed class of the family
        space: Space the certificates refer to
        k: Subset size for Omega and ProperOmega
        start: First round counted for Gamma
        miss_budget: Allowed misses for Gamma
        min_occurrences: Engulfing members required for ProperOmega
    """

    items: Tuple[Any, ...]
    klass: WitnessClass
    space: Optional[MulticoveredSpace] = field(default=None, compare=False)
    k: int = 1
    start: int = 0
    miss_budget: int = 0
    min_occurrences: int = 2

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __len__(self) -> int:
        return len(self.items)

    @property
    def certificates(self) -> Tuple[Certificate, ...]:
        return tuple(item for item in self.items if isinstance(item, Certificate))

    def sets(self, probe: Sequence[Any]) -> List[Container]:
        """Items as containers; certificates become their probe traces."""
        result = []
        for item in self.items:
            if isinstance(item, Certificate):
                if self.space is None:
                    raise ValueError("Certificate items need the witness space")
                result.append(covered_points(self.space.cover(item.cover_index), item, probe))
            else:
                result.append(item)
        return result

    def probe_points(self, probe=None) -> List[Any]:
        if self.space is None:
            if probe is None:
                raise ValueError("A probe is required for witnesses without a space")
            return list(probe)
        return as_point_list(probe, self.space.ground)

    def check(self, probe=None) -> bool:
        """Apply the class predicate on the probe."""
        points = self.probe_points(probe)
        family = self.sets(points)
        if self.klass is WitnessClass.NONE:
            return False
        if not family:
            return not points
        if self.klass is WitnessClass.COVER:
            return is_cover(family, points)
        if self.klass is WitnessClass.OMEGA:
            return is_omega_cover(family, points, self.k)
        if self.klass is WitnessClass.PROPER_OMEGA:
            return is_proper_omega_cover(family, points, self.k, self.min_occurrences)
        if self.start >= len(family):
            return False
        return is_gamma_cover(family, points, self.start, self.miss_budget)

    def with_class(self, klass: WitnessClass, **params) -> "WitnessSequence":
        return replace(self, klass=klass, **params)

    def to_dict(self) -> dict:
        return {
            "class": self.klass.value,
            "k": self.k,
            "start": self.start,
            "miss_budget": self.miss_budget,
            "min_occurrences": self.min_occurrences,
            "items": [item.to_dict() if isinstance(item, Certificate) else repr(item) for item in self.items],
        }


@dataclass(frozen=True)
class PowerWitness:
    """Per-round coordinate certificates for the n-th power space.

    Round k holds n certificates whose member unions form the rectangle
    B_{k,1} × ... × B_{k,n}.
    """

    exponent: int
    rounds: Tuple[Tuple[Certificate, ...], ...]
    space: MulticoveredSpace = field(compare=False)

    def round_sets(self, probe: Sequence[Any]) -> List[Tuple[FrozenSet[Any], ...]]:
        return [
            tuple(covered_points(self.space.cover(c.cover_index), c, probe) for c in certificates)
            for certificates in self.rounds
        ]

    def covers_power(self, probe: Sequence[Any], from_round: int = 0) -> bool:
        """Every n-tuple of probe points lies in some round's rectangle."""
        rectangles = self.round_sets(probe)[from_round:]
        for point in product(probe, repeat=self.exponent):
            if not any(all(x in side for x, side in zip(point, rect)) for rect in rectangles):
                return False
        return True


@dataclass(frozen=True)
class PieceDecomposition:
    """Pieces A_n whose union should contain the probe."""

    pieces: Tuple[FrozenSet[Any], ...]
    probe: Tuple[Any, ...] = ()

    def covers_probe(self) -> bool:
        union = frozenset().union(*self.pieces) if self.pieces else frozenset()
        return all(p in union for p in self.probe)

    def to_dict(self) -> dict:
        return {"pieces": [len(piece) for piece in self.pieces], "covers_probe": self.covers_probe()}
