"""
Game configuration: horizon, per-round budgets and the win condition.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, FrozenSet, Optional, Sequence, Tuple

from ..covers import MulticoveredSpace, is_cover, is_gamma_cover, is_omega_cover
from ..covers.ground import as_point_list
from ..errors import InvalidSpaceError


class WinKind(str, Enum):
    COVER = "cover"
    OMEGA = "omega"
    GAMMA = "gamma"


@dataclass(frozen=True)
class WinCondition:
    """
    What II's played sets must form at the horizon.

    Attributes:
        kind: Cover, Omega(k) or Gamma(start, miss_budget)
        probe: Points the condition quantifies over; None means the
            ground set's probe
        k: Subset size for Omega
        start: First round counted by Gamma
        miss_budget: Rounds a point may miss under Gamma
    """

    kind: WinKind = WinKind.COVER
    probe: Optional[FrozenSet[Any]] = None
    k: int = 1
    start: int = 0
    miss_budget: int = 0

    @classmethod
    def cover(cls, probe=None) -> "WinCondition":
        return cls(WinKind.COVER, _frozen(probe))

    @classmethod
    def omega(cls, k: int, probe=None) -> "WinCondition":
        return cls(WinKind.OMEGA, _frozen(probe), k=k)

    @classmethod
    def gamma(cls, start: int = 0, miss_budget: int = 0, probe=None) -> "WinCondition":
        return cls(WinKind.GAMMA, _frozen(probe), start=start, miss_budget=miss_budget)

    def as_kind(self, kind: WinKind) -> "WinCondition":
        return replace(self, kind=kind)

    def probe_points(self, space: MulticoveredSpace) -> Tuple[Any, ...]:
        return tuple(as_point_list(self.probe, space.ground))

    def holds(self, played: Sequence[Any], probe: Sequence[Any]) -> bool:
        """Apply the condition to the sets II played, in round order."""
        if self.kind is WinKind.COVER:
            return is_cover(played, probe)
        if self.kind is WinKind.OMEGA:
            return is_omega_cover(played, probe, self.k)
        return is_gamma_cover(played, probe, self.start, self.miss_budget)

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value}
        if self.kind is WinKind.OMEGA:
            data["k"] = self.k
        if self.kind is WinKind.GAMMA:
            data.update(start=self.start, miss_budget=self.miss_budget)
        return data


def _frozen(probe) -> Optional[FrozenSet[Any]]:
    return frozenset(probe) if probe is not None else None


@dataclass(frozen=True)
class GameConfig:
    """
    A finite-horizon budgeted CB game.

    ``budgets[n]`` caps the certificate size in round n; None means any
    finite number of members.
    """

    horizon: int
    budgets: Tuple[Optional[int], ...]
    win: WinCondition = WinCondition()

    def __post_init__(self):
        object.__setattr__(self, "budgets", tuple(self.budgets))

    @classmethod
    def uniform(cls, horizon: int, budget: Optional[int], win: Optional[WinCondition] = None) -> "GameConfig":
        return cls(horizon, (budget,) * horizon, win or WinCondition())

    def with_win(self, win: WinCondition) -> "GameConfig":
        return replace(self, win=win)

    def validate(self, space: MulticoveredSpace) -> Tuple[Any, ...]:
        """Check the configuration against a space and return the probe.

        Raises:
            InvalidSpaceError: Horizon, budgets or win parameters are inconsistent
        """
        if self.horizon < 1:
            raise InvalidSpaceError(f"Horizon must be positive, got {self.horizon}")
        if len(self.budgets) != self.horizon:
            raise InvalidSpaceError(f"Expected {self.horizon} budgets, got {len(self.budgets)}")
        for budget in self.budgets:
            if budget is not None and budget < 0:
                raise InvalidSpaceError(f"Budgets must be nonnegative, got {budget}")
        probe = self.win.probe_points(space)
        if not probe:
            raise InvalidSpaceError("Win condition probe is empty")
        if self.win.kind is WinKind.OMEGA and self.win.k < 1:
            raise InvalidSpaceError(f"Omega condition needs k >= 1, got {self.win.k}")
        if self.win.kind is WinKind.GAMMA:
            if not 0 <= self.win.start < self.horizon:
                raise InvalidSpaceError(f"Gamma start round {self.win.start} outside horizon {self.horizon}")
            if self.win.miss_budget < 0:
                raise InvalidSpaceError("Gamma miss budget must be nonnegative")
        return probe

    def to_dict(self) -> dict:
        return {"horizon": self.horizon, "budgets": list(self.budgets), "win": self.win.to_dict()}
