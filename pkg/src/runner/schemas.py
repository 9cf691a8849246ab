"""
Pydantic schemas for engine settings, space descriptions, run specs and reports.
"""
from enum import Enum
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator


class SolverSettings(BaseModel):
    """Exact solver limits."""
    state_limit: int = Field(
        default=1 << 22, ge=1,
        description="Memo entries allowed before the solver gives up"
    )
    omega_max_k: int = Field(
        default=3, ge=1, le=6,
        description="Largest k accepted for Omega win conditions"
    )


class SearchSettings(BaseModel):
    """Bounds for certificate searches on lazy covers."""
    search_bound: int = Field(
        default=32, ge=1,
        description="Member budget when comparing covers"
    )
    restrict_candidate_limit: int = Field(
        default=4096, ge=1,
        description="Located candidates per point when restricting lazy covers"
    )
    exact_combination_limit: int = Field(
        default=200_000, ge=1,
        description="Combinations tried by exact certificate search on large pools"
    )


class ProbeSettings(BaseModel):
    """Default probes for lazy spaces."""
    probe_box: int = Field(default=20, ge=0, le=1000, description="Lattice probe box half width")
    word_length: int = Field(default=5, ge=0, le=12, description="Free group probe word length")


class CorpusSettings(BaseModel):
    """Limits on enumerated small instances."""
    max_points: int = Field(default=6, ge=1, le=6)
    max_covers: int = Field(default=3, ge=1, le=3)
    max_members: int = Field(default=6, ge=1, le=6)
    max_horizon: int = Field(default=4, ge=1, le=4)
    workers: int = Field(default=4, ge=1, le=64, description="Threads used by corpus sweeps")
    max_enumeration: int = Field(
        default=2_000_000, ge=1,
        description="Raw multicover candidates allowed before an enumeration is refused"
    )


class LoggingSettings(BaseModel):
    level: str = Field(default="INFO")
    format: Literal["json", "text"] = "text"
    file: Optional[str] = None

    @field_validator('level')
    @classmethod
    def validate_level(cls, v: str) -> str:
        """Accept the standard level names in any case."""
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return level


class EngineSettings(BaseModel):
    """Combined engine settings from config/engine.yml."""
    solver: SolverSettings = Field(default_factory=SolverSettings)
    search: SearchSettings = Field(default_factory=SearchSettings)
    probes: ProbeSettings = Field(default_factory=ProbeSettings)
    corpus: CorpusSettings = Field(default_factory=CorpusSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


class ExplicitSpaceSpec(BaseModel):
    """Finite ground set with explicit member lists."""
    kind: Literal["explicit"] = "explicit"
    name: str = "explicit"
    points: List[Any] = Field(..., min_length=1)
    covers: List[List[List[Any]]] = Field(..., min_length=1, description="Per cover, its members as point lists")

    @model_validator(mode="after")
    def validate_members(self) -> "ExplicitSpaceSpec":
        """Members must be nonempty and stay inside the ground set."""
        known = {_hashable(p) for p in self.points}
        for i, cover in enumerate(self.covers):
            if not cover:
                raise ValueError(f"cover {i} has no members")
            for j, member in enumerate(cover):
                if not member:
                    raise ValueError(f"cover {i} member {j} is empty")
                for point in member:
                    if _hashable(point) not in known:
                        raise ValueError(f"cover {i} member {j} uses unknown point {point!r}")
        return self


class MetricSpaceSpec(BaseModel):
    """Finite metric space with open-ball covers."""
    kind: Literal["metric"] = "metric"
    name: str = "metric"
    points: List[Any] = Field(..., min_length=1)
    distances: List[List[Union[int, str]]] = Field(..., description="Rationals as integers or 'p/q' strings")
    radii: List[Union[int, str]] = Field(..., min_length=1)


class LatticeMetricSpec(BaseModel):
    """Z^d with open-ball covers."""
    kind: Literal["lattice-metric"] = "lattice-metric"
    dimension: int = Field(default=1, ge=1, le=4)
    norm: Literal["l1", "max"] = "l1"
    radii: List[Union[int, str]] = Field(..., min_length=1)
    probe_box: Optional[int] = Field(default=None, ge=0)


class GroupDescriptor(BaseModel):
    type: Literal["cyclic", "table", "free", "lattice"]
    order: Optional[int] = Field(default=None, ge=1)
    table: Optional[List[List[int]]] = None
    generators: List[Any] = Field(default_factory=lambda: [1])
    rank: Optional[int] = Field(default=None, ge=0, le=4)
    dimension: Optional[int] = Field(default=None, ge=1, le=4)
    norm: Literal["l1", "max"] = "l1"

    @model_validator(mode="after")
    def validate_shape(self) -> "GroupDescriptor":
        """Each group type needs its own size field."""
        required = {"cyclic": "order", "table": "table", "free": "rank", "lattice": "dimension"}[self.type]
        if getattr(self, required) is None:
            raise ValueError(f"{self.type} groups need '{required}'")
        return self


class GroupSpaceSpec(BaseModel):
    """A group with one translate cover per word-ball radius."""
    kind: Literal["group"] = "group"
    group: GroupDescriptor
    side: Literal["L", "R", "Join", "Meet"] = "L"
    radii: List[int] = Field(..., min_length=1)
    probe_box: Optional[int] = Field(default=None, ge=0)
    word_length: Optional[int] = Field(default=None, ge=0)

    @field_validator('radii')
    @classmethod
    def validate_radii(cls, v: List[int]) -> List[int]:
        if any(b >= a for a, b in zip(v, v[1:])) or any(r < 0 for r in v):
            raise ValueError("radii must be nonnegative and strictly decreasing")
        return v


class ProductSpaceSpec(BaseModel):
    kind: Literal["product"] = "product"
    left: "SpaceSpec"
    right: "SpaceSpec"


SpaceSpec = Annotated[
    Union[ExplicitSpaceSpec, MetricSpaceSpec, LatticeMetricSpec, GroupSpaceSpec, ProductSpaceSpec],
    Field(discriminator="kind"),
]
ProductSpaceSpec.model_rebuild()


class WinSpec(BaseModel):
    kind: Literal["cover", "omega", "gamma"] = "cover"
    k: int = Field(default=1, ge=1)
    start: int = Field(default=0, ge=0)
    miss_budget: int = Field(default=0, ge=0)
    probe: Optional[List[Any]] = None


class GameSpec(BaseModel):
    """Horizon, budgets and win condition; ``budget`` applies to every round."""
    horizon: int = Field(..., ge=1, le=12)
    budget: Optional[int] = Field(default=1, ge=0)
    budgets: Optional[List[Optional[int]]] = None
    win: WinSpec = Field(default_factory=WinSpec)

    @model_validator(mode="after")
    def validate_budgets(self) -> "GameSpec":
        if self.budgets is not None and len(self.budgets) != self.horizon:
            raise ValueError(f"budgets needs {self.horizon} entries, got {len(self.budgets)}")
        return self


class LiftingSpec(BaseModel):
    """Generator chain, neighborhood schedule and probe of an abelian lifting run."""
    witness: Literal["scheepers", "hurewicz"] = "scheepers"
    half_width: int = Field(default=16, ge=1, le=64, description="Half width a of the generating box")
    chain_length: int = Field(default=13, ge=1, le=20, description="Boxes K_n = [-2^n, 2^n]^d")
    top_exponent: int = Field(default=6, ge=0, le=20, description="Radii 2^top, ..., 1")
    probe_box: Optional[int] = Field(default=None, ge=0, le=100)
    k: int = Field(default=3, ge=1, le=4)


class StrategySpec(BaseModel):
    kind: Literal["greedy", "cover-all", "empty", "table"] = "greedy"
    rows: List[Dict[str, Any]] = Field(default_factory=list, description="Table rows: {history, members}")


class Command(str, Enum):
    SOLVE = "solve"
    PLAY = "play"
    CHECK_PRINCIPLE = "check-principle"
    VERIFY_COMBINATOR = "verify-combinator"
    COMPARE_COVERS = "compare-covers"
    MAKE_SPACE = "make-space"


class RunSpec(BaseModel):
    """One engine invocation, validated before anything runs."""
    command: Command
    space: SpaceSpec
    game: Optional[GameSpec] = None
    other: Optional[SpaceSpec] = Field(default=None, description="Second space for compare-covers and product")
    principle: Optional[Literal["winning", "menger", "scheepers", "hurewicz", "totally-bounded", "omega-bounded"]] = None
    combinator: Optional[
        Literal[
            "union",
            "gamma-upgrade",
            "product",
            "pullback",
            "sigma-product",
            "hurewicz-product",
            "totally-bounded",
            "abelian-lifting",
        ]
    ] = None
    pieces: Optional[List[List[Any]]] = None
    lifting: Optional[LiftingSpec] = None
    player_one: Optional[List[int]] = None
    strategy: StrategySpec = Field(default_factory=StrategySpec)
    oracle: bool = False
    seed: int = 0

    @model_validator(mode="after")
    def validate_command(self) -> "RunSpec":
        """Each command needs its own inputs."""
        needs_game = {Command.SOLVE, Command.PLAY, Command.CHECK_PRINCIPLE, Command.VERIFY_COMBINATOR}
        if self.combinator == "abelian-lifting":
            needs_game.discard(Command.VERIFY_COMBINATOR)
        if self.command in needs_game and self.game is None:
            raise ValueError(f"{self.command.value} needs a 'game' block")
        if self.command is Command.PLAY and not self.player_one:
            raise ValueError("play needs 'player_one' cover indices")
        if self.command is Command.CHECK_PRINCIPLE and self.principle is None:
            raise ValueError("check-principle needs 'principle'")
        if self.command is Command.VERIFY_COMBINATOR:
            if self.combinator is None:
                raise ValueError("verify-combinator needs 'combinator'")
            if self.combinator in ("union", "sigma-product") and not self.pieces:
                raise ValueError(f"{self.combinator} needs 'pieces'")
            if self.combinator in ("product", "hurewicz-product") and self.other is None:
                raise ValueError(f"{self.combinator} needs 'other'")
        if self.command is Command.COMPARE_COVERS and self.other is None:
            raise ValueError("compare-covers needs 'other'")
        return self


class Verdict(str, Enum):
    II_WINS = "II-wins"
    I_WINS = "I-wins"
    VERIFIED = "Verified-on-probe"
    YES = "Yes"
    NO = "No"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


EXIT_CODES = {
    Verdict.II_WINS: 0,
    Verdict.VERIFIED: 0,
    Verdict.YES: 0,
    Verdict.I_WINS: 1,
    Verdict.NO: 1,
    Verdict.REFUTED: 1,
    Verdict.UNKNOWN: 2,
}


class Report(BaseModel):
    """Machine-readable result of one run."""
    command: str
    verdict: Verdict
    fingerprint: str
    details: Dict[str, Any] = Field(default_factory=dict)
    transcripts: List[Dict[str, Any]] = Field(default_factory=list)
    timings: Dict[str, int] = Field(default_factory=dict)

    @computed_field
    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def body(self) -> Dict[str, Any]:
        """Everything but timings, for reproducibility checks."""
        return self.model_dump(mode="json", exclude={"timings"})


def _hashable(point: Any) -> Any:
    if isinstance(point, list):
        return tuple(_hashable(p) for p in point)
    return point
