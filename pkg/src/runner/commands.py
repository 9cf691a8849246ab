"""
Run one validated RunSpec and produce its Report.

Each verb delegates to the engine packages; this module only wires
descriptions to spaces, games and strategies and shapes the results.
"""
import logging
import time
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..combinators import (
    WitnessClass,
    WitnessSequence,
    default_projection_assign,
    gamma_upgrade,
    hurewicz_product_witness,
    product_strategy,
    pullback_strategy,
    sigma_bounded_product_strategy,
    tails_contain_pieces,
    totally_bounded_decomposition,
    union_strategy,
)
from ..covers import (
    Certificate,
    MulticoveredSpace,
    TriBool,
    equivalent_multicovers,
    format_point,
    parse_point,
    point_key,
    product_space,
    projection_map,
    restrict,
)
from ..covers.tribool import Scope
from ..errors import CertificateError, SchemaError, StateSpaceExceeded
from ..games import (
    GameConfig,
    GreedyStrategy,
    Player,
    Principle,
    Strategy,
    TableStrategy,
    WinCondition,
    WinKind,
    check_principle,
    cover_all_strategy,
    empty_strategy,
    evaluate_strategy,
    play_game,
    solve,
)
from ..games.solver import SolveResult
from ..spaces import AbelianLifting, GeneratorChain, LatticeGroup, NeighborhoodSchedule
from .loader import build_space, explicit_form, fingerprint, parse_points, spec_fingerprint
from .schemas import Command, EngineSettings, GameSpec, LiftingSpec, Report, RunSpec, StrategySpec, Verdict

logger = logging.getLogger(__name__)

# Exhaustive self-checks and policy dumps stay below this many Player I sequences.
SELF_CHECK_PLAY_LIMIT = 1 << 16


def run(spec: RunSpec, settings: Optional[EngineSettings] = None) -> Report:
    """
    Execute a run description.

    Args:
        spec: Validated run description
        settings: Engine settings; defaults when omitted

    Returns:
        Report whose body depends only on the description and the settings

    Raises:
        SchemaError: The inputs are well-formed but do not fit the command
        MulticoverError: The engine rejected the space or ran out of budget
    """
    settings = settings or EngineSettings()
    started = time.monotonic()
    instance = spec_fingerprint(spec)
    handler = COMMANDS[spec.command]
    report = handler(spec, settings, instance)
    duration_ms = int((time.monotonic() - started) * 1000)
    report.timings["total_ms"] = duration_ms
    logger.info(
        f"{spec.command.value}: {report.verdict.value}",
        extra={"fingerprint": instance, "duration_ms": duration_ms},
    )
    return report


def game_config(game: GameSpec) -> GameConfig:
    """Translate a game block into a GameConfig."""
    budgets = game.budgets if game.budgets is not None else [game.budget] * game.horizon
    win = WinCondition(
        kind=WinKind(game.win.kind),
        probe=frozenset(parse_points(game.win.probe)) if game.win.probe is not None else None,
        k=game.win.k,
        start=game.win.start,
        miss_budget=game.win.miss_budget,
    )
    return GameConfig(game.horizon, tuple(budgets), win)


def finite_view(space: MulticoveredSpace, config: GameConfig, settings: EngineSettings) -> MulticoveredSpace:
    """The space itself when finite, else its restriction to the game's probe."""
    if space.is_finite:
        return space
    probe = config.win.probe_points(space)
    logger.debug(f"Restricting {space.name!r} to {len(probe)} probe points")
    return restrict(space, probe, settings.search.restrict_candidate_limit)


def build_strategy(spec: StrategySpec, space: MulticoveredSpace, config: GameConfig) -> Strategy:
    probe = config.win.probe_points(space)
    if spec.kind == "greedy":
        return GreedyStrategy(space, config.budgets, probe)
    if spec.kind == "cover-all":
        return cover_all_strategy(space, probe)
    if spec.kind == "empty":
        return empty_strategy()
    table = {}
    for n, row in enumerate(spec.rows):
        try:
            history = tuple(row["history"])
            members = tuple(parse_point(m) for m in row.get("members", []))
        except (KeyError, TypeError):
            raise SchemaError("rows need 'history' and 'members'", f"strategy.rows.{n}") from None
        if not history:
            raise SchemaError("history must be nonempty", f"strategy.rows.{n}.history")
        support = row.get("support")
        table[history] = Certificate(
            history[-1], members, frozenset(parse_points(support)) if support is not None else None
        )
    return TableStrategy(table, config.budgets)


def jsonable(value: Any) -> Any:
    """Evidence and certificates as plain JSON values."""
    if isinstance(value, Certificate):
        return value.to_dict()
    if isinstance(value, TriBool):
        return {"verdict": value.verdict.value, "scope": value.scope.value, "evidence": jsonable(value.evidence)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(format_point(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return [format_point(p) for p in sorted(value, key=point_key)]
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return value


def tribool_verdict(result: TriBool) -> Verdict:
    if result.is_yes:
        return Verdict.YES if result.scope is Scope.EXACT else Verdict.VERIFIED
    if result.is_no:
        return Verdict.NO
    return Verdict.UNKNOWN


def _plays(space: MulticoveredSpace, horizon: int) -> int:
    return len(space.multicover) ** horizon


def _solve(space: MulticoveredSpace, config: GameConfig, settings: EngineSettings) -> SolveResult:
    return solve(space, config, settings.solver.state_limit, settings.solver.omega_max_k)


def run_solve(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Solve the game exactly; an I win comes with a replayable refutation."""
    config = game_config(spec.game)
    built = build_space(spec.space, settings.probes)
    space = finite_view(built, config, settings)
    result = _solve(space, config, settings)
    details: Dict[str, Any] = {
        "space": space.name,
        "game": config.to_dict(),
        "states_explored": result.states_explored,
        "scope": "exact" if built.is_finite else "probe",
    }
    if result.winner is Player.ONE:
        probe = config.win.probe_points(space)
        transcript = play_game(space, config, result.policy, GreedyStrategy(space, config.budgets, probe))
        details["refutation"] = list(transcript.covers)
        details["replay"] = {"command": "play", "player_one": list(transcript.covers), "strategy": "greedy"}
        return Report(
            command=spec.command.value,
            verdict=Verdict.I_WINS,
            fingerprint=instance,
            details=details,
            transcripts=[transcript.to_dict()],
        )

    if _plays(space, config.horizon) <= SELF_CHECK_PLAY_LIMIT:
        worst = evaluate_strategy(space, config, result.policy)
        details["policy"] = result.policy.to_rows()
        details["self_check"] = worst.to_dict()
        if worst.winner is not Player.TWO:
            logger.error(f"Solver policy lost on {worst.refutation}", extra={"fingerprint": instance})
            return Report(command=spec.command.value, verdict=Verdict.UNKNOWN, fingerprint=instance, details=details)
    else:
        details["self_check"] = "skipped"
    return Report(command=spec.command.value, verdict=Verdict.II_WINS, fingerprint=instance, details=details)


def run_play(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Replay a fixed Player I sequence against a named strategy."""
    config = game_config(spec.game)
    if len(spec.player_one) < config.horizon:
        raise SchemaError(f"needs at least {config.horizon} cover indices", "player_one")
    space = build_space(spec.space, settings.probes)
    strategy = build_strategy(spec.strategy, space, config)
    transcript = play_game(space, config, spec.player_one, strategy)
    verdict = Verdict.II_WINS if transcript.winner is Player.TWO else Verdict.I_WINS
    details = {"space": space.name, "game": config.to_dict(), "strategy": strategy.name}
    return Report(
        command=spec.command.value,
        verdict=verdict,
        fingerprint=instance,
        details=details,
        transcripts=[transcript.to_dict()],
    )


def run_check_principle(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    config = game_config(spec.game)
    principle = Principle(spec.principle)
    built = build_space(spec.space, settings.probes)
    space = built
    if principle not in (Principle.TOTALLY_BOUNDED, Principle.OMEGA_BOUNDED):
        space = finite_view(built, config, settings)
    result = check_principle(
        space,
        config,
        principle,
        state_limit=settings.solver.state_limit,
        omega_max_k=settings.solver.omega_max_k,
        exact_limit=settings.search.exact_combination_limit,
    )
    if not built.is_finite:
        result = result.on_probe()
    details = {"space": space.name, "principle": principle.value, "result": jsonable(result)}
    return Report(command=spec.command.value, verdict=tribool_verdict(result), fingerprint=instance, details=details)


def _refuted(spec: RunSpec, instance: str, details: Dict[str, Any], worst) -> Report:
    details["refutation"] = list(worst.refutation)
    return Report(
        command=spec.command.value,
        verdict=Verdict.REFUTED,
        fingerprint=instance,
        details=details,
        transcripts=[worst.transcript.to_dict()],
    )


def _precondition_failed(spec: RunSpec, instance: str, details: Dict[str, Any], reason: str) -> Report:
    logger.warning(f"{spec.combinator}: precondition failed, {reason}", extra={"fingerprint": instance})
    details["precondition"] = reason
    return Report(command=spec.command.value, verdict=Verdict.UNKNOWN, fingerprint=instance, details=details)


def _oracle(space: MulticoveredSpace, config: GameConfig, settings: EngineSettings) -> str:
    """Exact winner of the combined game, for cross-checking a combinator."""
    try:
        return _solve(space, config, settings).winner.value
    except StateSpaceExceeded:
        return "skipped"


def verify_union(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Solve each piece from its starting round, then replay the union strategy."""
    config = game_config(spec.game)
    if config.win.kind is not WinKind.COVER:
        raise SchemaError("the union combinator works with cover games", "game.win.kind")
    space = finite_view(build_space(spec.space, settings.probes), config, settings)
    pieces = [parse_points(piece) for piece in spec.pieces]
    if len(pieces) > config.horizon:
        raise SchemaError(f"at most {config.horizon} pieces fit the horizon", "pieces")
    covered = set().union(*(set(piece) for piece in pieces))
    probe = set(config.win.probe_points(space))
    if not probe <= covered:
        raise SchemaError("pieces do not cover the game probe", "pieces")
    details: Dict[str, Any] = {"space": space.name, "pieces": len(pieces)}

    restricted: List[MulticoveredSpace] = []
    policies: List[Strategy] = []
    horizons: List[int] = []
    for k, piece in enumerate(pieces):
        part = restrict(space, piece, settings.search.restrict_candidate_limit)
        horizon = config.horizon - k
        piece_config = GameConfig(horizon, config.budgets[k:], WinCondition.cover())
        result = _solve(part, piece_config, settings)
        if result.winner is not Player.TWO:
            return _precondition_failed(spec, instance, details, f"piece {k} is an I win at horizon {horizon}")
        restricted.append(part)
        policies.append(result.policy)
        horizons.append(horizon)

    union = union_strategy(policies, restricted, horizons)
    union_config = GameConfig(config.horizon, union.schedule(config.horizon), WinCondition.cover(probe))
    details["budgets"] = list(union_config.budgets)
    worst = evaluate_strategy(space, union_config, union)
    details["plays"] = worst.plays
    if spec.oracle:
        details["oracle"] = _oracle(space, union_config, settings)
    if worst.winner is Player.ONE:
        return _refuted(spec, instance, details, worst)
    return Report(command=spec.command.value, verdict=Verdict.VERIFIED, fingerprint=instance, details=details)


def _upgraded_policy(space: MulticoveredSpace, horizon: int, budgets: Sequence[Optional[int]], max_horizon: int, settings):
    """The exact policy for the cover game of ``horizon`` rounds, γ-upgraded; None for an I win."""
    result = _solve(space, GameConfig(horizon, tuple(budgets), WinCondition.cover()), settings)
    if result.winner is not Player.TWO:
        return None
    return gamma_upgrade(result.policy, max_horizon=max_horizon, inner_horizon=horizon)


def verify_gamma_upgrade(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Θ winning L rounds gives Θ₁ under which no point misses more than L - 1 rounds."""
    config = game_config(spec.game)
    space = finite_view(build_space(spec.space, settings.probes), config, settings)
    horizon = config.horizon
    extended = horizon + 2
    details: Dict[str, Any] = {"space": space.name, "inner_horizon": horizon, "horizon": extended}
    upgraded = _upgraded_policy(space, horizon, config.budgets, extended, settings)
    if upgraded is None:
        return _precondition_failed(spec, instance, details, f"the cover game is an I win at horizon {horizon}")
    win = WinCondition.gamma(0, horizon - 1, config.win.probe)
    upgraded_config = GameConfig(extended, upgraded.schedule(extended), win)
    details["budgets"] = list(upgraded_config.budgets)
    worst = evaluate_strategy(space, upgraded_config, upgraded)
    details["plays"] = worst.plays
    if spec.oracle:
        details["oracle"] = _oracle(space, upgraded_config, settings)
    if worst.winner is Player.ONE:
        return _refuted(spec, instance, details, worst)
    return Report(command=spec.command.value, verdict=Verdict.VERIFIED, fingerprint=instance, details=details)


def verify_product(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """γ-upgrade both factor policies and replay their product for 2L - 1 rounds."""
    config = game_config(spec.game)
    horizon = config.horizon
    combined = 2 * horizon - 1
    if combined > 12:
        raise SchemaError("product games need horizon at most 6", "game.horizon")
    left = finite_view(build_space(spec.space, settings.probes), config.with_win(WinCondition.cover()), settings)
    right = finite_view(build_space(spec.other, settings.probes), config.with_win(WinCondition.cover()), settings)
    details: Dict[str, Any] = {"left": left.name, "right": right.name, "horizon": combined}
    factors = []
    for name, factor in (("left", left), ("right", right)):
        upgraded = _upgraded_policy(factor, horizon, config.budgets, combined, settings)
        if upgraded is None:
            return _precondition_failed(spec, instance, details, f"the {name} factor is an I win at horizon {horizon}")
        factors.append(upgraded)

    space = product_space(left, right)
    strategy = product_strategy(space, factors[0], factors[1])
    product_config = GameConfig(combined, strategy.schedule(combined), WinCondition.cover())
    details["budgets"] = list(product_config.budgets)
    worst = evaluate_strategy(space, product_config, strategy)
    details["plays"] = worst.plays
    if spec.oracle:
        details["oracle"] = _oracle(space, product_config, settings)
    if worst.winner is Player.ONE:
        return _refuted(spec, instance, details, worst)
    return Report(command=spec.command.value, verdict=Verdict.VERIFIED, fingerprint=instance, details=details)


def _finite_product(spec: RunSpec, settings: EngineSettings) -> MulticoveredSpace:
    space = build_space(spec.space, settings.probes)
    if space.factors is None:
        raise SchemaError(f"{spec.combinator} needs a product space", "space.kind")
    if not space.is_finite:
        raise SchemaError(f"{spec.combinator} works on finite products", "space")
    return space


def _player_one(spec: RunSpec, horizon: int) -> List[int]:
    sequence = list(spec.player_one or [0] * horizon)
    if len(sequence) < horizon:
        raise SchemaError(f"needs at least {horizon} cover indices", "player_one")
    return sequence[:horizon]


def _game_witness(
    space: MulticoveredSpace, config: GameConfig, sequence: Sequence[int], settings: EngineSettings
) -> Optional[WitnessSequence]:
    """II's exact policy replayed on one sequence, as a γ-witness; None for an I win."""
    result = _solve(space, config, settings)
    if result.winner is not Player.TWO:
        return None
    transcript = play_game(space, config, sequence, result.policy)
    certificates = tuple(r.certificate for r in transcript.rounds)
    return WitnessSequence(
        certificates, WitnessClass.GAMMA, space, start=config.win.start, miss_budget=config.win.miss_budget
    )


def _witness_report(spec: RunSpec, instance: str, details: Dict[str, Any], witness: WitnessSequence) -> Report:
    details["witness"] = jsonable(witness.to_dict())
    verdict = Verdict.VERIFIED if witness.check() else Verdict.REFUTED
    return Report(command=spec.command.value, verdict=verdict, fingerprint=instance, details=details)


def verify_pullback(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Pull II's policy on X back along the projection X × Y -> X."""
    config = game_config(spec.game)
    if config.win.kind is not WinKind.COVER:
        raise SchemaError("the pullback combinator works with cover games", "game.win.kind")
    space = _finite_product(spec, settings)
    left = space.factors[0]
    details: Dict[str, Any] = {"space": space.name, "target": left.name}
    mapping = projection_map(space, default_projection_assign(space))
    perfect = mapping.verify(settings.search.search_bound)
    details["perfect"] = jsonable(perfect)
    if not perfect.is_yes:
        return _precondition_failed(spec, instance, details, "the projection is not perfect")
    result = _solve(left, config, settings)
    if result.winner is not Player.TWO:
        return _precondition_failed(spec, instance, details, f"{left.name!r} is an I win at horizon {config.horizon}")

    pulled = pullback_strategy(mapping, result.policy)
    pulled_config = GameConfig(config.horizon, pulled.schedule(config.horizon), WinCondition.cover())
    worst = evaluate_strategy(space, pulled_config, pulled)
    details["plays"] = worst.plays
    if spec.oracle:
        details["oracle"] = _oracle(space, pulled_config, settings)
    if worst.winner is Player.ONE:
        return _refuted(spec, instance, details, worst)
    return Report(command=spec.command.value, verdict=Verdict.VERIFIED, fingerprint=instance, details=details)


def verify_sigma_product(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Pull II's policy on X back to X × K_n, piece n from round n, for L + |pieces| - 1 rounds."""
    config = game_config(spec.game)
    if config.win.kind is not WinKind.COVER:
        raise SchemaError("the sigma-product combinator works with cover games", "game.win.kind")
    space = _finite_product(spec, settings)
    left, right = space.factors
    pieces = [frozenset(parse_points(piece)) for piece in spec.pieces]
    if not set(right.probe_points()) <= pieces[-1]:
        raise SchemaError("the last piece must hold every point of the right factor", "pieces")
    combined = config.horizon + len(pieces) - 1
    if combined > 12:
        raise SchemaError("horizon plus pieces must stay within 13", "pieces")
    details: Dict[str, Any] = {"space": space.name, "pieces": len(pieces), "horizon": combined}
    result = _solve(left, config, settings)
    if result.winner is not Player.TWO:
        return _precondition_failed(spec, instance, details, f"{left.name!r} is an I win at horizon {config.horizon}")

    try:
        strategy = sigma_bounded_product_strategy(space, result.policy, pieces, horizons=[config.horizon] * len(pieces))
    except ValueError as e:
        raise SchemaError(str(e), "pieces") from e
    sigma_config = GameConfig(combined, strategy.schedule(combined), WinCondition.cover())
    worst = evaluate_strategy(space, sigma_config, strategy)
    details["plays"] = worst.plays
    if spec.oracle:
        details["oracle"] = _oracle(space, sigma_config, settings)
    if worst.winner is Player.ONE:
        return _refuted(spec, instance, details, worst)
    return Report(command=spec.command.value, verdict=Verdict.VERIFIED, fingerprint=instance, details=details)


def verify_hurewicz_product(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """
    γ-witnesses on both factors, from their exact policies on one product
    sequence, multiplied into C_n = A_n × B_n.
    """
    config = game_config(spec.game)
    if config.win.kind is not WinKind.GAMMA:
        raise SchemaError("the hurewicz-product combinator works with gamma games", "game.win.kind")
    left = finite_view(build_space(spec.space, settings.probes), config, settings)
    right = finite_view(build_space(spec.other, settings.probes), config, settings)
    space = product_space(left, right)
    sequence = _player_one(spec, config.horizon)
    right_size = len(right.multicover)
    if any(not 0 <= c < len(space.multicover) for c in sequence):
        raise SchemaError(f"cover indices run from 0 to {len(space.multicover) - 1}", "player_one")
    details: Dict[str, Any] = {"left": left.name, "right": right.name, "player_one": sequence}
    witnesses = []
    for name, factor, covers in (
        ("left", left, [c // right_size for c in sequence]),
        ("right", right, [c % right_size for c in sequence]),
    ):
        witness = _game_witness(factor, config, covers, settings)
        if witness is None:
            return _precondition_failed(spec, instance, details, f"the {name} factor is an I win")
        witnesses.append(witness)

    combined = hurewicz_product_witness(space, witnesses[0], witnesses[1])
    if spec.oracle:
        budgets = tuple(None if b is None else b * b for b in config.budgets)
        win = WinCondition.gamma(combined.start, combined.miss_budget)
        details["oracle"] = _oracle(space, GameConfig(config.horizon, budgets, win), settings)
    return _witness_report(spec, instance, details, combined)


def verify_totally_bounded(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Decompose the probe into the tails T_n of a γ-witness without misses."""
    config = game_config(spec.game)
    if config.win.kind is not WinKind.GAMMA or config.win.miss_budget:
        raise SchemaError("the totally-bounded combinator works with gamma games without misses", "game.win")
    space = finite_view(build_space(spec.space, settings.probes), config, settings)
    sequence = _player_one(spec, config.horizon)
    details: Dict[str, Any] = {"space": space.name, "player_one": sequence}
    witness = _game_witness(space, config, sequence, settings)
    if witness is None:
        return _precondition_failed(spec, instance, details, f"the gamma game is an I win at horizon {config.horizon}")
    decomposition = totally_bounded_decomposition(witness, config.win.probe_points(space))
    details["decomposition"] = decomposition.to_dict()
    if decomposition.covers_probe() and tails_contain_pieces(decomposition, witness):
        verdict = Verdict.VERIFIED
    else:
        verdict = Verdict.REFUTED
    return Report(command=spec.command.value, verdict=verdict, fingerprint=instance, details=details)


def _lattice(spec: RunSpec) -> LatticeGroup:
    space = spec.space
    if space.kind == "lattice-metric":
        return LatticeGroup(space.dimension, space.norm)
    if space.kind == "group" and space.group.type == "lattice":
        return LatticeGroup(space.group.dimension, space.group.norm)
    raise SchemaError("abelian-lifting needs a lattice space", "space.kind")


def verify_abelian_lifting(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Lift the box witness K_l + O_l to {K_2n + O_n} and check it on the lattice probe."""
    group = _lattice(spec)
    params = spec.lifting or LiftingSpec()
    probe_box = params.probe_box if params.probe_box is not None else settings.probes.probe_box
    lifting = AbelianLifting(
        group,
        GeneratorChain.boxes(group, params.chain_length),
        NeighborhoodSchedule.halving(params.top_exponent),
        params.half_width,
    )
    probe = group.box(probe_box)
    details: Dict[str, Any] = {"group": group.name, "witness": params.witness, "probe_box": probe_box}
    try:
        if params.witness == "scheepers":
            lifted = lifting.lift_scheepers(g_probe=probe, k=params.k)
        else:
            lifted = lifting.lift_hurewicz(g_probe=probe)
    except CertificateError as e:
        details["postcondition"] = str(e)
        return Report(command=spec.command.value, verdict=Verdict.REFUTED, fingerprint=instance, details=details)
    details["witness"] = lifted.to_dict()
    verdict = Verdict.VERIFIED if lifted.check(probe) else Verdict.REFUTED
    return Report(command=spec.command.value, verdict=verdict, fingerprint=instance, details=details)


COMBINATORS: Dict[str, Callable[[RunSpec, EngineSettings, str], Report]] = {
    "union": verify_union,
    "gamma-upgrade": verify_gamma_upgrade,
    "product": verify_product,
    "pullback": verify_pullback,
    "sigma-product": verify_sigma_product,
    "hurewicz-product": verify_hurewicz_product,
    "totally-bounded": verify_totally_bounded,
    "abelian-lifting": verify_abelian_lifting,
}


def run_verify_combinator(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    return COMBINATORS[spec.combinator](spec, settings, instance)


def run_compare_covers(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Equivalence of two multicovers on the same points."""
    left = build_space(spec.space, settings.probes)
    right = build_space(spec.other, settings.probes)
    if left.is_finite != right.is_finite or (left.is_finite and left.ground.points != right.ground.points):
        raise SchemaError("both spaces need the same points", "other")
    result = equivalent_multicovers(left.multicover, right.multicover, settings.search.search_bound)
    details = {"left": left.name, "right": right.name, "result": jsonable(result)}
    return Report(command=spec.command.value, verdict=tribool_verdict(result), fingerprint=instance, details=details)


def run_make_space(spec: RunSpec, settings: EngineSettings, instance: str) -> Report:
    """Normalize a space description; finite spaces are written out explicitly."""
    space = build_space(spec.space, settings.probes)
    if space.is_finite:
        normalized = explicit_form(space)
    else:
        normalized = spec.space.model_dump(mode="json")
    details = {
        "space": normalized,
        "space_fingerprint": fingerprint(normalized),
        "covers": len(space.multicover),
        "finite": space.is_finite,
        "probe_points": len(space.probe_points()),
    }
    return Report(command=spec.command.value, verdict=Verdict.YES, fingerprint=instance, details=details)


COMMANDS: Dict[Command, Callable[[RunSpec, EngineSettings, str], Report]] = {
    Command.SOLVE: run_solve,
    Command.PLAY: run_play,
    Command.CHECK_PRINCIPLE: run_check_principle,
    Command.VERIFY_COMBINATOR: run_verify_combinator,
    Command.COMPARE_COVERS: run_compare_covers,
    Command.MAKE_SPACE: run_make_space,
}
