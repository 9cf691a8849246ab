import hypothesis
import hypothesis.strategies as strat
import pytest

from helpers import explicit_space, singletons
from src.covers import Certificate, Scope, Side
from src.errors import InvalidSpaceError, StateSpaceExceeded
from src.games import (
    CoverGameSolver,
    GameConfig,
    GreedyStrategy,
    Player,
    PlayerOnePolicy,
    Principle,
    TableStrategy,
    WinCondition,
    check_o_bounded,
    check_principle,
    check_strictly_o_bounded,
    cover_all_strategy,
    evaluate_strategy,
    of_game_on_group,
    play_game,
    solve,
)
from src.spaces import LatticeGroup, cyclic_group, group_space, lattice_metric_multicover


@strat.composite
def small_spaces(draw):
    covers = []
    for _ in range(draw(strat.integers(1, 2))):
        members = draw(
            strat.lists(strat.frozensets(strat.integers(0, 2), min_size=1), min_size=1, max_size=3, unique=True)
        )
        missing = set(range(3)) - set().union(*members)
        covers.append([sorted(m) for m in members] + [[p] for p in sorted(missing)])
    return explicit_space(range(3), covers)


def test_singletons_need_one_round_per_point(six_singletons):
    assert solve(six_singletons, GameConfig.uniform(6, 1)).winner is Player.TWO
    assert solve(six_singletons, GameConfig.uniform(5, 1)).winner is Player.ONE


def test_winning_policy_is_a_full_table(six_singletons):
    config = GameConfig.uniform(6, 1)
    result = solve(six_singletons, config)
    assert isinstance(result.policy, TableStrategy)
    assert len(result.policy.to_rows()) == 6
    assert evaluate_strategy(six_singletons, config, result.policy).winner is Player.TWO


def test_player_one_policy_beats_greedy(six_singletons):
    config = GameConfig.uniform(5, 1)
    result = solve(six_singletons, config)
    assert isinstance(result.policy, PlayerOnePolicy)
    transcript = play_game(six_singletons, config, result.policy, GreedyStrategy(six_singletons, config.budgets))
    assert transcript.winner is Player.ONE


def test_lookahead_separates_menger_from_winning(lookahead):
    config = GameConfig.uniform(2, 1)
    assert solve(lookahead, config).winner is Player.ONE
    menger = check_principle(lookahead, config, Principle.MENGER)
    assert menger.is_yes
    assert menger.evidence == {"sequences": 9}
    assert check_principle(lookahead, config, Principle.WINNING).is_no


def test_select_sees_the_whole_sequence(lookahead):
    solver = CoverGameSolver(lookahead, GameConfig.uniform(2, 1))
    assert solver.select((0, 1)) == (Certificate(0, (1,)), Certificate(1, (0,)))
    assert solver.select((0, 2)) == (Certificate(0, (0,)), Certificate(2, (1,)))
    assert CoverGameSolver(lookahead, GameConfig.uniform(1, 1)).select((0,)) is None


def test_omega_game_needs_every_pair():
    space = singletons(3)
    win = WinCondition.omega(2)
    assert solve(space, GameConfig.uniform(3, 2, win)).winner is Player.TWO
    assert solve(space, GameConfig.uniform(2, 2, win)).winner is Player.ONE


def test_gamma_game_counts_misses():
    space = singletons(2)
    assert solve(space, GameConfig.uniform(3, 1, WinCondition.gamma(0, 2))).winner is Player.TWO
    assert solve(space, GameConfig.uniform(3, 1, WinCondition.gamma(0, 1))).winner is Player.ONE


def test_principle_checks_on_boundedness(lookahead):
    assert check_principle(lookahead, GameConfig.uniform(1, 1), Principle.TOTALLY_BOUNDED).is_no
    assert check_principle(lookahead, GameConfig.uniform(1, 2), Principle.TOTALLY_BOUNDED).is_yes
    assert check_principle(lookahead, GameConfig.uniform(1, 1), Principle.OMEGA_BOUNDED).is_yes


def test_state_limit_is_enforced(six_singletons):
    with pytest.raises(StateSpaceExceeded):
        solve(six_singletons, GameConfig.uniform(6, 1), state_limit=1)


def test_solver_rejects_lazy_spaces_and_large_k(six_singletons):
    with pytest.raises(InvalidSpaceError):
        solve(lattice_metric_multicover(1, [2], probe_box=2), GameConfig.uniform(1, 1))
    with pytest.raises(InvalidSpaceError):
        solve(six_singletons, GameConfig.uniform(2, 1, WinCondition.omega(4)))


@hypothesis.settings(deadline=None)
@hypothesis.given(small_spaces(), strat.integers(1, 3))
def test_a_winning_strategy_gives_the_selection_principle(space, horizon):
    config = GameConfig.uniform(horizon, 1)
    if solve(space, config).winner is Player.TWO:
        assert check_principle(space, config, Principle.MENGER).is_yes


@hypothesis.settings(deadline=None)
@hypothesis.given(small_spaces(), strat.integers(1, 3), strat.integers(1, 2))
def test_more_rounds_and_members_never_hurt_player_two(space, horizon, budget):
    if solve(space, GameConfig.uniform(horizon, budget)).winner is Player.TWO:
        assert solve(space, GameConfig.uniform(horizon + 1, budget)).winner is Player.TWO
        assert solve(space, GameConfig.uniform(horizon, budget + 1)).winner is Player.TWO


@hypothesis.settings(deadline=None)
@hypothesis.given(small_spaces(), strat.integers(1, 3))
def test_solver_policies_survive_every_play(space, horizon):
    config = GameConfig.uniform(horizon, 1)
    result = solve(space, config)
    if result.winner is Player.TWO:
        assert evaluate_strategy(space, config, result.policy).winner is Player.TWO


def test_of_game_on_z6_follows_the_solver():
    z6 = cyclic_group(6)
    space = group_space(z6, [1, 0], Side.LEFT)
    short = GameConfig.uniform(3, 1)
    assert solve(space, short).winner is Player.ONE
    transcript = of_game_on_group(z6, [1, 0], Side.LEFT, short, [1, 1, 1], GreedyStrategy(space, short.budgets))
    assert transcript.winner is Player.ONE
    assert check_strictly_o_bounded(z6, [1, 0], short).is_no
    assert check_o_bounded(z6, [1, 0], short).is_no
    full = GameConfig.uniform(6, 1)
    assert solve(space, full).winner is Player.TWO
    strictly = check_strictly_o_bounded(z6, [1, 0], full)
    assert strictly.is_yes
    assert strictly.scope is Scope.EXACT
    assert check_o_bounded(z6, [1, 0], full).is_yes


def test_trivial_group_is_won_in_one_round():
    trivial = cyclic_group(1)
    config = GameConfig.uniform(1, 1)
    space = group_space(trivial, [0], Side.LEFT)
    transcript = of_game_on_group(trivial, [0], Side.LEFT, config, [0], cover_all_strategy(space))
    assert transcript.winner is Player.TWO
    assert check_strictly_o_bounded(trivial, [0], config).is_yes
    assert check_o_bounded(trivial, [0], config).is_yes


def test_of_game_on_the_line_is_decided_on_a_finite_window():
    # Closed radius-1 balls hold three points, so [-5, 5] needs four rounds.
    line = LatticeGroup(1)
    probe = [(p,) for p in range(-5, 6)]
    short = check_strictly_o_bounded(line, [1], GameConfig.uniform(3, 1), probe=probe)
    assert short.is_no
    assert short.scope is Scope.PROBE
    enough = check_strictly_o_bounded(line, [1], GameConfig.uniform(4, 1), probe=probe)
    assert enough.is_yes
    assert enough.scope is Scope.PROBE
    assert check_o_bounded(line, [1], GameConfig.uniform(3, 1), probe=probe).is_no
