"""
Full-scale sweeps over the small-instance corpus and the lifting constructions.

Deselect with ``pytest -m "not slow"``.
"""

from functools import lru_cache
from itertools import combinations, product

import pytest

from helpers import explicit_space
from src.combinators import gamma_upgrade, product_strategy, union_strategy
from src.covers import Side, product_space, restrict
from src.games import (
    GameConfig,
    GreedyStrategy,
    Player,
    WinCondition,
    evaluate_strategy,
    play_game,
    solve,
    verify_on_probe,
)
from src.runner.corpus import CorpusSize, enumerate_instances, instance_spec, sample_instances
from src.spaces import AbelianLifting, FreeGroup, GeneratorChain, LatticeGroup, NeighborhoodSchedule, group_space, lift_winning_to_group

pytestmark = pytest.mark.slow

CORPUS_SIZES = [(3, 2, 3), (4, 1, 4), (4, 2, 2)]


@lru_cache(maxsize=None)
def corpus(points, covers, members):
    """Every canonical instance of a size as an explicit space."""
    return tuple(
        explicit_space(range(points), instance_spec(instance, points)["covers"], name=f"corpus-{points}-{n}")
        for n, instance in enumerate(enumerate_instances(CorpusSize(points, covers, members)))
    )


@lru_cache(maxsize=None)
def winning(points, covers, members, horizon):
    """(space, policy) for the corpus instances II wins with one member per round."""
    config = GameConfig.uniform(horizon, 1)
    found = []
    for space in corpus(points, covers, members):
        result = solve(space, config)
        if result.winner is Player.TWO:
            found.append((space, result.policy))
    return tuple(found)


@pytest.mark.parametrize("size", CORPUS_SIZES, ids=lambda size: "x".join(map(str, size)))
def test_solver_agrees_with_its_own_policy_on_the_corpus(size):
    for space in corpus(*size):
        for horizon in range(1, 5):
            config = GameConfig.uniform(horizon, 1)
            result = solve(space, config)
            if result.winner is Player.TWO:
                assert evaluate_strategy(space, config, result.policy).winner is Player.TWO
            else:
                greedy = GreedyStrategy(space, config.budgets)
                assert play_game(space, config, result.policy, greedy).winner is Player.ONE


@pytest.mark.parametrize("size", CORPUS_SIZES, ids=lambda size: "x".join(map(str, size)))
def test_hierarchy_and_monotonicity_on_the_corpus(size):
    for space in corpus(*size):
        previous = None
        for horizon in range(1, 5):
            cover = solve(space, GameConfig.uniform(horizon, 1)).winner
            omega = solve(space, GameConfig.uniform(horizon, 1, WinCondition.omega(2))).winner
            gamma = solve(space, GameConfig.uniform(horizon, 1, WinCondition.gamma(0, 0))).winner
            if gamma is Player.TWO:
                assert omega is Player.TWO
            if omega is Player.TWO:
                assert cover is Player.TWO
            if previous is Player.TWO:
                assert cover is Player.TWO
            if cover is Player.TWO:
                assert solve(space, GameConfig.uniform(horizon, 2)).winner is Player.TWO
            previous = cover


def test_union_of_piece_policies_on_the_corpus():
    checked = 0
    for space in corpus(3, 2, 3):
        for part in ([0], [1], [2]):
            rest = [p for p in range(3) if p not in part]
            pieces = [restrict(space, part), restrict(space, rest)]
            results = [solve(piece, GameConfig.uniform(2, 1)) for piece in pieces]
            if any(result.winner is not Player.TWO for result in results):
                continue
            union = union_strategy([result.policy for result in results], pieces, horizons=[2, 2])
            config = GameConfig(3, union.schedule(3), WinCondition.cover())
            assert evaluate_strategy(space, config, union).winner is Player.TWO
            checked += 1
    assert checked == 3 * len(corpus(3, 2, 3))


def test_gamma_upgrade_contains_every_subsequence_answer():
    for horizon in range(1, 5):
        for space, policy in winning(3, 2, 3, horizon):
            upgraded = gamma_upgrade(policy)
            for play in product(range(len(space.multicover)), repeat=horizon):
                upgraded_answers = []
                for n in range(horizon):
                    certificate = upgraded(play[: n + 1])
                    upgraded_answers.append({(certificate.cover_index, m) for m in certificate.members})
                for size in range(1, horizon + 1):
                    for indices in combinations(range(horizon), size):
                        answered = set()
                        for j in range(size):
                            certificate = policy(tuple(play[i] for i in indices[: j + 1]))
                            answered.update((certificate.cover_index, m) for m in certificate.members)
                        assert answered <= set().union(*(upgraded_answers[i] for i in indices))


@pytest.mark.parametrize("points, horizon, sample", [(2, 2, None), (3, 3, 4)])
def test_products_of_upgraded_policies_on_corpus_pairs(points, horizon, sample):
    factors = sample_instances(list(winning(points, 2, 3, horizon)), sample, seed=0)
    assert factors
    rounds = 2 * horizon - 1
    for (left, left_policy), (right, right_policy) in product(factors, repeat=2):
        space = product_space(left, right)
        strategy = product_strategy(
            space,
            gamma_upgrade(left_policy, inner_horizon=horizon),
            gamma_upgrade(right_policy, inner_horizon=horizon),
        )
        config = GameConfig(rounds, strategy.schedule(rounds), WinCondition.cover())
        assert evaluate_strategy(space, config, strategy).winner is Player.TWO


def test_plane_lifts_pass_their_cover_classes_on_box_20():
    plane = LatticeGroup(2)
    lifting = AbelianLifting(plane, GeneratorChain.boxes(plane, 13), NeighborhoodSchedule.halving(7), 16)
    probe = plane.box(20)
    scheepers = lifting.lift_scheepers(g_probe=probe)
    assert len(scheepers) == 7
    assert scheepers.check(probe)
    hurewicz = lifting.lift_hurewicz(g_probe=probe)
    assert hurewicz.start == 2
    assert hurewicz.check(probe)


def test_lifted_strategy_wins_eight_rounds_on_the_free_group():
    space = group_space(FreeGroup(2), [2 ** e for e in range(16, -1, -1)], Side.RIGHT, word_length=5)
    lifted = lift_winning_to_group(space, [(1,), (2,)], covers=[0, 1], horizon=8)
    result = verify_on_probe(space, product([0, 1], repeat=8), lifted, WinCondition.cover())
    assert result.is_yes
    assert result.evidence == {"sequences": 256}
