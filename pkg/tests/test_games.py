import pytest

from helpers import singletons
from src.covers import Certificate
from src.errors import CertificateError, InvalidSpaceError
from src.games import (
    GameConfig,
    GreedyStrategy,
    MarkovStrategy,
    Player,
    TableStrategy,
    WinCondition,
    cover_all_strategy,
    empty_strategy,
    evaluate_strategy,
    play_game,
    verify_on_probe,
)


def test_greedy_covers_singletons_in_time():
    space = singletons(3)
    config = GameConfig.uniform(3, 1)
    transcript = play_game(space, config, [0, 0, 0], GreedyStrategy(space, config.budgets))
    assert transcript.winner is Player.TWO
    assert [r.certificate.members for r in transcript.rounds] == [(0,), (1,), (2,)]
    assert transcript.covers == (0, 0, 0)


def test_empty_strategy_loses_a_cover_game():
    space = singletons(2)
    transcript = play_game(space, GameConfig.uniform(2, 0), [0, 0], empty_strategy())
    assert transcript.winner is Player.ONE
    assert transcript.forfeit is None


def test_over_budget_answer_forfeits():
    space = singletons(2)
    greedy_cheat = MarkovStrategy({0: Certificate(0, (0, 1))})
    transcript = play_game(space, GameConfig.uniform(1, 1), [0], greedy_cheat)
    assert transcript.winner is Player.ONE
    assert "budget" in transcript.forfeit


def test_undefined_table_entry_forfeits():
    space = singletons(2)
    table = TableStrategy({(0,): Certificate(0, (0,))}, budgets=(1, 1))
    transcript = play_game(space, GameConfig.uniform(2, 1), [0, 0], table)
    assert transcript.winner is Player.ONE
    assert transcript.forfeit.startswith("round 1")
    assert transcript.rounds[-1].certificate is None


def test_support_outside_members_forfeits():
    space = singletons(2)
    lying = MarkovStrategy({0: Certificate(0, (0,), frozenset([1]))})
    transcript = play_game(space, GameConfig.uniform(1, 1), [0], lying)
    assert "outside" in transcript.forfeit


def test_player_one_must_pick_a_real_cover():
    space = singletons(2)
    with pytest.raises(CertificateError):
        play_game(space, GameConfig.uniform(1, 1), [3], empty_strategy())


def test_adaptive_player_one_sees_previous_rounds():
    space = singletons(2)
    seen = []

    def chooser(rounds):
        seen.append(len(rounds))
        return 0

    play_game(space, GameConfig.uniform(2, 1), chooser, GreedyStrategy(space, (1, 1)))
    assert seen == [0, 1]


def test_configuration_is_validated(six_singletons):
    with pytest.raises(InvalidSpaceError):
        GameConfig(0, ()).validate(six_singletons)
    with pytest.raises(InvalidSpaceError):
        GameConfig(2, (1,)).validate(six_singletons)
    with pytest.raises(InvalidSpaceError):
        GameConfig.uniform(2, 1, WinCondition.gamma(start=2)).validate(six_singletons)
    with pytest.raises(InvalidSpaceError):
        GameConfig.uniform(2, 1, WinCondition.omega(0)).validate(six_singletons)


def test_win_conditions_on_played_sets():
    played = [frozenset({0}), frozenset({0, 1}), frozenset({0, 1})]
    assert WinCondition.cover().holds(played, [0, 1])
    assert WinCondition.omega(2).holds(played, [0, 1])
    assert not WinCondition.gamma().holds(played, [0, 1])
    assert WinCondition.gamma(start=1).holds(played, [0, 1])
    assert WinCondition.gamma(miss_budget=1).holds(played, [0, 1])


def test_cover_all_wins_every_play(layered):
    strategy = cover_all_strategy(layered)
    config = GameConfig.uniform(2, strategy.budget(0))
    worst = evaluate_strategy(layered, config, strategy)
    assert worst.winner is Player.TWO
    assert worst.plays == 9


def test_cover_all_refuses_a_tight_budget(layered):
    with pytest.raises(CertificateError):
        cover_all_strategy(layered, budget=1)


def test_evaluate_reports_first_refutation(six_singletons):
    config = GameConfig.uniform(5, 1)
    worst = evaluate_strategy(six_singletons, config, GreedyStrategy(six_singletons, config.budgets))
    assert worst.winner is Player.ONE
    assert worst.refutation == (0, 0, 0, 0, 0)
    assert worst.transcript.winner is Player.ONE


def test_strategies_answer_nonempty_histories_only():
    with pytest.raises(CertificateError):
        empty_strategy()(())


def test_verify_on_probe_uses_the_declared_schedule(layered):
    strategy = cover_all_strategy(layered)
    sequences = [(0,), (1, 2), (2, 2, 0)]
    result = verify_on_probe(layered, sequences, strategy, WinCondition.cover())
    assert result.is_yes
    assert result.evidence == {"sequences": 3}
    refuted = verify_on_probe(layered, [(0,)], empty_strategy(), WinCondition.cover())
    assert refuted.is_no
    assert refuted.evidence["sequence"] == [0]
