import json

import pytest

from helpers import LOOKAHEAD_COVERS
from src.runner.config_manager import ConfigManager
from src.runner.main import main


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("MULTICOVER_CONFIG_DIR", "MULTICOVER_LOG_LEVEL", "MULTICOVER_STATE_LIMIT"):
        monkeypatch.delenv(name, raising=False)


def singletons_spec(n):
    return {"kind": "explicit", "name": f"singletons{n}", "points": list(range(n)), "covers": [[[p] for p in range(n)]]}


LOOKAHEAD = {"kind": "explicit", "name": "lookahead", "points": [0, 1, 2, 3], "covers": LOOKAHEAD_COVERS}
WHOLE_PAIR = {"kind": "explicit", "name": "whole2", "points": [0, 1], "covers": [[[0, 1]]]}
WHOLE_TRIPLE = {"kind": "explicit", "name": "whole3", "points": [0, 1, 2], "covers": [[[0, 1, 2]]]}


def product_spec(left, right):
    return {"kind": "product", "left": left, "right": right}


def invoke(tmp_path, capsys, verb, body, *flags):
    """Run one verb on a description written to tmp_path; returns (exit code, report)."""
    spec = tmp_path / "run.json"
    spec.write_text(json.dumps(body))
    code = main(["--config-dir", str(tmp_path), *flags, verb, "--spec", str(spec)])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_solve_reports_a_policy_for_ii(tmp_path, capsys):
    code, report = invoke(tmp_path, capsys, "solve", {"space": singletons_spec(6), "game": {"horizon": 6}})
    assert code == 0
    assert report["verdict"] == "II-wins"
    assert report["exit_code"] == 0
    assert len(report["details"]["policy"]) == 6
    assert report["details"]["self_check"]["winner"] == "II"


def test_solve_reports_a_refutation_for_i(tmp_path, capsys):
    code, report = invoke(tmp_path, capsys, "solve", {"space": singletons_spec(6), "game": {"horizon": 5}})
    assert code == 1
    assert report["verdict"] == "I-wins"
    assert len(report["details"]["refutation"]) == 5
    assert report["transcripts"][0]["winner"] == "I"


def test_state_limit_flag_gives_up(tmp_path, capsys):
    code, report = invoke(
        tmp_path, capsys, "solve", {"space": singletons_spec(6), "game": {"horizon": 6}}, "--limit-states", "1"
    )
    assert code == 4
    assert report is None


def test_check_principle_on_lookahead(tmp_path, capsys):
    game = {"horizon": 2, "budget": 1}
    code, report = invoke(tmp_path, capsys, "check-principle", {"space": LOOKAHEAD, "game": game, "principle": "menger"})
    assert code == 0
    assert report["verdict"] == "Yes"
    code, report = invoke(tmp_path, capsys, "check-principle", {"space": LOOKAHEAD, "game": game, "principle": "winning"})
    assert code == 1
    assert report["verdict"] == "No"


def test_unknown_points_are_schema_errors(tmp_path, capsys):
    space = {"kind": "explicit", "points": [0, 1], "covers": [[[0], [9]]]}
    code, report = invoke(tmp_path, capsys, "solve", {"space": space, "game": {"horizon": 1}})
    assert code == 3
    assert report is None


def test_invalid_json_is_a_schema_error(tmp_path, capsys):
    spec = tmp_path / "broken.json"
    spec.write_text("{not json")
    assert main(["--config-dir", str(tmp_path), "solve", "--spec", str(spec)]) == 3


def test_description_must_match_the_verb(tmp_path, capsys):
    body = {"command": "make-space", "space": singletons_spec(2)}
    code, _ = invoke(tmp_path, capsys, "solve", body)
    assert code == 3


def test_make_space_normalizes_finite_spaces(tmp_path, capsys):
    code, report = invoke(tmp_path, capsys, "make-space", {"space": {"kind": "group", "group": {"type": "cyclic", "order": 4}, "radii": [1]}})
    assert code == 0
    details = report["details"]
    assert details["finite"]
    assert details["covers"] == 1
    assert details["probe_points"] == 4
    assert details["space"]["kind"] == "explicit"


def test_play_replays_greedy(tmp_path, capsys):
    body = {"space": singletons_spec(3), "game": {"horizon": 3}, "player_one": [0, 0, 0], "strategy": {"kind": "greedy"}}
    code, report = invoke(tmp_path, capsys, "play", body)
    assert code == 0
    assert report["details"]["strategy"] == "greedy"
    assert [r["certificate"]["members"] for r in report["transcripts"][0]["rounds"]] == [[0], [1], [2]]


@pytest.mark.parametrize(
    "body",
    [
        {"space": singletons_spec(4), "game": {"horizon": 4}, "combinator": "union", "pieces": [[0, 1], [2, 3]]},
        {"space": singletons_spec(2), "game": {"horizon": 2}, "combinator": "gamma-upgrade"},
        {"space": singletons_spec(2), "other": singletons_spec(2), "game": {"horizon": 2}, "combinator": "product"},
        {"space": product_spec(singletons_spec(2), WHOLE_PAIR), "game": {"horizon": 2}, "combinator": "pullback"},
        {
            "space": product_spec(singletons_spec(2), singletons_spec(2)),
            "game": {"horizon": 2},
            "combinator": "sigma-product",
            "pieces": [[0], [0, 1]],
        },
        {
            "space": singletons_spec(2),
            "other": singletons_spec(2),
            "game": {"horizon": 2, "win": {"kind": "gamma", "miss_budget": 1}},
            "combinator": "hurewicz-product",
            "player_one": [0, 0],
        },
        {"space": WHOLE_TRIPLE, "game": {"horizon": 2, "win": {"kind": "gamma"}}, "combinator": "totally-bounded"},
        {"space": {"kind": "lattice-metric", "radii": [1]}, "combinator": "abelian-lifting"},
        {"space": {"kind": "lattice-metric", "radii": [1]}, "combinator": "abelian-lifting", "lifting": {"witness": "hurewicz"}},
    ],
)
def test_combinators_verify_on_small_spaces(tmp_path, capsys, body):
    code, report = invoke(tmp_path, capsys, "verify-combinator", body)
    assert code == 0
    assert report["verdict"] == "Verified-on-probe"


def test_pullback_needs_a_winning_target(tmp_path, capsys):
    body = {"space": product_spec(singletons_spec(3), WHOLE_PAIR), "game": {"horizon": 2}, "combinator": "pullback"}
    code, report = invoke(tmp_path, capsys, "verify-combinator", body)
    assert code == 2
    assert report["verdict"] == "Unknown"
    assert report["details"]["perfect"]["verdict"] == "yes"
    assert "I win" in report["details"]["precondition"]


def test_hurewicz_product_multiplies_the_factor_witnesses(tmp_path, capsys):
    body = {
        "space": singletons_spec(2),
        "other": singletons_spec(2),
        "game": {"horizon": 2, "win": {"kind": "gamma", "miss_budget": 1}},
        "combinator": "hurewicz-product",
    }
    code, report = invoke(tmp_path, capsys, "verify-combinator", body)
    assert code == 0
    witness = report["details"]["witness"]
    assert witness["class"] == "gamma"
    assert witness["miss_budget"] == 2
    assert len(witness["items"]) == 2


def test_abelian_lifting_reports_the_lifted_family(tmp_path, capsys):
    body = {"space": {"kind": "lattice-metric", "radii": [1]}, "combinator": "abelian-lifting", "lifting": {"probe_box": 20}}
    code, report = invoke(tmp_path, capsys, "verify-combinator", body)
    assert code == 0
    witness = report["details"]["witness"]
    assert witness["class"] == "omega"
    assert witness["items"][0] == "[-1,1]^1+O(64)"
    assert len(witness["items"]) == 7


@pytest.mark.parametrize(
    "body",
    [
        {"space": singletons_spec(2), "game": {"horizon": 2}, "combinator": "hurewicz-product", "other": singletons_spec(2)},
        {"space": singletons_spec(2), "game": {"horizon": 2}, "combinator": "pullback"},
        {"space": singletons_spec(2), "combinator": "abelian-lifting"},
        {"space": singletons_spec(2), "game": {"horizon": 2}, "combinator": "sigma-product"},
        {
            "space": product_spec(singletons_spec(2), singletons_spec(2)),
            "game": {"horizon": 2},
            "combinator": "sigma-product",
            "pieces": [[0]],
        },
    ],
)
def test_combinator_inputs_that_do_not_fit_are_schema_errors(tmp_path, capsys, body):
    code, report = invoke(tmp_path, capsys, "verify-combinator", body)
    assert code == 3
    assert report is None


def test_compare_covers_needs_the_same_points(tmp_path, capsys):
    body = {"space": singletons_spec(2), "other": singletons_spec(3)}
    code, _ = invoke(tmp_path, capsys, "compare-covers", body)
    assert code == 3
    body = {"space": singletons_spec(3), "other": {"kind": "explicit", "points": [0, 1, 2], "covers": [[[0, 1, 2]]]}}
    code, report = invoke(tmp_path, capsys, "compare-covers", body)
    assert code == 0
    assert report["verdict"] == "Yes"


def test_corpus_counts_instances(tmp_path, capsys):
    assert main(["--config-dir", str(tmp_path), "corpus", "--points", "2", "--covers", "1", "--members", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["details"]["instances"] == 4
    assert main(["--config-dir", str(tmp_path), "corpus", "--points", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["details"]["instances"] == 1


def test_corpus_sweep_solves_every_instance(tmp_path, capsys):
    code = main(["--config-dir", str(tmp_path), "corpus", "--points", "2", "--members", "3", "--horizon", "2"])
    assert code == 0
    winners = json.loads(capsys.readouterr().out)["details"]["winners"]
    assert len(winners) == 4
    assert set(winners.values()) == {"II-wins"}


def test_reports_are_reproducible(tmp_path, capsys):
    body = {"space": LOOKAHEAD, "game": {"horizon": 3}}
    _, first = invoke(tmp_path, capsys, "solve", body)
    _, second = invoke(tmp_path, capsys, "solve", body)
    first.pop("timings")
    second.pop("timings")
    assert first == second


def test_config_dir_comes_from_the_environment(tmp_path, monkeypatch):
    (tmp_path / "engine.yml").write_text("solver:\n  state_limit: 7\n")
    monkeypatch.setenv("MULTICOVER_CONFIG_DIR", str(tmp_path))
    assert ConfigManager("missing").load_settings().solver.state_limit == 7
    monkeypatch.setenv("MULTICOVER_STATE_LIMIT", "9")
    assert ConfigManager("missing").load_settings().solver.state_limit == 9


def test_invalid_configuration(tmp_path, capsys):
    (tmp_path / "engine.yml").write_text("logging:\n  level: LOUD\n")
    with pytest.raises(ValueError, match="Invalid engine configuration"):
        ConfigManager(str(tmp_path)).load_settings()
    assert main(["--config-dir", str(tmp_path), "corpus", "--points", "1"]) == 3
