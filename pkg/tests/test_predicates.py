import hypothesis
import hypothesis.strategies as strat
import pytest

from src.covers import is_cover, is_gamma_cover, is_omega_cover, is_proper_omega_cover
from src.covers.predicates import gamma_misses, min_engulfing

TRIANGLE = [{0, 1}, {1, 2}, {0, 2}]

families = strat.lists(strat.frozensets(strat.integers(0, 4)), min_size=1, max_size=6)
probes = strat.frozensets(strat.integers(0, 4), min_size=1)


def test_triangle_edges():
    assert is_cover(TRIANGLE, range(3))
    assert is_omega_cover(TRIANGLE, range(3), 2)
    assert not is_omega_cover(TRIANGLE, range(3), 3)
    assert is_proper_omega_cover(TRIANGLE, range(3), 1, min_occurrences=2)
    assert not is_proper_omega_cover(TRIANGLE, range(3), 2, min_occurrences=2)


def test_gamma_counts_misses_from_the_start_round():
    family = [{0, 1}, {0, 1, 2}, {0, 1, 2}]
    assert gamma_misses(family, range(3)) == {0: 0, 1: 0, 2: 1}
    assert not is_gamma_cover(family, range(3))
    assert is_gamma_cover(family, range(3), start=1)
    assert is_gamma_cover(family, range(3), miss_budget=1)


def test_gamma_rejects_bad_parameters():
    with pytest.raises(ValueError):
        is_gamma_cover([{0}], [0], start=1)
    with pytest.raises(ValueError):
        is_gamma_cover([{0}], [0], miss_budget=-1)


def test_empty_probe_is_engulfed_trivially():
    assert min_engulfing(TRIANGLE, [], 2) == -1
    assert is_proper_omega_cover(TRIANGLE, [], 2, min_occurrences=5)
    with pytest.raises(ValueError):
        min_engulfing(TRIANGLE, [0], 0)


@hypothesis.given(families, probes)
def test_gamma_without_misses_is_omega(family, probe):
    if is_gamma_cover(family, probe):
        assert is_omega_cover(family, probe, 3)


@hypothesis.given(families, probes, strat.integers(2, 4))
def test_omega_weakens_with_smaller_subsets(family, probe, k):
    if is_omega_cover(family, probe, k):
        assert is_omega_cover(family, probe, k - 1)
        assert is_cover(family, probe)


@hypothesis.given(families, probes, strat.integers(1, 3))
def test_proper_omega_is_omega(family, probe, k):
    if is_proper_omega_cover(family, probe, k, min_occurrences=2):
        assert is_omega_cover(family, probe, k)
