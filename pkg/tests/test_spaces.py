from itertools import permutations

import hypothesis
import hypothesis.strategies as strat
import pytest

from src.covers import Scope, Side, TranslateMember, equivalent_multicovers, is_centered, product_space
from helpers import explicit_space
from src.errors import InvalidSpaceError
from src.spaces import (
    CayleyTableGroup,
    FiniteMetricSpace,
    FreeGroup,
    LatticeGroup,
    cyclic_group,
    direct_product_table,
    group_space,
    is_isomorphic_by_table,
    lattice_metric_multicover,
    max_product_metric,
    metric_multicover,
    neighborhood_radius,
)

F2 = FreeGroup(2)

reduced_words = strat.lists(strat.sampled_from([1, -1, 2, -2]), max_size=6).map(FreeGroup.reduce)


def test_cyclic_group_arithmetic():
    z6 = cyclic_group(6)
    assert z6.diameter == 3
    assert z6.inverse(2) == 4
    assert z6.multiply(4, 5) == 3
    assert z6.shell(3) == [3]
    assert z6.is_abelian


def test_generators_must_generate():
    with pytest.raises(InvalidSpaceError):
        cyclic_group(6, [2])
    with pytest.raises(InvalidSpaceError):
        cyclic_group(0)


def test_cayley_tables_are_checked():
    # Row 1 repeats 0: no group.
    with pytest.raises(InvalidSpaceError):
        CayleyTableGroup([[0, 1], [0, 0]], [1])


def test_isomorphism_search():
    assert is_isomorphic_by_table(direct_product_table(cyclic_group(2), cyclic_group(3)), cyclic_group(6)) is not None
    assert is_isomorphic_by_table(direct_product_table(cyclic_group(2), cyclic_group(2)), cyclic_group(4)) is None


def test_free_group_words():
    assert F2.reduce([1, 2, -2, -1, 1]) == (1,)
    assert F2.parse("abA") == (1, 2, -1)
    assert F2.format((1, -2)) == "aB"
    assert F2.format(()) == "e"
    assert F2.multiply((1, 2), (-2, 1)) == (1, 1)
    assert len(F2.shell(2)) == 12
    assert not F2.contains((1, -1))
    with pytest.raises(InvalidSpaceError):
        F2.parse("c")


def test_lattice_norms():
    plane = LatticeGroup(2)
    kings = LatticeGroup(2, norm="max")
    assert len(plane.box(1)) == 9
    assert plane.length((3, -4)) == 7
    assert kings.length((3, -4)) == 4
    assert len(plane.shell(1)) == 4
    assert len(kings.shell(1)) == 8
    with pytest.raises(InvalidSpaceError):
        LatticeGroup(2, norm="l2")


def test_finite_group_space_is_explicit():
    space = group_space(cyclic_group(6), [2, 1], Side.LEFT)
    assert space.is_finite
    assert len(space.multicover) == 2
    assert space.cover(1).member_points(0) == {0, 1, 5}
    assert neighborhood_radius(space, 1) == 1


def test_left_and_right_agree_on_abelian_groups():
    z6 = cyclic_group(6)
    left = group_space(z6, [2, 1], Side.LEFT)
    right = group_space(z6, [2, 1], Side.RIGHT)
    assert equivalent_multicovers(left.multicover, right.multicover).is_yes


def test_group_radii_must_decrease():
    with pytest.raises(InvalidSpaceError):
        group_space(cyclic_group(6), [1, 2])


def test_free_group_space_probes_a_word_ball():
    space = group_space(F2, [2, 1], Side.RIGHT, word_length=2)
    assert not space.is_finite
    assert len(space.probe_points()) == 1 + 4 + 12
    assert (2, 1) in space.cover(1).member((1,))


def test_metric_checks_the_triangle_inequality():
    with pytest.raises(InvalidSpaceError):
        FiniteMetricSpace([0, 1, 2], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])


def test_metric_balls_are_open():
    space = metric_multicover(FiniteMetricSpace.path(4), [2, 1])
    assert space.cover(0).member_points(1) == {0, 1, 2}
    assert space.cover(1).member_points(1) == {1}
    with pytest.raises(InvalidSpaceError):
        metric_multicover(FiniteMetricSpace.path(4), [1, 2])


def test_lattice_balls_are_open():
    space = lattice_metric_multicover(1, [2], probe_box=3)
    ball = space.cover(0).member((0,))
    assert (1,) in ball
    assert (2,) not in ball


def test_max_product_metric():
    product = max_product_metric(FiniteMetricSpace.path(2), FiniteMetricSpace.path(3))
    assert product.distance((0, 0), (1, 2)) == 2


@hypothesis.given(reduced_words, reduced_words, reduced_words)
def test_free_multiplication_is_associative(a, b, c):
    assert F2.multiply(F2.multiply(a, b), c) == F2.multiply(a, F2.multiply(b, c))


@hypothesis.given(reduced_words)
def test_free_inverses_cancel(word):
    assert F2.contains(word)
    assert F2.multiply(word, F2.inverse(word)) == ()
    assert F2.parse(F2.format(word) if word else "") == word


def permutation_group():
    """S3 acting on {0, 1, 2}, generated by two transpositions."""
    perms = list(permutations(range(3)))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    return CayleyTableGroup(table, [perms.index((1, 0, 2)), perms.index((0, 2, 1))], name="S3")


S3 = permutation_group()
TABLE_GROUPS = [S3, cyclic_group(6), direct_product_table(cyclic_group(2), cyclic_group(3))]


def two_blocks():
    """Four points in two pairs, 1 apart inside a pair and 2 across."""
    return FiniteMetricSpace.from_function(range(4), lambda a, b: 0 if a == b else (1 if a // 2 == b // 2 else 2), "blocks")


def test_product_space_matches_the_max_product_metric():
    left, right = FiniteMetricSpace.path(4), two_blocks()
    radii = [3, 2, 1]
    metric = metric_multicover(max_product_metric(left, right), radii)
    product = product_space(metric_multicover(left, radii), metric_multicover(right, radii))
    assert equivalent_multicovers(metric.multicover, product.multicover).is_yes
    for n in range(len(radii)):
        # Cover i·|ν| + j of the product pairs cover i with cover j.
        diagonal = product.cover(n * len(radii) + n)
        metric_members = {metric.cover(n).member_points(i) for i in metric.cover(n).indices()}
        product_members = {diagonal.member_points(i) for i in diagonal.indices()}
        assert metric_members == product_members


def test_translate_covers_of_a_direct_product_match_the_product_space():
    left, right = cyclic_group(2), cyclic_group(3)
    joined = group_space(direct_product_table(left, right), [1, 0], Side.LEFT)
    # Element g·|H| + h of the product table is the pair (g, h).
    relabelled = explicit_space(
        [divmod(p, 3) for p in joined.ground.points],
        [
            [[divmod(p, 3) for p in cover.member_points(i)] for i in cover.indices()]
            for cover in joined.multicover
        ],
        name="Z2xZ3",
    )
    product = product_space(group_space(left, [1, 0], Side.LEFT), group_space(right, [1, 0], Side.LEFT))
    assert equivalent_multicovers(relabelled.multicover, product.multicover).is_yes


@pytest.mark.parametrize(
    "space",
    [
        metric_multicover(FiniteMetricSpace.path(5), [3, 2, 1]),
        metric_multicover(two_blocks(), [2, 1]),
        group_space(S3, [2, 1, 0], Side.LEFT),
        group_space(S3, [2, 1, 0], Side.RIGHT),
        group_space(S3, [2, 1, 0], Side.JOIN),
        group_space(S3, [2, 1, 0], Side.MEET),
        group_space(cyclic_group(6), [2, 1], Side.LEFT),
        product_space(group_space(cyclic_group(2), [1, 0]), group_space(cyclic_group(3), [1, 0])),
    ],
    ids=lambda space: space.name,
)
def test_finite_constructed_multicovers_are_centered(space):
    result = is_centered(space.multicover)
    assert result.is_yes
    assert result.scope is Scope.EXACT


@pytest.mark.parametrize(
    "space",
    [
        lattice_metric_multicover(2, [3, 1], probe_box=2),
        group_space(LatticeGroup(1), [4, 2, 1], Side.LEFT, probe_box=5),
        group_space(F2, [2, 1], Side.RIGHT, word_length=2),
    ],
    ids=lambda space: space.name,
)
def test_lazy_constructed_multicovers_are_centered_on_sample_points(space):
    result = is_centered(space.multicover)
    assert result.is_yes
    assert result.scope is Scope.PROBE


@hypothesis.given(strat.sampled_from(TABLE_GROUPS), strat.data())
def test_translate_membership_replays_word_lengths(group, data):
    g = data.draw(strat.sampled_from(group.elements()))
    radius = data.draw(strat.integers(0, group.diameter))
    side = data.draw(strat.sampled_from(list(Side)))
    member = TranslateMember(g, radius, group, side)
    for y in group.elements():
        left = group.length(group.multiply(group.inverse(g), y)) <= radius
        right = group.length(group.multiply(y, group.inverse(g))) <= radius
        expected = {Side.LEFT: left, Side.RIGHT: right, Side.JOIN: left and right}.get(side)
        if expected is not None:
            assert (y in member) == expected
    assert member.points() == {y for y in group.elements() if y in member}


@hypothesis.given(reduced_words, reduced_words, strat.integers(0, 2))
def test_free_translates_replay_word_lengths(g, y, radius):
    left = TranslateMember(g, radius, F2, Side.LEFT)
    right = TranslateMember(g, radius, F2, Side.RIGHT)
    assert (y in left) == (F2.length(F2.multiply(F2.inverse(g), y)) <= radius)
    assert (y in right) == (F2.length(F2.multiply(y, F2.inverse(g))) <= radius)
    assert (y in left) == (y in left.points())
