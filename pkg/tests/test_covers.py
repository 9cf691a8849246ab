import logging
from itertools import count

import hypothesis
import hypothesis.strategies as strat
import pytest

from helpers import explicit_space, singletons
from src.covers import (
    Certificate,
    ExplicitMember,
    FiniteCover,
    FiniteGroundSet,
    LazyCover,
    LazyGroundSet,
    Multicover,
    Scope,
    TriBool,
    bounded_by,
    canonical_order,
    coarser_than,
    covered_points,
    equivalent_multicovers,
    format_point,
    is_centered,
    is_omega_bounded,
    is_totally_bounded,
    parse_point,
    product_space,
    restrict,
    unbounded_witness,
)
from src.errors import CertificateError, InvalidSpaceError
from src.spaces import lattice_metric_multicover

GROUND = FiniteGroundSet(range(4))


@strat.composite
def finite_covers(draw):
    members = draw(
        strat.lists(strat.frozensets(strat.integers(0, 3), min_size=1), min_size=1, max_size=5)
    )
    missing = set(range(4)) - set().union(*members)
    members += [frozenset([p]) for p in sorted(missing)]
    return FiniteCover([ExplicitMember(m) for m in members], GROUND)


targets = strat.frozensets(strat.integers(0, 3))


def test_ground_set_rejects_empty_and_duplicates():
    with pytest.raises(InvalidSpaceError):
        FiniteGroundSet([])
    with pytest.raises(InvalidSpaceError):
        FiniteGroundSet([1, 1])


def test_cover_must_reach_every_point():
    with pytest.raises(InvalidSpaceError, match="misses"):
        explicit_space(range(3), [[[0], [1]]])


def test_points_sort_integers_before_tuples_and_tuples_shortlex():
    assert canonical_order([(1,), 2, (0, 0), 0]) == [0, 2, (1,), (0, 0)]
    assert parse_point(format_point(((1, 2), 3))) == ((1, 2), 3)


def test_certificate_members_are_canonical():
    certificate = Certificate(0, (3, 1, 2, 1))
    assert certificate.members == (1, 2, 3)
    assert len(certificate) == 3
    with pytest.raises(CertificateError):
        certificate.merge(Certificate(1, (0,)))


def test_bounded_by_prefers_smallest_then_first(square):
    cover = square.cover(0)
    certificate = bounded_by(cover, range(4))
    assert certificate.members == (0, 2)
    assert bounded_by(cover, range(4), budget=1) is None
    assert bounded_by(cover, [1, 2], budget=1).members == (1,)


def test_bounded_by_empty_target_needs_no_members(square):
    assert bounded_by(square.cover(0), [], budget=0) == Certificate(0, ())
    assert bounded_by(square.cover(0), [0], budget=0) is None


def test_bounded_by_on_lazy_lattice_cover():
    space = lattice_metric_multicover(1, [2], probe_box=3)
    certificate = bounded_by(space.cover(0), [(0,), (1,), (2,)])
    assert certificate.members == ((1,),)


def test_covered_points_honours_support(square):
    cover = square.cover(0)
    assert covered_points(cover, Certificate(0, (0,)), range(4)) == {0, 1}
    assert covered_points(cover, Certificate(0, (0,), frozenset([1])), range(4)) == {1}


def test_unbounded_witness_is_smallest_failing_subset():
    cover = singletons(3).cover(0)
    assert unbounded_witness(cover, range(3), budget=2) == frozenset({0, 1, 2})
    assert unbounded_witness(cover, range(3), budget=3) is None


def test_restrict_keeps_nonempty_traces_with_origins(square):
    part = restrict(square, [0, 1])
    cover = part.cover(0)
    assert [cover.member_points(i) for i in cover.indices()] == [{0, 1}, {1}, {0}]
    assert [cover.origin(i) for i in cover.indices()] == [0, 1, 3]
    assert part.name == "square|2"
    assert part.parent is square


def test_restrict_lazy_cover_deduplicates_traces():
    space = lattice_metric_multicover(1, [2], probe_box=3)
    cover = restrict(space, [(0,), (1,)]).cover(0)
    assert [cover.origin(i) for i in cover.indices()] == [(-1,), (0,), (2,)]


def test_restrict_rejects_foreign_points(square):
    with pytest.raises(InvalidSpaceError):
        restrict(square, [7])
    with pytest.raises(InvalidSpaceError):
        restrict(square, [])


def test_finite_product_indexes_rectangles():
    product = product_space(singletons(2, "x"), singletons(3, "y"))
    assert product.is_finite
    assert len(product.ground) == 6
    assert len(product.multicover) == 1
    cover = product.cover(0)
    assert cover.member_points(1 * 3 + 2) == {(1, 2)}
    assert product.factors[0].name == "x"


def test_coarser_than_on_layered_covers(layered):
    fine, _, whole = layered.multicover
    assert coarser_than(fine, whole).is_yes
    assert coarser_than(whole, fine).is_yes
    refuted = coarser_than(fine, whole, search_bound=2)
    assert refuted.is_no
    assert refuted.evidence == {"member": 0, "size": 3, "search_bound": 2}


def test_multicover_checks(layered):
    assert equivalent_multicovers(layered.multicover, layered.multicover).is_yes
    assert is_centered(layered.multicover).is_yes
    assert is_omega_bounded(layered).is_yes


def test_totally_bounded_reports_smallest_unbounded_subset(layered):
    assert is_totally_bounded(layered).is_yes
    result = is_totally_bounded(layered, budget=1)
    assert result.is_no
    assert result.evidence == {"cover": 0, "witness": [0, 1]}


def test_tribool_conjunction_prefers_no_then_unknown():
    assert TriBool.all_of([TriBool.yes(), TriBool.unknown("later")]).is_unknown
    assert TriBool.all_of([TriBool.unknown(), TriBool.no("here")]).evidence == "here"
    assert bool(TriBool.all_of([TriBool.yes(1), TriBool.yes(2)]))


@hypothesis.given(finite_covers())
def test_refinement_is_reflexive(cover):
    assert coarser_than(cover, cover).is_yes


@hypothesis.given(finite_covers(), finite_covers(), finite_covers())
def test_refinement_is_transitive(u, v, w):
    if coarser_than(u, v).is_yes and coarser_than(v, w).is_yes:
        assert coarser_than(u, w).is_yes


@hypothesis.given(finite_covers(), targets, strat.integers(0, 4))
def test_bounded_by_is_monotone_in_the_budget(cover, target, budget):
    if bounded_by(cover, target, budget) is not None:
        assert bounded_by(cover, target, budget + 1) is not None


@hypothesis.given(finite_covers(), targets)
def test_certificates_contain_their_target(cover, target):
    certificate = bounded_by(cover, target)
    assert certificate is not None
    assert covered_points(cover, certificate, range(4)) >= target


@hypothesis.given(
    strat.frozensets(strat.integers(0, 2), min_size=1),
    strat.frozensets(strat.integers(0, 1), min_size=1),
)
def test_restriction_commutes_with_products(left_part, right_part):
    left = explicit_space(range(3), [[[0, 1], [1, 2]]], name="x")
    right = explicit_space(range(2), [[[0], [0, 1]]], name="y")
    pairs = [(x, y) for x in left_part for y in right_part]
    restricted = restrict(product_space(left, right), pairs).cover(0)
    factored = product_space(restrict(left, left_part), restrict(right, right_part)).cover(0)

    def traces(cover):
        return {cover.member_points(i) for i in cover.indices()}

    assert traces(restricted) == traces(factored)


NATURALS = LazyGroundSet(lambda p: isinstance(p, int) and p >= 0, count, [[0, 1, 2]], label="naturals")


def is_natural(n):
    return isinstance(n, int) and n >= 0


def window_cover(width, locate=True):
    """Windows {n, ..., n + width - 1} indexed by their left end."""

    def locator(point):
        return iter(range(max(0, point - width + 1), point + 1))

    return LazyCover(
        NATURALS,
        lambda n: ExplicitMember(frozenset(range(n, n + width))),
        is_natural,
        locator if locate else None,
        label=f"window<{width}>",
    )


def tiling_cover(offset):
    """Blocks {2n - offset, 2n + 1 - offset} cut down to the naturals."""
    return LazyCover(
        NATURALS,
        lambda n: ExplicitMember(frozenset(p for p in (2 * n - offset, 2 * n + 1 - offset) if p >= 0)),
        is_natural,
        lambda p: iter([(p + offset) // 2]),
        label=f"tiling<{offset}>",
        indexed_by_points=False,
    )


def test_centered_stays_undecided_when_a_candidate_is_undecided():
    # The pairs cover cannot locate its members, so bounding anything by it is undecided.
    multicover = Multicover([window_cover(1), window_cover(2, locate=False), window_cover(3)])
    result = is_centered(multicover, search_bound=2)
    assert result.is_unknown
    assert result.scope is Scope.PROBE


def test_lazy_refutations_are_not_exact():
    multicover = Multicover([tiling_cover(0), tiling_cover(1)])
    centered = is_centered(multicover, search_bound=1)
    assert centered.is_no
    assert centered.scope is Scope.PROBE
    assert centered.evidence == {"pair": (0, 1)}
    assert is_centered(multicover, search_bound=2).is_yes
    coarser = equivalent_multicovers(Multicover([tiling_cover(0)]), Multicover([tiling_cover(1)]), search_bound=1)
    assert coarser.is_no
    assert coarser.scope is Scope.PROBE


def test_lazy_cover_without_locator_logs_the_skipped_check(caplog):
    with caplog.at_level(logging.WARNING, logger="src.covers.cover"):
        window_cover(2, locate=False)
    assert "probe coverage is not checked" in caplog.text
