"""
The refinement preorder on covers and the checks built on it.

u ≺ v holds when every v-bounded set is u-bounded. It suffices to bound
every single member of v by u: certificates of a finite union of
v-members are unions of the per-member certificates.
"""

import logging
from typing import Any, Iterable, Optional, Sequence

from ..errors import SearchBoundExceeded
from .bounded import DEFAULT_EXACT_LIMIT, bounded_by, unbounded_witness
from .cover import Cover, Multicover, MulticoveredSpace
from .points import format_point
from .tribool import Scope, TriBool

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 32


def _member_points(cover: Cover, index: Any, probe: Sequence[Any]) -> Optional[frozenset]:
    if cover.is_finite:
        return cover.member_points(index)
    listed = cover.member(index).points()
    if listed is None:
        member = cover.member(index)
        return frozenset(p for p in probe if p in member)
    return listed


def coarser_than(
    u: Cover,
    v: Cover,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    probe: Optional[Iterable[Any]] = None,
) -> TriBool:
    """
    Decide u ≺ v by bounding each member of v with at most ``search_bound`` members of u.

    On finite covers every member of v is checked. Every finite member is a
    finite union of members of u, so a finite No only says that some member
    needs more than ``search_bound`` members; the evidence carries the bound.
    On lazy covers the members indexed by probe points are checked.

    Returns:
        Yes with per-member certificates, No with an unboundable member,
        Unknown when a lazy search gave up
    """
    exact = u.is_finite and v.is_finite
    scope = Scope.EXACT if exact else Scope.PROBE
    points = list(probe) if probe is not None else list(v.ground.probe_points())
    certificates = {}
    for index in v.representative_indices(points):
        target = _member_points(v, index, points)
        try:
            certificate = bounded_by(u, target, search_bound)
        except SearchBoundExceeded as e:
            logger.debug(f"coarser_than({u.label}, {v.label}) undecided at member {index!r}: {e}")
            return TriBool.unknown({"member": format_point(index), "reason": str(e)})
        if certificate is None:
            evidence = {"member": format_point(index), "size": len(target), "search_bound": search_bound}
            return TriBool.no(evidence, scope)
        certificates[index] = certificate
    return TriBool.yes(certificates, scope)


def multicover_coarser(
    lam: Multicover, nu: Multicover, search_bound: int = DEFAULT_SEARCH_BOUND, probe=None
) -> TriBool:
    """λ ≺ ν: every u in λ lies below some v in ν."""
    scope = Scope.EXACT if lam.is_finite and nu.is_finite else Scope.PROBE
    results = []
    for i, u in enumerate(lam):
        found = None
        pending = None
        for j, v in enumerate(nu):
            result = coarser_than(u, v, search_bound, probe)
            if result.is_yes:
                found = TriBool.yes({"cover": i, "bound": j}, result.scope)
                break
            if result.is_unknown and pending is None:
                pending = result
        if found is None:
            found = pending if pending is not None else TriBool.no({"cover": i}, scope)
        results.append(found)
    return TriBool.all_of(results)


def equivalent_multicovers(
    lam: Multicover, nu: Multicover, search_bound: int = DEFAULT_SEARCH_BOUND, probe=None
) -> TriBool:
    """λ ≺ ν and ν ≺ λ."""
    forward = multicover_coarser(lam, nu, search_bound, probe)
    if forward.is_no:
        return forward
    backward = multicover_coarser(nu, lam, search_bound, probe)
    return TriBool.all_of([forward, backward])


def is_centered(multicover: Multicover, search_bound: int = DEFAULT_SEARCH_BOUND) -> TriBool:
    """
    Every pair of covers has an upper bound in the multicover.

    Pairs suffice for a finite list: an upper bound of a pair and a third
    cover bounds all three. The declared witness (or the later cover) is
    tried first.
    """
    scope = Scope.EXACT if multicover.is_finite else Scope.PROBE
    results = []
    size = len(multicover)
    for i in range(size):
        for j in range(i + 1, size):
            preferred = multicover.centered_witness.get((i, j), max(i, j))
            order = [preferred] + [k for k in range(size) if k != preferred]
            verdict = None
            pending = None
            for k in order:
                upper = multicover[k]
                left = coarser_than(multicover[i], upper, search_bound)
                if not left.is_yes:
                    if left.is_unknown and pending is None:
                        pending = left
                    continue
                right = coarser_than(multicover[j], upper, search_bound)
                if right.is_yes:
                    verdict = TriBool.yes({"pair": (i, j), "bound": k}, right.scope)
                    break
                if right.is_unknown and pending is None:
                    pending = right
            if verdict is None:
                # An undecided candidate keeps the pair undecided.
                verdict = pending if pending is not None else TriBool.no({"pair": (i, j)}, scope)
            results.append(verdict)
    return TriBool.all_of(results)


def is_totally_bounded(
    space: MulticoveredSpace, budget: Optional[int] = None, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> TriBool:
    """The ground set (or its probe) is bounded in every cover."""
    points = space.probe_points()
    scope = Scope.EXACT if space.is_finite else Scope.PROBE
    certificates = []
    for index, cover in enumerate(space.multicover):
        try:
            certificate = bounded_by(cover, points, budget, cover_index=index, exact_limit=exact_limit)
        except SearchBoundExceeded as e:
            return TriBool.unknown({"cover": index, "reason": str(e)})
        if certificate is None:
            try:
                witness = unbounded_witness(cover, points, budget if budget is not None else len(points))
            except SearchBoundExceeded:
                witness = None
            evidence = {"cover": index}
            if witness is not None:
                evidence["witness"] = [format_point(p) for p in sorted(witness, key=points.index)]
            return TriBool.no(evidence, scope)
        certificates.append(certificate)
    return TriBool.yes(certificates, scope)


def is_omega_bounded(space: MulticoveredSpace) -> TriBool:
    """Every cover has a countable subcover.

    Finite covers are their own subcover; lazy covers are indexed by an
    enumerable point universe, so their index set is countable.
    """
    if space.is_finite:
        return TriBool.yes()
    for index, cover in enumerate(space.multicover):
        if cover.is_finite:
            continue
        if not cover.indexed_by_points:
            return TriBool.unknown({"cover": index, "reason": "index set is not enumerable"})
    return TriBool.yes({"countable_index_sets": len(space.multicover)})
