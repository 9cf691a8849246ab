"""
Restriction and products of covers, multicovers and spaces.
"""

import logging
from itertools import islice, product
from typing import Any, Dict, Iterable, Iterator, Optional, Tuple

from ..errors import InvalidSpaceError
from .bounded import DEFAULT_CANDIDATE_LIMIT
from .cover import Cover, FiniteCover, LazyCover, Multicover, MulticoveredSpace
from .ground import FiniteGroundSet, GroundSet, LazyGroundSet
from .members import ExplicitMember, ProductMember
from .points import canonical_order, point_key

logger = logging.getLogger(__name__)


def restrict_cover(
    cover: Cover,
    ground: FiniteGroundSet,
    candidate_limit: int = DEFAULT_CANDIDATE_LIMIT,
) -> FiniteCover:
    """The traces {U ∩ Z : U ∈ u} on a finite subset Z, empty traces dropped.

    Each member records the parent index it came from. For lazy covers
    distinct traces are collected from the located candidates of every
    point, keeping the smallest parent index per trace.
    """
    points = ground.points
    if cover.is_finite:
        traces = []
        for index in cover.indices():
            member = cover.member(index)
            trace = frozenset(p for p in points if p in member)
            if trace:
                traces.append((index, trace))
    else:
        found: Dict[Any, frozenset] = {}
        for point in points:
            for index in cover.indices_containing(point, limit=candidate_limit):
                if index not in found:
                    member = cover.member(index)
                    found[index] = frozenset(p for p in points if p in member)
        traces = []
        seen = set()
        for index in sorted(found, key=point_key):
            trace = found[index]
            if trace and trace not in seen:
                seen.add(trace)
                traces.append((index, trace))
    members = [ExplicitMember(trace) for _, trace in traces]
    origins = [index for index, _ in traces]
    return FiniteCover(members, ground, label=f"{cover.label}|Z", origins=origins)


def restrict(
    space: MulticoveredSpace,
    subset: Iterable[Any],
    candidate_limit: int = DEFAULT_CANDIDATE_LIMIT,
) -> MulticoveredSpace:
    """
    Restrict every cover of a space to a finite subset Z.

    Raises:
        InvalidSpaceError: Z is empty or leaves the ground set
    """
    points = canonical_order(set(subset))
    if not points:
        raise InvalidSpaceError("Cannot restrict to an empty set")
    for point in points:
        if point not in space.ground:
            raise InvalidSpaceError(f"Point {point!r} is outside {space.name!r}")
    ground = FiniteGroundSet(points)
    covers = [restrict_cover(cover, ground, candidate_limit) for cover in space.multicover]
    multicover = Multicover(covers, space.multicover.centered_witness)
    logger.debug(f"Restricted {space.name!r} to {len(points)} points")
    return MulticoveredSpace(
        ground,
        multicover,
        name=f"{space.name}|{len(points)}",
        group=space.group,
        parent=space,
    )


def product_ground(left: GroundSet, right: GroundSet) -> GroundSet:
    """Cartesian product X × Y with pairs as points."""
    if left.is_finite and right.is_finite:
        return FiniteGroundSet(product(left.points, right.points))

    def membership(point: Any) -> bool:
        return isinstance(point, tuple) and len(point) == 2 and point[0] in left and point[1] in right

    def enumerator() -> Iterator[Tuple[Any, Any]]:
        # Diagonal sweep over growing prefixes of both factors.
        size = 1
        emitted = set()
        while True:
            xs = list(left.enumerate(size))
            ys = list(right.enumerate(size))
            for pair in product(xs, ys):
                if pair not in emitted:
                    emitted.add(pair)
                    yield pair
            size *= 2

    left_probes = left.probes if isinstance(left, LazyGroundSet) else (frozenset(left.points),)
    right_probes = right.probes if isinstance(right, LazyGroundSet) else (frozenset(right.points),)
    probes = [frozenset(product(a, b)) for a in left_probes for b in right_probes]
    return LazyGroundSet(membership, enumerator, probes, label=f"({left!r})x({right!r})")


def product_cover(u: Cover, v: Cover, ground: Optional[GroundSet] = None) -> Cover:
    """u·v = {U × V : U ∈ u, V ∈ v}.

    Finite products index member (i, j) as i·|v| + j; lazy products use
    the pair (i, j) itself.
    """
    ground = ground or product_ground(u.ground, v.ground)
    label = f"{u.label}x{v.label}"
    if u.is_finite and v.is_finite and ground.is_finite:
        members = [ProductMember(u.member(i), v.member(j)) for i in u.indices() for j in v.indices()]
        return FiniteCover(members, ground, label=label)

    def factory(index: Tuple[Any, Any]) -> ProductMember:
        return ProductMember(u.member(index[0]), v.member(index[1]))

    def is_index(index: Any) -> bool:
        return isinstance(index, tuple) and len(index) == 2 and u.is_index(index[0]) and v.is_index(index[1])

    def locator(point: Tuple[Any, Any]) -> Iterator[Tuple[Any, Any]]:
        lefts = list(islice(u.indices_containing(point[0]), DEFAULT_CANDIDATE_LIMIT))
        rights = list(islice(v.indices_containing(point[1]), DEFAULT_CANDIDATE_LIMIT))
        return iter(product(lefts, rights))

    return LazyCover(ground, factory, is_index, locator, label=label)


def product_multicover(lam: Multicover, nu: Multicover, ground: GroundSet) -> Multicover:
    """Positional pairing of covers: flat index i·|ν| + j holds λ[i]·ν[j]."""
    covers = [product_cover(u, v, ground) for u in lam for v in nu]
    return Multicover(covers)


def product_space(left: MulticoveredSpace, right: MulticoveredSpace) -> MulticoveredSpace:
    """(X × Y, λ·ν) with the factor spaces recorded."""
    ground = product_ground(left.ground, right.ground)
    multicover = product_multicover(left.multicover, right.multicover, ground)
    return MulticoveredSpace(ground, multicover, name=f"{left.name}x{right.name}", factors=(left, right))


def product_member_index(cover: Cover, left_index: Any, right_index: Any, right_cover: Cover) -> Any:
    """Index of the rectangle U_left × V_right inside a product cover."""
    if cover.is_finite:
        return left_index * len(right_cover) + right_index
    return (left_index, right_index)


