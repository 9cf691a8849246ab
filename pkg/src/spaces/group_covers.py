"""
Translate multicovers of groups: λ_L, λ_R, λ_Join and λ_Meet.

Word balls U_r = {g : |g| <= r} stand in for the neighborhoods of the
identity; the cover for radius r is {gU_r}, {U_r g}, {gU_r ∩ U_r g} or
{U_r g U_r} with members indexed by g.
"""

import logging
from typing import Any, Iterator, Sequence

from ..covers import (
    Cover,
    FiniteCover,
    FiniteGroundSet,
    GroundSet,
    LazyCover,
    LazyGroundSet,
    Multicover,
    MulticoveredSpace,
    Side,
    TranslateMember,
)
from ..errors import InvalidSpaceError
from .groups import Group, LatticeGroup
from .metric import DEFAULT_PROBE_BOX

logger = logging.getLogger(__name__)

DEFAULT_WORD_LENGTH = 5


def group_ground(
    group: Group,
    probe=None,
    probe_box: int = DEFAULT_PROBE_BOX,
    word_length: int = DEFAULT_WORD_LENGTH,
) -> GroundSet:
    """Finite groups are explicit; lattices probe a box, free groups a word ball."""
    if group.is_finite:
        return FiniteGroundSet(group.elements())
    if probe is None:
        if isinstance(group, LatticeGroup):
            probe = group.box(probe_box)
        else:
            probe = list(group.ball(word_length))
    return LazyGroundSet(group.contains, group.enumerate, [probe], label=group.name)


def translate_cover(group: Group, ground: GroundSet, radius: int, side: Side) -> Cover:
    """The cover of ``ground`` by ``side`` translates of the radius-r word ball."""
    side = Side(side)
    label = f"{side.value}[{radius}]"
    if group.is_finite:
        members = [TranslateMember(g, radius, group, side) for g in ground.points]
        return FiniteCover(members, ground, label=label)

    def factory(element):
        return TranslateMember(element, radius, group, side)

    def locator(point) -> Iterator[Any]:
        # The ball is symmetric: y ∈ gU iff g ∈ yU, y ∈ Ug iff g ∈ Uy.
        if side is Side.RIGHT:
            return (group.multiply(u, point) for u in group.ball(radius))
        return (group.multiply(point, u) for u in group.ball(radius))

    return LazyCover(ground, factory, group.contains, locator, label=label)


def group_multicover(group: Group, radii: Sequence[int], side: Side, ground: GroundSet) -> Multicover:
    """One translate cover per radius; radii strictly decrease, so later covers bound earlier ones."""
    values = [int(r) for r in radii]
    if not values:
        raise InvalidSpaceError("At least one neighborhood radius is required")
    if any(r < 0 for r in values):
        raise InvalidSpaceError("Neighborhood radii must be nonnegative")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise InvalidSpaceError("Neighborhood radii must be strictly decreasing")
    covers = [translate_cover(group, ground, r, side) for r in values]
    witness = {(i, j): j for i in range(len(covers)) for j in range(i + 1, len(covers))}
    return Multicover(covers, witness)


def group_space(
    group: Group,
    radii: Sequence[int],
    side: Side = Side.LEFT,
    probe=None,
    probe_box: int = DEFAULT_PROBE_BOX,
    word_length: int = DEFAULT_WORD_LENGTH,
) -> MulticoveredSpace:
    """(G, λ_side(G)) for the neighborhood radii given."""
    side = Side(side)
    ground = group_ground(group, probe, probe_box, word_length)
    multicover = group_multicover(group, radii, side, ground)
    logger.debug(f"Built {group.name} {side.value}-multicover with radii {list(radii)}")
    return MulticoveredSpace(ground, multicover, name=f"{group.name}:{side.value}", group=group)


def neighborhood_radius(space: MulticoveredSpace, cover_index: int) -> int:
    """Radius of the word ball behind a translate cover."""
    cover = space.cover(cover_index)
    sample = cover.member(cover.ground.probe_points()[0])
    if not isinstance(sample, TranslateMember):
        raise InvalidSpaceError(f"Cover {cover_index} of {space.name!r} is not a translate cover")
    return sample.radius
