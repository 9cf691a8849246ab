"""
Boundedness: finding finite subfamilies of a cover that contain a set.

Candidate members are the ones meeting the target (for lazy covers, the
ones their locator reports). Small pools are searched exhaustively for
the smallest, lexicographically first certificate; larger pools take the
greedy answer when it fits the budget and otherwise fall back to an exact
search capped by ``exact_limit`` combinations.
"""

import logging
from itertools import combinations
from math import comb
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from ..errors import SearchBoundExceeded
from .cover import Certificate, Cover
from .points import canonical_order, point_key

logger = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 200_000
DEFAULT_CANDIDATE_LIMIT = 4096
# Unbounded searches on finite covers stay exact up to this many members.
EXACT_POOL_SIZE = 12

Pool = List[Tuple[Any, int]]


def covered_points(cover: Cover, certificate: Certificate, points: Iterable[Any]) -> frozenset:
    """Points of ``points`` inside the certificate's bounded set."""
    if certificate.support is not None:
        return frozenset(p for p in points if p in certificate.support)
    if cover.is_finite:
        ground = cover.ground
        mask = cover.union_mask(certificate.members)
        return frozenset(p for p in points if p in ground and mask >> ground.index(p) & 1)
    members = [cover.member(i) for i in certificate.members]
    return frozenset(p for p in points if any(p in m for m in members))


def candidate_pool(
    cover: Cover, target: Sequence[Any], candidate_limit: int = DEFAULT_CANDIDATE_LIMIT
) -> Pool:
    """Members meeting ``target`` with their trace masks over ``target``.

    Identical traces keep only the first index in index order.
    """
    if cover.is_finite:
        ground = cover.ground
        positions = [ground.index(p) for p in target]
        indexed = []
        for i, member_mask in enumerate(cover.masks):
            mask = 0
            for bit, pos in enumerate(positions):
                if member_mask >> pos & 1:
                    mask |= 1 << bit
            if mask:
                indexed.append((i, mask))
    else:
        seen = {}
        for point in target:
            for index in cover.indices_containing(point, limit=candidate_limit):
                if index not in seen:
                    member = cover.member(index)
                    mask = 0
                    for bit, other in enumerate(target):
                        if other in member:
                            mask |= 1 << bit
                    seen[index] = mask
        indexed = sorted(seen.items(), key=lambda item: point_key(item[0]))
    pool: Pool = []
    traces = set()
    for index, mask in indexed:
        if mask not in traces:
            traces.add(mask)
            pool.append((index, mask))
    return pool


def _exact_selection(pool: Pool, full: int, max_size: int, exact_limit: Optional[int]) -> Optional[Tuple[Any, ...]]:
    """Smallest, then lexicographically first, subfamily whose traces cover ``full``."""
    need = bin(full).count("1")
    widest = max((bin(mask).count("1") for _, mask in pool), default=0)
    union = 0
    for _, mask in pool:
        union |= mask
    if union != full:
        return None
    spent = 0
    for size in range(1, min(max_size, len(pool)) + 1):
        if size * widest < need:
            continue
        spent += comb(len(pool), size)
        if exact_limit is not None and spent > exact_limit:
            raise SearchBoundExceeded(
                f"Exact search needs more than {exact_limit} combinations (pool {len(pool)}, size {size})"
            )
        for chosen in combinations(pool, size):
            mask = 0
            for _, member_mask in chosen:
                mask |= member_mask
            if mask == full:
                return tuple(index for index, _ in chosen)
    return None


def greedy_selection(pool: Pool, full: int, limit: Optional[int] = None) -> Tuple[Tuple[Any, ...], int]:
    """Pick members covering the most uncovered bits, earliest index on ties.

    Returns the chosen indices and the bits they cover; stops at ``limit``
    members or when nothing new can be covered.
    """
    chosen: List[Tuple[Any, int]] = []
    covered = 0
    while covered != full and (limit is None or len(chosen) < limit):
        best = None
        best_gain = 0
        for index, mask in pool:
            gain = bin(mask & ~covered).count("1")
            if gain > best_gain:
                best, best_gain = (index, mask), gain
        if best is None:
            break
        chosen.append(best)
        covered |= best[1]
    # Drop members made redundant by later picks.
    for entry in list(reversed(chosen)):
        rest = 0
        for other in chosen:
            if other is not entry:
                rest |= other[1]
        if rest & covered == covered:
            chosen.remove(entry)
    return tuple(index for index, _ in chosen), covered


def bounded_by(
    cover: Cover,
    points: Iterable[Any],
    budget: Optional[int] = None,
    *,
    cover_index: int = 0,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    candidate_limit: int = DEFAULT_CANDIDATE_LIMIT,
) -> Optional[Certificate]:
    """
    Find a subfamily of at most ``budget`` members whose union contains ``points``.

    Args:
        cover: Cover to select members from
        points: Finite target set S
        budget: Maximum number of members, None for any finite number
        cover_index: Cover position recorded in the certificate
        exact_limit: Combination cap for exact search on large pools
        candidate_limit: Locator candidates considered per point

    Returns:
        Certificate, or None when no budget-legal subfamily exists

    Raises:
        SearchBoundExceeded: The search could not decide within its limits
    """
    target = canonical_order(set(points))
    if not target:
        return Certificate(cover_index, ())
    if budget == 0:
        return None
    pool = candidate_pool(cover, target, candidate_limit)
    full = (1 << len(target)) - 1
    union = 0
    for _, mask in pool:
        union |= mask
    if union != full:
        if cover.is_finite:
            return None
        raise SearchBoundExceeded(
            f"Cover {cover.label!r}: no located member contains some of {len(target)} points"
        )

    small = len(pool) <= EXACT_POOL_SIZE
    greedy, _ = greedy_selection(pool, full)
    if budget is None or len(greedy) <= budget:
        if small:
            greedy = _exact_selection(pool, full, len(greedy), None)
        return Certificate(cover_index, greedy)
    # Greedy overshoots the budget: fall back to exhaustive search.
    chosen = _exact_selection(pool, full, budget, None if small else exact_limit)
    if chosen is None:
        if not cover.is_finite and len(pool) >= candidate_limit:
            raise SearchBoundExceeded(f"Cover {cover.label!r}: candidate pool truncated at {candidate_limit}")
        return None
    return Certificate(cover_index, chosen)


def unbounded_witness(
    cover: Cover,
    points: Iterable[Any],
    budget: int,
    effort: int = 5000,
) -> Optional[frozenset]:
    """Smallest, lexicographically first subset of ``points`` with no budget-legal certificate.

    Tries at most ``effort`` subsets; returns None when none was found.
    """
    target = canonical_order(set(points))
    tried = 0
    for size in range(1, len(target) + 1):
        for subset in combinations(target, size):
            tried += 1
            if tried > effort:
                return None
            if bounded_by(cover, subset, budget) is None:
                return frozenset(subset)
    return None
