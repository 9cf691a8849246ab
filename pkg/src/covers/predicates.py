"""
Cover-class predicates over a finite probe.

A family is any sequence of containers supporting ``in``: point sets,
cover members, or played bounded sets.
"""

from collections import Counter
from itertools import combinations_with_replacement
from typing import Any, Container, Dict, Iterable, Sequence


def signatures(family: Sequence[Container], probe: Iterable[Any]) -> Dict[Any, int]:
    """Bit n of a point's signature is set when family[n] contains it."""
    result = {}
    for point in probe:
        sig = 0
        for n, member in enumerate(family):
            if point in member:
                sig |= 1 << n
        result[point] = sig
    return result


def is_cover(family: Sequence[Container], probe: Iterable[Any]) -> bool:
    """Every probe point lies in some family member."""
    return all(any(point in member for member in family) for point in probe)


def min_engulfing(family: Sequence[Container], probe: Iterable[Any], k: int) -> int:
    """Fewest family members containing a single subset of the probe of size <= k.

    Points with equal signatures are interchangeable, so subsets are
    enumerated as multisets of distinct signatures. Returns -1 for an
    empty probe (nothing to engulf).
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    counts = Counter(signatures(family, probe).values())
    total = sum(counts.values())
    if total == 0:
        return -1
    size = min(k, total)
    distinct = sorted(counts)
    best = len(family)
    for chosen in combinations_with_replacement(distinct, size):
        usage = Counter(chosen)
        if any(usage[sig] > counts[sig] for sig in usage):
            continue
        common = -1
        for sig in chosen:
            common &= sig
        engulfing = bin(common).count("1")
        if engulfing < best:
            best = engulfing
            if best == 0:
                break
    return best


def is_omega_cover(family: Sequence[Container], probe: Iterable[Any], k: int) -> bool:
    """Every subset of the probe with at most k points lies in one member."""
    return min_engulfing(family, probe, k) != 0


def is_proper_omega_cover(
    family: Sequence[Container], probe: Iterable[Any], k: int, min_occurrences: int = 2
) -> bool:
    """Every subset of the probe with at most k points lies in at least t members."""
    if min_occurrences < 1:
        raise ValueError(f"min_occurrences must be positive, got {min_occurrences}")
    found = min_engulfing(family, probe, k)
    return found == -1 or found >= min_occurrences


def gamma_misses(family: Sequence[Container], probe: Iterable[Any], start: int = 0) -> Dict[Any, int]:
    """Per-point count of indices n >= start with the point outside family[n]."""
    tail = family[start:]
    return {point: sum(1 for member in tail if point not in member) for point in probe}


def is_gamma_cover(
    family: Sequence[Container], probe: Iterable[Any], start: int = 0, miss_budget: int = 0
) -> bool:
    """Every probe point is in family[n] for all n in [start, len) but at most f of them."""
    if not 0 <= start < len(family):
        raise ValueError(f"start round {start} outside a family of length {len(family)}")
    if miss_budget < 0:
        raise ValueError("miss budget must be nonnegative")
    return all(misses <= miss_budget for misses in gamma_misses(family, probe, start).values())
