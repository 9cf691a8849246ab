"""
Witness constructions: transfer along maps, powers, proper ω-covers,
products, σ-bounded products and totally bounded decompositions.
"""

import logging
from typing import Any, List, Optional, Sequence, Tuple

from ..covers import Certificate, MulticoveredSpace, SpaceMap, bounded_by, covered_points
from ..covers.constructions import product_member_index
from ..covers.maps import MapKind
from ..errors import CertificateError, InvalidSpaceError
from .witness import PieceDecomposition, PowerWitness, WitnessClass, WitnessSequence

logger = logging.getLogger(__name__)


def _bounded_set(space: MulticoveredSpace, certificate: Certificate, points) -> frozenset:
    return covered_points(space.cover(certificate.cover_index), certificate, points)


def push_forward_witness(mapping: SpaceMap, witness: WitnessSequence) -> WitnessSequence:
    """
    Image witness f(B_0), f(B_1), ... along a uniformly bounded map.

    Round n's image is certified in the first target cover assigned to
    the source cover of B_n. The class survives when f reaches the whole
    target probe; otherwise it is downgraded to NONE with a warning.

    Raises:
        CertificateError: An image is not bounded in its target cover
    """
    if mapping.kind is not MapKind.UNIFORMLY_BOUNDED:
        raise InvalidSpaceError("Witnesses push forward along uniformly bounded maps only")
    domain = mapping.domain_points()
    items = []
    for n, certificate in enumerate(witness.certificates):
        targets = sorted(v for v, u in mapping.assign.items() if u == certificate.cover_index)
        if not targets:
            raise CertificateError(f"No target cover is assigned to source cover {certificate.cover_index}")
        target_index = targets[0]
        image = mapping.image(_bounded_set(mapping.source, certificate, domain))
        pushed = bounded_by(mapping.target.cover(target_index), image, cover_index=target_index)
        if pushed is None:
            raise CertificateError(f"Image of round {n} is not bounded in target cover {target_index}")
        items.append(pushed)
    klass = witness.klass
    if not mapping.is_onto(mapping.target.probe_points()):
        logger.warning(f"Map does not reach the probe of {mapping.target.name!r}; witness class dropped")
        klass = WitnessClass.NONE
    return WitnessSequence(
        tuple(items),
        klass,
        mapping.target,
        k=witness.k,
        start=witness.start,
        miss_budget=witness.miss_budget,
        min_occurrences=witness.min_occurrences,
    )


def scheepers_from_menger_powers(powers: Sequence[PowerWitness], space: MulticoveredSpace) -> WitnessSequence:
    """
    B_k = ⋃ B_{n,k} over the exponents n whose witness has started by round k.

    The witness for exponent n starts at round n - 1 and must cover the
    n-th power of the probe from there on. The result engulfs every subset
    of the probe with at most max(n) points.

    Raises:
        CertificateError: A power witness is malformed or does not cover its power
    """
    if not powers:
        raise CertificateError("At least one power witness is required")
    probe = space.probe_points()
    horizon = min(len(p.rounds) for p in powers)
    for power in powers:
        if any(len(certificates) != power.exponent for certificates in power.rounds):
            raise CertificateError(f"Power witness {power.exponent} has rounds of the wrong width")
        if not power.covers_power(probe, from_round=power.exponent - 1):
            raise CertificateError(f"Power witness {power.exponent} does not cover the probe power")
    items = []
    for k in range(horizon):
        merged: Optional[Certificate] = None
        for power in powers:
            if power.exponent - 1 > k:
                continue
            for certificate in power.rounds[k]:
                if merged is None:
                    merged = certificate
                elif certificate.cover_index != merged.cover_index:
                    _mismatch(k, merged, certificate)
                else:
                    merged = merged.merge(certificate)
        items.append(merged if merged is not None else Certificate(powers[0].rounds[k][0].cover_index, ()))
    exponent = max(p.exponent for p in powers)
    return WitnessSequence(tuple(items), WitnessClass.OMEGA, space, k=exponent)


def _mismatch(round_index: int, left: Certificate, right: Certificate) -> None:
    raise CertificateError(
        f"Round {round_index} mixes covers {left.cover_index} and {right.cover_index}"
    )


def menger_power_from_scheepers(
    witness: WitnessSequence,
    exponent: int,
    power_covers: Optional[Sequence[Tuple[int, ...]]] = None,
) -> PowerWitness:
    """
    Rectangles B_k^n from an ω-witness.

    Round k of the power game asks for a set bounded in u_{k,1} × ... ×
    u_{k,n}. B_k is bounded in its own cover u_k, which bounds every
    u_{k,i}, so B_k is re-certified in each coordinate cover.

    Raises:
        CertificateError: Some coordinate cover does not bound B_k
    """
    space = witness.space
    probe = space.probe_points()
    rounds = []
    for k, certificate in enumerate(witness.certificates):
        covers = power_covers[k] if power_covers is not None else (certificate.cover_index,) * exponent
        if len(covers) != exponent:
            raise CertificateError(f"Round {k} needs {exponent} coordinate covers")
        points = _bounded_set(space, certificate, probe)
        coordinates = []
        for cover_index in covers:
            if cover_index == certificate.cover_index:
                coordinates.append(certificate)
                continue
            recertified = bounded_by(space.cover(cover_index), points, cover_index=cover_index)
            if recertified is None:
                raise CertificateError(
                    f"Cover {certificate.cover_index} is not an upper bound of cover {cover_index} in round {k}"
                )
            coordinates.append(recertified)
        rounds.append(tuple(coordinates))
    power = PowerWitness(exponent, tuple(rounds), space)
    if not power.covers_power(probe):
        logger.warning(f"Power witness of exponent {exponent} does not cover the probe power")
    return power


def proper_omega_from_scheepers(
    stacks: Sequence[WitnessSequence],
    min_occurrences: Optional[int] = None,
) -> WitnessSequence:
    """
    B_n = ⋃_{k<=n} A_{k,n} from stacked ω-witnesses.

    Stack k plays from round k on: its item i is A_{k,k+i}. Each stack
    engulfs every small subset somewhere, so B_n engulfs it once per stack.
    """
    if not stacks:
        raise CertificateError("At least one stacked witness is required")
    t = min_occurrences or len(stacks)
    if t > len(stacks):
        logger.warning(f"Only {len(stacks)} stacks available; min occurrences reduced from {t}")
        t = len(stacks)
    space = stacks[0].space
    horizon = min(k + len(stack) for k, stack in enumerate(stacks))
    items: List[Certificate] = []
    for n in range(horizon):
        merged: Optional[Certificate] = None
        for k, stack in enumerate(stacks[: n + 1]):
            certificate = stack.certificates[n - k]
            if merged is None:
                merged = certificate
            elif certificate.cover_index != merged.cover_index:
                _mismatch(n, merged, certificate)
            else:
                merged = merged.merge(certificate)
        items.append(merged)
    k = min(stack.k for stack in stacks)
    return WitnessSequence(tuple(items), WitnessClass.PROPER_OMEGA, space, k=k, min_occurrences=t)


def hurewicz_product_witness(
    product: MulticoveredSpace,
    left: WitnessSequence,
    right: WitnessSequence,
) -> WitnessSequence:
    """
    C_n = A_n × B_n on the product space.

    Misses add up: a pair misses C_n when either coordinate misses, so the
    miss budget is f_a + f_b from the later start round.
    """
    if product.factors is None:
        raise InvalidSpaceError(f"{product.name!r} is not a product space")
    if left.klass is not WitnessClass.GAMMA or right.klass is not WitnessClass.GAMMA:
        raise ValueError("Product witnesses combine two γ-witnesses")
    horizon = min(len(left), len(right))
    if len(left) != len(right):
        logger.warning(f"Witness lengths {len(left)} and {len(right)} differ; truncating to {horizon}")
    right_size = len(product.factors[1].multicover)
    left_space, right_space = product.factors
    items = []
    for a, b in zip(left.certificates[:horizon], right.certificates[:horizon]):
        cover_index = a.cover_index * right_size + b.cover_index
        cover = product.cover(cover_index)
        members = tuple(
            product_member_index(cover, p, q, right_space.cover(b.cover_index))
            for p in a.members
            for q in b.members
        )
        support = None
        if a.support is not None and b.support is not None:
            support = frozenset((x, y) for x in a.support for y in b.support)
        items.append(Certificate(cover_index, members, support))
    return WitnessSequence(
        tuple(items),
        WitnessClass.GAMMA,
        product,
        start=max(left.start, right.start),
        miss_budget=left.miss_budget + right.miss_budget,
    )


def totally_bounded_decomposition(witness: WitnessSequence, probe=None) -> PieceDecomposition:
    """
    T_n = ⋂_{k in [n, L)} B_k over the probe.

    Each T_n lies inside every later bounded set, so it is bounded in all
    the tail covers; the pieces exhaust the probe when the witness is a
    γ-cover with no misses.

    Raises:
        ValueError: The witness allows misses or is not a γ-cover of the probe
    """
    if witness.klass is not WitnessClass.GAMMA or witness.miss_budget > 0:
        raise ValueError("Decomposition needs a γ-witness without misses")
    points = witness.probe_points(probe)
    if not witness.check(points):
        raise ValueError("Witness is not a γ-cover of the probe")
    sets = witness.sets(points)
    pieces = []
    for n in range(len(sets)):
        tail = frozenset(points)
        for later in sets[n:]:
            tail = frozenset(p for p in tail if p in later)
        pieces.append(tail)
    return PieceDecomposition(tuple(pieces), tuple(points))


def tails_contain_pieces(decomposition: PieceDecomposition, witness: WitnessSequence) -> bool:
    """Every T_n sits inside every bounded set from round n on."""
    sets = witness.sets(list(decomposition.probe))
    return all(
        all(p in later for p in piece)
        for n, piece in enumerate(decomposition.pieces)
        for later in sets[n:]
    )


def omega_engulfing_rounds(witness: WitnessSequence, subset: Sequence[Any]) -> List[int]:
    """Rounds whose bounded set contains every point of ``subset``."""
    sets = witness.sets(list(subset))
    return [n for n, bounded in enumerate(sets) if all(p in bounded for p in subset)]


__all__ = [
    "hurewicz_product_witness",
    "menger_power_from_scheepers",
    "omega_engulfing_rounds",
    "proper_omega_from_scheepers",
    "push_forward_witness",
    "scheepers_from_menger_powers",
    "tails_contain_pieces",
    "totally_bounded_decomposition",
]
