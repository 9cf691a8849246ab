"""
Products with σ-bounded factors Y = K_0 ∪ K_1 ∪ ... (K_n increasing and bounded).
"""

import logging
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence

from ..covers import Certificate, MulticoveredSpace, SpaceMap, bounded_by, canonical_order, covered_points, restrict
from ..covers.constructions import product_member_index
from ..covers.maps import MapKind
from ..errors import CertificateError, InvalidSpaceError
from ..games.strategy import Strategy
from .strategies import PullbackStrategy, UnionStrategy
from .witness import WitnessClass, WitnessSequence

logger = logging.getLogger(__name__)


def _check_pieces(product: MulticoveredSpace, pieces: Sequence[FrozenSet[Any]]) -> List[FrozenSet[Any]]:
    if product.factors is None:
        raise InvalidSpaceError(f"{product.name!r} is not a product space")
    if not pieces:
        raise ValueError("At least one piece of Y is required")
    result = [frozenset(piece) for piece in pieces]
    right = product.factors[1].ground
    for n, piece in enumerate(result):
        if not piece:
            raise ValueError(f"Piece {n} is empty")
        if any(y not in right for y in piece):
            raise InvalidSpaceError(f"Piece {n} leaves {product.factors[1].name!r}")
        if n and not result[n - 1] <= piece:
            raise ValueError(f"Pieces must increase: piece {n} drops points of piece {n - 1}")
    return result


def default_projection_assign(product: MulticoveredSpace) -> Dict[int, int]:
    """Product cover i·|ν| + j projects to cover i of X."""
    right_size = len(product.factors[1].multicover)
    return {c: c // right_size for c in range(len(product.multicover))}


def sigma_bounded_product_strategy(
    product: MulticoveredSpace,
    strategy: Strategy,
    pieces: Sequence[FrozenSet[Any]],
    assign: Optional[Mapping[int, int]] = None,
    budgets: Sequence[Optional[int]] = (),
    horizons: Optional[Sequence[int]] = None,
) -> UnionStrategy:
    """
    Strategy on X × Y from a strategy on X.

    Piece n is X × K_n cut down to the X probe. Its projection to X is
    perfect with the given cover assignment, so Θ pulls back to each
    piece; piece n starts at round n and the piece answers are united on
    the product.

    Args:
        product: Product space X × Y
        strategy: Strategy on X
        pieces: Increasing bounded pieces K_n of Y
        assign: Product cover -> X cover for the projections
        budgets: Declared budgets of each pulled back strategy
        horizons: Rounds each piece plays; unlimited when omitted

    Raises:
        InvalidSpaceError: The product or the perfectness data is malformed
    """
    checked = _check_pieces(product, pieces)
    left = product.factors[0]
    if assign is None:
        assign = default_projection_assign(product)
    probe = left.probe_points()
    restricted = []
    pulled = []
    for n, piece in enumerate(checked):
        space = restrict(product, [(x, y) for x in probe for y in canonical_order(piece)])
        mapping = SpaceMap(lambda pair: pair[0], space, left, MapKind.PERFECT, dict(assign))
        restricted.append(space)
        pulled.append(PullbackStrategy(mapping, strategy, budgets))
        logger.debug(f"Piece {n}: {len(space.probe_points())} points")
    return UnionStrategy(pulled, restricted, horizons)


def _rectangles(
    product: MulticoveredSpace,
    certificate: Certificate,
    piece: FrozenSet[Any],
    y_cover: int,
    probe: Sequence[Any],
) -> Certificate:
    left, right = product.factors
    right_size = len(right.multicover)
    right_cover = right.cover(y_cover)
    bounding = bounded_by(right_cover, piece, cover_index=y_cover)
    if bounding is None:
        raise CertificateError(f"Piece of {len(piece)} points is not bounded in cover {y_cover} of Y")
    cover_index = certificate.cover_index * right_size + y_cover
    cover = product.cover(cover_index)
    members = tuple(
        product_member_index(cover, p, q, right_cover) for p in certificate.members for q in bounding.members
    )
    xs = covered_points(left.cover(certificate.cover_index), certificate, probe)
    support = frozenset((x, y) for x in xs for y in piece)
    return Certificate(cover_index, members, support)


def sigma_bounded_product_witness(
    product: MulticoveredSpace,
    witness: Any,
    pieces: Sequence[FrozenSet[Any]],
    y_cover: int = 0,
) -> WitnessSequence:
    """
    Witness on X × Y from a witness on X.

    γ and proper ω witnesses give C_n = B_n × K_n. Cover witnesses come as
    one stack per piece (stack k answers from round k on) and give
    C_n = ⋃_{k<=n} B^k_n × K_k.

    Args:
        product: Product space X × Y
        witness: A WitnessSequence, or a list of per-piece stacks for covers
        pieces: Increasing bounded pieces K_n of Y
        y_cover: Cover of Y the pieces are certified in
    """
    checked = _check_pieces(product, pieces)
    probe = product.factors[0].probe_points()
    if isinstance(witness, WitnessSequence):
        return _tail_witness(product, witness, checked, y_cover, probe)
    stacks = list(witness)
    if len(stacks) > len(checked):
        raise ValueError(f"{len(stacks)} stacks for {len(checked)} pieces")
    for stack in stacks:
        if stack.klass is not WitnessClass.COVER:
            raise ValueError("Per-piece stacks must be cover witnesses")
    horizon = min(k + len(stack) for k, stack in enumerate(stacks))
    items = []
    for n in range(horizon):
        merged: Optional[Certificate] = None
        for k, stack in enumerate(stacks[: n + 1]):
            part = _rectangles(product, stack.certificates[n - k], checked[k], y_cover, probe)
            if merged is None:
                merged = part
            elif part.cover_index != merged.cover_index:
                raise CertificateError(f"Stacks disagree on the cover of round {n}")
            else:
                merged = merged.merge(part)
        items.append(merged)
    return WitnessSequence(tuple(items), WitnessClass.COVER, product)


def _tail_witness(
    product: MulticoveredSpace,
    witness: WitnessSequence,
    pieces: List[FrozenSet[Any]],
    y_cover: int,
    probe: Sequence[Any],
) -> WitnessSequence:
    if witness.klass is WitnessClass.GAMMA:
        klass = WitnessClass.GAMMA
    elif witness.klass is WitnessClass.PROPER_OMEGA:
        klass = WitnessClass.OMEGA
    else:
        raise ValueError(f"Tail products need a γ or proper ω witness, not {witness.klass.value}")
    if len(witness) > len(pieces):
        logger.warning(f"Only {len(pieces)} pieces for {len(witness)} rounds; the last piece repeats")
    items = tuple(
        _rectangles(product, certificate, pieces[min(n, len(pieces) - 1)], y_cover, probe)
        for n, certificate in enumerate(witness.certificates)
    )
    # A point of K_m can miss the first m rounds on top of its X misses.
    right_probe = product.factors[1].probe_points()
    entry = next(
        (n for n, piece in enumerate(pieces) if all(y in piece for y in right_probe)),
        len(pieces),
    )
    return WitnessSequence(
        items,
        klass,
        product,
        k=witness.k,
        start=witness.start,
        miss_budget=witness.miss_budget + entry,
    )


__all__ = [
    "default_projection_assign",
    "sigma_bounded_product_strategy",
    "sigma_bounded_product_witness",
]
