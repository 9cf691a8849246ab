"""
Strategy combinators: union over pieces, γ-upgrade, products and pullbacks.
"""

import logging
from itertools import combinations
from math import comb
from typing import Any, Dict, Optional, Sequence

from ..covers import Certificate, MulticoveredSpace, SpaceMap, bounded_by
from ..covers.constructions import product_member_index
from ..covers.maps import MapKind
from ..errors import CertificateError, InvalidSpaceError
from ..games.strategy import History, Strategy

logger = logging.getLogger(__name__)

MAX_UPGRADE_HORIZON = 12


def lift_certificate(piece: MulticoveredSpace, certificate: Certificate) -> Certificate:
    """Translate a certificate on a restricted space back to its parent's member indices."""
    cover = piece.cover(certificate.cover_index)
    origins = tuple(cover.origin(i) for i in certificate.members)
    if any(origin is None for origin in origins):
        raise CertificateError(f"Cover {certificate.cover_index} of {piece.name!r} carries no origins")
    return Certificate(certificate.cover_index, origins)


def _sum_budgets(values) -> Optional[int]:
    total = 0
    for value in values:
        if value is None:
            return None
        total += value
    return total


class UnionStrategy(Strategy):
    """
    Θ(u_0..u_n) = ⋃_{k<=n} Θ_k(u_k..u_n) for strategies on pieces A_k.

    Piece strategies may live on restricted spaces; their certificates are
    lifted to the parent through member origins.

    Args:
        strategies: Θ_k, one per piece
        pieces: Restricted space of each piece, or None for strategies
            already on the full space
        horizons: Rounds each piece strategy plays; unlimited when omitted
    """

    name = "union"

    def __init__(
        self,
        strategies: Sequence[Strategy],
        pieces: Optional[Sequence[Optional[MulticoveredSpace]]] = None,
        horizons: Optional[Sequence[int]] = None,
    ):
        super().__init__()
        if not strategies:
            raise ValueError("A union needs at least one piece strategy")
        self.strategies = tuple(strategies)
        self.pieces = tuple(pieces) if pieces is not None else (None,) * len(self.strategies)
        self.horizons = tuple(horizons) if horizons is not None else None
        if len(self.pieces) != len(self.strategies):
            raise ValueError("One piece per strategy is required")

    def _active(self, round_index: int):
        for k, strategy in enumerate(self.strategies):
            if k > round_index:
                break
            if self.horizons is not None and round_index - k >= self.horizons[k]:
                continue
            yield k, strategy

    def respond(self, history: History) -> Certificate:
        n = len(history) - 1
        result = Certificate(history[-1], ())
        for k, strategy in self._active(n):
            certificate = strategy(history[k:])
            piece = self.pieces[k]
            if piece is not None:
                certificate = lift_certificate(piece, certificate)
            result = result.merge(Certificate(certificate.cover_index, certificate.members))
        return result

    def budget(self, round_index: int) -> Optional[int]:
        return _sum_budgets(s.budget(round_index - k) for k, s in self._active(round_index))


class GammaUpgradedStrategy(Strategy):
    """
    Θ₁(u_0..u_n) = ⋃ Θ(u_{i_0}, ..., u_{i_j}, u_n) over increasing i_0 < ... < i_j < n.

    If Θ wins every play, every point misses only finitely many Θ₁ outputs.
    When Θ is only known to win plays of length L, ``inner_horizon=L`` keeps
    the subsequences at most L long; each point then misses at most L - 1
    outputs. Strategies depending only on the current cover pass through.
    """

    name = "gamma-upgrade"

    def __init__(self, inner: Strategy, max_horizon: int = MAX_UPGRADE_HORIZON, inner_horizon: Optional[int] = None):
        super().__init__()
        if inner_horizon is not None and inner_horizon < 1:
            raise ValueError("inner_horizon must be positive")
        self.inner = inner
        self.max_horizon = max_horizon
        self.inner_horizon = inner_horizon
        self.depends_only_on_last_cover = inner.depends_only_on_last_cover

    def _longest(self, n: int) -> int:
        """Earlier rounds a subsequence ending at round n may use."""
        return n if self.inner_horizon is None else min(n, self.inner_horizon - 1)

    def respond(self, history: History) -> Certificate:
        if self.depends_only_on_last_cover:
            return self.inner(history)
        if len(history) > self.max_horizon:
            raise CertificateError(f"γ-upgrade is limited to {self.max_horizon} rounds")
        n = len(history) - 1
        last = history[n]
        result = Certificate(last, ())
        for size in range(self._longest(n) + 1):
            for chosen in combinations(range(n), size):
                certificate = self.inner(tuple(history[i] for i in chosen) + (last,))
                result = result.merge(Certificate(last, certificate.members))
        return result

    def budget(self, round_index: int) -> Optional[int]:
        if self.depends_only_on_last_cover:
            return self.inner.budget(round_index)
        total = 0
        for j in range(self._longest(round_index) + 1):
            inner = self.inner.budget(j)
            if inner is None:
                return None
            total += comb(round_index, j) * inner
        return total


class ProductStrategy(Strategy):
    """
    Θ(s)_n = Θ_X(s_X) × Θ_Y(s_Y) on the product multicover.

    Product cover i·|ν| + j pairs λ[i] with ν[j]; the history splits into
    the coordinate histories accordingly.
    """

    name = "product"

    def __init__(self, space: MulticoveredSpace, left: Strategy, right: Strategy):
        super().__init__()
        if space.factors is None:
            raise InvalidSpaceError(f"{space.name!r} is not a product space")
        self.space = space
        self.left = left
        self.right = right
        self.right_size = len(space.factors[1].multicover)

    def respond(self, history: History) -> Certificate:
        pairs = [divmod(c, self.right_size) for c in history]
        left = self.left(tuple(i for i, _ in pairs))
        right = self.right(tuple(j for _, j in pairs))
        left_cover = self.space.factors[0].cover(left.cover_index)
        right_cover = self.space.factors[1].cover(right.cover_index)
        product_cover = self.space.cover(history[-1])
        members = tuple(
            product_member_index(product_cover, p, q, right_cover)
            for p in left.members
            for q in right.members
        )
        support = None
        if left.support is not None or right.support is not None:
            left_support = left.support if left.support is not None else _member_points(left_cover, left)
            right_support = right.support if right.support is not None else _member_points(right_cover, right)
            if left_support is not None and right_support is not None:
                support = frozenset((x, y) for x in left_support for y in right_support)
        return Certificate(history[-1], members, support)

    def budget(self, round_index: int) -> Optional[int]:
        a, b = self.left.budget(round_index), self.right.budget(round_index)
        return None if a is None or b is None else a * b


def _member_points(cover, certificate: Certificate):
    sets = [cover.member(i).points() for i in certificate.members]
    if any(s is None for s in sets):
        return None
    return frozenset().union(*sets) if sets else frozenset()


class PullbackStrategy(Strategy):
    """
    Θ_X(s) = f⁻¹(Θ_Y(φ(s))) along a perfect map f: X -> Y.

    φ sends source cover u to the target cover assigned to it. The preimage
    is taken over the map's domain and certified in the source cover.

    Args:
        mapping: Perfect map with its cover assignment
        inner: Strategy on the target space
        budgets: Declared source budgets; unbounded when omitted
    """

    name = "pullback"

    def __init__(self, mapping: SpaceMap, inner: Strategy, budgets: Sequence[Optional[int]] = ()):
        super().__init__()
        if mapping.kind is not MapKind.PERFECT:
            raise InvalidSpaceError("Strategies pull back along perfect maps only")
        self.mapping = mapping
        self.inner = inner
        self.budgets = tuple(budgets)
        self.depends_only_on_last_cover = inner.depends_only_on_last_cover

    def budget(self, round_index: int) -> Optional[int]:
        if round_index < len(self.budgets):
            return self.budgets[round_index]
        return self.budgets[-1] if self.budgets else None

    def respond(self, history: History) -> Certificate:
        translated = tuple(self.mapping.assign[c] for c in history)
        image_certificate = self.inner(translated)
        target_cover = self.mapping.target.cover(image_certificate.cover_index)
        preimage = self.mapping.preimage(lambda y: target_cover.contains(image_certificate, y))
        source_index = history[-1]
        budget = self.budget(len(history) - 1)
        certificate = bounded_by(self.mapping.source.cover(source_index), preimage, budget, cover_index=source_index)
        if certificate is None:
            raise CertificateError(
                f"Preimage of {len(preimage)} points is not bounded by {budget} members of cover {source_index}"
            )
        return certificate


def union_strategy(strategies, pieces=None, horizons=None) -> UnionStrategy:
    return UnionStrategy(strategies, pieces, horizons)


def gamma_upgrade(
    strategy: Strategy, max_horizon: int = MAX_UPGRADE_HORIZON, inner_horizon: Optional[int] = None
) -> GammaUpgradedStrategy:
    return GammaUpgradedStrategy(strategy, max_horizon, inner_horizon)


def product_strategy(space: MulticoveredSpace, left: Strategy, right: Strategy) -> ProductStrategy:
    return ProductStrategy(space, left, right)


def pullback_strategy(mapping: SpaceMap, inner: Strategy, budgets: Sequence[Optional[int]] = ()) -> PullbackStrategy:
    return PullbackStrategy(mapping, inner, budgets)


def subsequence_union(strategy: Strategy, history: History, indices: Sequence[int]) -> Dict[Any, None]:
    """Members of Θ over the prefixes (t_{i_0}, ..., t_{i_j}) of an index list, for replay checks."""
    members: Dict[Any, None] = {}
    for j in range(len(indices)):
        certificate = strategy(tuple(history[i] for i in indices[: j + 1]))
        for member in certificate.members:
            members.setdefault(member, None)
    return members


__all__ = [
    "GammaUpgradedStrategy",
    "ProductStrategy",
    "PullbackStrategy",
    "UnionStrategy",
    "gamma_upgrade",
    "lift_certificate",
    "product_strategy",
    "pullback_strategy",
    "subsequence_union",
    "union_strategy",
]
