"""
Group-generation liftings.

Abelian groups: addition maps Z^d × ... × Z^d -> Z^d are perfect, and
proper ω (γ) witnesses on a generating set X lift to ω (γ) witnesses on
the whole lattice through the sets K_{2n} + O_n.

Arbitrary groups: a strategy winning on X ∪ X⁻¹ ∪ {e} for the right
translate covers lifts to a strategy on (G, λ_R) whose answers are the
products A_0 A_2 ... A_{2n-2} of answers along interleaved histories.
"""

import logging
from itertools import product
from math import ceil
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..combinators import WitnessClass, WitnessSequence, gamma_upgrade
from ..covers import Certificate, MapKind, MulticoveredSpace, SpaceMap, TriBool, covered_points, restrict
from ..covers.members import Side, TranslateMember
from ..covers.order import DEFAULT_SEARCH_BOUND
from ..covers.points import canonical_order
from ..covers.predicates import is_gamma_cover, is_omega_cover, is_proper_omega_cover
from ..covers.constructions import product_space
from ..errors import CertificateError, InvalidSpaceError, RangeError, ScheduleViolation
from ..games.strategy import History, Strategy, cover_all_strategy
from .group_covers import group_space, neighborhood_radius
from .groups import Group, LatticeGroup
from .schedules import BoxSet, GeneratorChain, NeighborhoodSchedule, SumNeighborhood

logger = logging.getLogger(__name__)


def _require_lattice(group: Group) -> LatticeGroup:
    if not isinstance(group, LatticeGroup):
        raise InvalidSpaceError(f"{group.name} is not an abelian lattice group")
    return group


def signed_sum_image(group: LatticeGroup, points: Iterable[Any], signs: Sequence[int]) -> FrozenSet[Any]:
    """{j_0 x_0 + ... + j_{n-1} x_{n-1} : x_i ∈ points} for the sign vector j."""
    group = _require_lattice(group)
    elements = canonical_order(set(points))
    result = set()
    for choice in product(elements, repeat=len(signs)):
        total = group.identity
        for sign, x in zip(signs, choice):
            scaled = tuple(sign * c for c in x)
            total = group.multiply(total, scaled)
        result.add(total)
    return frozenset(result)


def _flatten(point: Any, factors: int) -> List[Any]:
    """Unnest the left-nested pairs of an n-fold product point."""
    coordinates = []
    for _ in range(factors - 1):
        point, last = point
        coordinates.append(last)
    coordinates.append(point)
    return coordinates[::-1]


def addition_map_perfectness(
    group: LatticeGroup,
    factors: int,
    half_width: int,
    radii: Sequence[int],
    search_bound: int = DEFAULT_SEARCH_BOUND,
) -> TriBool:
    """
    Check that (x_1, ..., x_n) -> x_1 + ... + x_n is perfect on a probe box.

    The source is the n-fold power of G cut down to [−M, M]^d, the target G
    cut down to [−nM, nM]^d. The power's cover (i_1, ..., i_n) is assigned
    the group cover max(i_k), and the preimage of every member of that
    cover must be bounded in the product cover.

    Args:
        group: Lattice Z^d
        factors: Number of summands n
        half_width: Probe box half width M
        radii: Neighborhood radii of the group multicover
        search_bound: Member budget for each preimage

    Raises:
        InvalidSpaceError: The group is not a lattice or n < 1
    """
    group = _require_lattice(group)
    if factors < 1:
        raise InvalidSpaceError("At least one summand is required")
    base = restrict(group_space(group, radii), group.box(half_width))
    source = base
    for _ in range(factors - 1):
        source = product_space(source, base)
    target = restrict(group_space(group, radii), group.box(factors * half_width))
    size = len(radii)
    assign = {}
    for flat in range(size ** factors):
        digits = []
        rest = flat
        for _ in range(factors):
            rest, digit = divmod(rest, size)
            digits.append(digit)
        assign[flat] = max(digits)

    def add(point: Any) -> Any:
        total = group.identity
        for x in _flatten(point, factors):
            total = group.multiply(total, x)
        return total

    mapping = SpaceMap(add, source, target, MapKind.PERFECT, assign)
    verdict = mapping.verify(search_bound)
    logger.info(f"Addition map on {group.name}^{factors} over box {half_width}: {verdict.verdict.value}")
    return verdict


def _engulfing_indices(items: Sequence[Any], subset: Sequence[Any]) -> List[int]:
    return [l for l, item in enumerate(items) if all(p in item for p in subset)]


class AbelianLifting:
    """
    Lifts witnesses on a generating box X = [−a, a]^d to the lattice.

    The X witness items are K_l + O_l; the lifted family is K_{2n} + O_n
    for n up to the last index both the chain and the schedule support.
    A supplied witness fixes K_l and O_l itself, see ``with_witness``.

    Args:
        group: Lattice Z^d
        chain: Generator chain K_0 ⊆ K_1 ⊆ ...
        schedule: Radii of O_0 ⊇ O_1 ⊇ ... with 2O_{n+1} ⊆ O_n
        half_width: Half width a of the generating box X
    """

    def __init__(self, group: LatticeGroup, chain: GeneratorChain, schedule: NeighborhoodSchedule, half_width: int):
        self.group = _require_lattice(group)
        if half_width < 1:
            raise InvalidSpaceError("The generating box needs a positive half width")
        schedule.require_halving()
        self.chain = chain
        self.schedule = schedule
        self.box = BoxSet(group.dimension, half_width)
        self.half_width = half_width
        self.last = min(len(schedule) - 1, (len(chain) - 1) // 2)
        self._sums: Dict[Tuple[FrozenSet[Any], int], FrozenSet[Any]] = {}
        self._checked: Dict[Tuple[FrozenSet[Any], int, int], bool] = {}
        self._engulfing: Dict[Tuple[FrozenSet[Any], Tuple[str, ...]], List[int]] = {}

    def with_witness(self, witness: Optional[WitnessSequence]) -> "AbelianLifting":
        """
        The lifting whose chain and schedule are read off the witness items.

        Every item must be a sum K_l + O_l; the K_l must form a generator
        chain and the radii of O_l a halving schedule.

        Raises:
            CertificateError: The items are not sums of that shape
        """
        if witness is None:
            return self
        items = list(witness.items)
        if not items or not all(isinstance(item, SumNeighborhood) for item in items):
            raise CertificateError("X witness items must be sums K_l + O_l")
        try:
            chain = GeneratorChain(self.group, [item.chain_set for item in items])
            schedule = NeighborhoodSchedule(tuple(item.radius for item in items))
            return AbelianLifting(self.group, chain, schedule, self.half_width)
        except (InvalidSpaceError, ScheduleViolation) as e:
            raise CertificateError(f"X witness items do not come from a chain and a halving schedule: {e}") from e

    def x_items(self) -> List[SumNeighborhood]:
        """K_l + O_l for every l both sequences reach."""
        return [
            SumNeighborhood(self.group, self.chain[l], self.schedule[l])
            for l in range(min(len(self.schedule), len(self.chain)))
        ]

    def lifted_items(self) -> List[SumNeighborhood]:
        return [SumNeighborhood(self.group, self.chain[2 * n], self.schedule[n]) for n in range(self.last + 1)]

    def generating_set(self, subset: Sequence[Any]) -> Tuple[List[Any], int]:
        """S ⊆ X ∪ {0} and m with subset ⊆ m(S − S), the m-fold sum of S − S."""
        if all(p in self.box for p in subset):
            return canonical_order(set(subset) | {self.group.identity}), 1
        widest = max(max(abs(c) for c in p) for p in subset)
        return self.box.points(), max(1, ceil(widest / (2 * self.half_width)))

    def engulfing_indices(self, items: Sequence[Any], generators: Sequence[Any]) -> List[int]:
        """Indices of the items containing every generator."""
        key = (frozenset(generators), tuple(repr(item) for item in items))
        if key not in self._engulfing:
            self._engulfing[key] = _engulfing_indices(items, generators)
        return self._engulfing[key]

    def difference_sum(self, generators: Sequence[Any], m: int) -> FrozenSet[Any]:
        """m(S − S) by exact lattice arithmetic."""
        key = (frozenset(generators), m)
        cached = self._sums.get(key)
        if cached is None:
            group = self.group
            differences = {group.multiply(s, group.inverse(t)) for s in generators for t in generators}
            cached = frozenset([group.identity])
            for _ in range(m):
                cached = frozenset(group.multiply(x, d) for x in cached for d in differences)
            self._sums[key] = cached
        return cached

    def engulfing_round(self, subset: Sequence[Any], items: Optional[Sequence[Any]] = None) -> int:
        """
        The n with subset ⊆ K_{2n} + O_n predicted by the sum arithmetic.

        Takes the first l ≥ 3m whose X item engulfs S; then
        m(S − S) ⊆ K_{l+m} + O_{l−m} and n = ⌈(l+m)/2⌉ satisfies
        2n ≥ l + m and n ≤ l − m. Both subset ⊆ m(S − S) and
        m(S − S) ⊆ K_{2n} + O_n are checked point by point.

        Raises:
            RangeError: The chain or schedule ends before such an l
            CertificateError: The sum arithmetic fails on some point
        """
        points = list(subset)
        if not points:
            return 0
        items = self.x_items() if items is None else items
        generators, m = self.generating_set(points)
        for l in self.engulfing_indices(items, generators):
            if l < 3 * m:
                continue
            n = ceil((l + m) / 2)
            if n > self.last or l + m >= len(self.chain):
                break
            sums = self.difference_sum(generators, m)
            missing = [p for p in points if p not in sums]
            if missing:
                raise CertificateError(f"{missing[0]!r} is not in {m}(S - S)")
            key = (frozenset(generators), m, n)
            if key not in self._checked:
                lifted = SumNeighborhood(self.group, self.chain[2 * n], self.schedule[n])
                self._checked[key] = all(p in lifted for p in sums)
            if not self._checked[key]:
                raise CertificateError(f"Sum arithmetic failed: {m}(S - S) leaves K_{2 * n}+O_{n}")
            return n
        raise RangeError(f"No engulfing index l >= {3 * m} fits chain {len(self.chain)} and schedule {len(self.schedule)}")

    def tail_start(self, point: Any, items: Sequence[Any]) -> int:
        """First n from which every lifted item contains ``point``."""
        generators, m = self.generating_set([point])
        engulfing = set(self.engulfing_indices(items, generators))
        top = len(items) - 1
        for l in range(3 * m, top + 1):
            if all(j in engulfing for j in range(l, top + 1)):
                return ceil((l + m) / 2)
        raise RangeError(f"Point {point!r} has no engulfing tail below index {top}")

    def lift_scheepers(
        self,
        witness: Optional[WitnessSequence] = None,
        g_probe: Optional[Sequence[Any]] = None,
        k: int = 3,
        min_occurrences: int = 2,
    ) -> WitnessSequence:
        """
        ω-witness {K_{2n} + O_n} on G from a proper ω-witness on X.

        Raises:
            CertificateError: The X witness is not proper ω on the box, or
                the lifted family is not an ω-cover of the G probe
            RangeError: Some probe point needs indices past the chain
        """
        items = list(witness.items) if witness is not None else self.x_items()
        if not is_proper_omega_cover(items, self.box.points(), k, min_occurrences):
            raise CertificateError(f"X witness is not a proper ω-cover of {self.box!r} for k={k}")
        lifting = self.with_witness(witness)
        points = canonical_order(set(g_probe or ()))
        for point in points:
            lifting.engulfing_round([point], items)
        lifted = lifting.lifted_items()
        if points and not is_omega_cover(lifted, points, k):
            raise CertificateError(f"Lifted family is not an ω-cover of the G probe for k={k}")
        logger.debug(f"Lifted ω-witness on {self.group.name}: {len(lifted)} items over {len(points)} probe points")
        return WitnessSequence(tuple(lifted), WitnessClass.OMEGA, k=k)

    def lift_hurewicz(
        self,
        witness: Optional[WitnessSequence] = None,
        g_probe: Optional[Sequence[Any]] = None,
    ) -> WitnessSequence:
        """
        γ-witness {K_{2n} + O_n} on G from a γ-witness on X.

        Every probe point is checked in each lifted item from its computed
        tail start on; the witness starts at the latest of these.

        Raises:
            CertificateError: The X witness is not a γ-cover or a tail check fails
        """
        items = list(witness.items) if witness is not None else self.x_items()
        start = witness.start if witness is not None else 0
        if not is_gamma_cover(items, self.box.points(), start, 0):
            raise CertificateError(f"X witness is not a γ-cover of {self.box!r}")
        lifting = self.with_witness(witness)
        lifted = lifting.lifted_items()
        latest = 0
        for point in canonical_order(set(g_probe or ())):
            threshold = lifting.tail_start(point, items)
            for n in range(threshold, len(lifted)):
                if point not in lifted[n]:
                    raise CertificateError(f"{point!r} escapes K_{2 * n}+O_{n} past its tail start {threshold}")
            latest = max(latest, threshold)
        if latest >= len(lifted):
            raise RangeError(f"Tail start {latest} is past the last lifted item {len(lifted) - 1}")
        return WitnessSequence(tuple(lifted), WitnessClass.GAMMA, start=latest)


def lift_scheepers_to_abelian_group(
    group: LatticeGroup,
    chain: GeneratorChain,
    schedule: NeighborhoodSchedule,
    half_width: int,
    witness: Optional[WitnessSequence] = None,
    g_probe: Optional[Sequence[Any]] = None,
    k: int = 3,
) -> WitnessSequence:
    return AbelianLifting(group, chain, schedule, half_width).lift_scheepers(witness, g_probe, k)


def lift_hurewicz_to_abelian_group(
    group: LatticeGroup,
    chain: GeneratorChain,
    schedule: NeighborhoodSchedule,
    half_width: int,
    witness: Optional[WitnessSequence] = None,
    g_probe: Optional[Sequence[Any]] = None,
) -> WitnessSequence:
    return AbelianLifting(group, chain, schedule, half_width).lift_hurewicz(witness, g_probe)


def required_radius(horizon: int, kappa: int) -> int:
    """Radius Player I's covers need for ``horizon`` lifted rounds.

    A lifted round n walks 2n - 1 halvings past I's radius; keeping each
    radius at least 4κ makes halving dominate the conjugation loss 2κ.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    return 2 ** (2 * horizon - 1) * max(1, 4 * kappa)


def _reduced_products(group: Group, left: Iterable[Any], right: Iterable[Any]) -> FrozenSet[Any]:
    right = list(right)
    return frozenset(group.multiply(a, b) for a in left for b in right)


class LiftedWinningStrategy(Strategy):
    """
    Strategy on (G, λ_R) built from a strategy Θ on X ∪ X⁻¹ ∪ {e}.

    For a history q ending in a cover of radius R, w(q) is the sequence
    of schedule positions with 2r_0 <= R, 2r_{j+1} <= r_j and
    r_{j+1} + 2|z| <= r_j for the translates z of A_j(q) = Θ(q ⌢ w_0 ... w_j).
    The answer to s = (s_0, ..., s_{n-1}) is A_0 A_2 ... A_{2n-2} taken
    along the interleaved history q_{2n-2}(s), certified by U_R·(K_0 K_2 ...).

    Args:
        space: (G, λ_R) with word-ball covers
        generators: The generating set X
        inner: Θ on the restricted space; the γ-upgrade of cover-all by default
        restricted: The restricted space Θ plays on, built when omitted
    """

    name = "lifted"

    def __init__(
        self,
        space: MulticoveredSpace,
        generators: Iterable[Any],
        inner: Optional[Strategy] = None,
        restricted: Optional[MulticoveredSpace] = None,
    ):
        super().__init__()
        group = space.group
        if group is None:
            raise InvalidSpaceError(f"{space.name!r} is not a group space")
        self.space = space
        self.group: Group = group
        self.radii = tuple(neighborhood_radius(space, i) for i in range(len(space.multicover)))
        sample = space.cover(0).member(group.identity)
        if not isinstance(sample, TranslateMember) or sample.side is not Side.RIGHT:
            raise InvalidSpaceError("Lifting needs the right translate multicover")
        letters = set()
        for x in generators:
            if not group.contains(x):
                raise InvalidSpaceError(f"Generator {x!r} is not in {group.name}")
            letters.update((x, group.inverse(x)))
        letters.add(group.identity)
        self.letters = canonical_order(letters)
        self.restricted = restricted if restricted is not None else restrict(space, self.letters)
        self.inner = inner if inner is not None else gamma_upgrade(cover_all_strategy(self.restricted))
        self.diameter = group.diameter if group.is_finite else None
        self._sequences: Dict[History, Tuple[List[int], List[Certificate]]] = {}

    def _fits_square(self, inner_radius: int, outer_radius: int) -> bool:
        if self.diameter is not None and outer_radius >= self.diameter:
            return True
        return 2 * inner_radius <= outer_radius

    def _fits_conjugate(self, inner_radius: int, outer_radius: int, kappa: int) -> bool:
        if self.diameter is not None and outer_radius >= self.diameter:
            return True
        return inner_radius + 2 * kappa <= outer_radius

    def translates(self, certificate: Certificate) -> List[Any]:
        """K with the answer inside U·K: the parent indices of its members."""
        cover = self.restricted.cover(certificate.cover_index)
        origins = [cover.origin(i) for i in certificate.members]
        if any(o is None for o in origins):
            raise ScheduleViolation("(i)", f"answer on cover {certificate.cover_index} has members without translates")
        return origins

    def interleaved(self, history: History) -> History:
        """q_{2n-2}(s) for s of length n."""
        q: History = (history[0],)
        for k in range(len(history) - 1):
            positions, _ = self.cover_sequence(q, 2 * k)
            q = q + tuple(positions[: 2 * k + 1]) + (history[k + 1],)
        return q

    def cover_sequence(self, q: History, upto: int) -> Tuple[List[int], List[Certificate]]:
        """w(q)_0..w(q)_upto with the answers A_j(q).

        Raises:
            ScheduleViolation: No schedule position satisfies (ii) or (iii)
        """
        positions, answers = self._sequences.setdefault(q, ([], []))
        while len(positions) <= upto:
            if not positions:
                outer = self.radii[q[-1]]
                kappa = 0
            else:
                outer = self.radii[positions[-1]]
                kappa = max((self.group.length(z) for z in self.translates(answers[-1])), default=0)
            following = None
            squares = False
            for index, radius in enumerate(self.radii):
                if not self._fits_square(radius, outer):
                    continue
                squares = True
                if self._fits_conjugate(radius, outer, kappa):
                    following = index
                    break
            if following is None:
                condition = "(iii)" if squares else "(ii)"
                raise ScheduleViolation(
                    condition,
                    f"no radius below {outer} after {len(positions)} steps of history {list(q)} (κ={kappa})",
                )
            positions.append(following)
            answers.append(self.inner(q + tuple(positions)))
        return positions, answers

    def respond(self, history: History) -> Certificate:
        n = len(history)
        q = self.interleaved(history)
        positions, answers = self.cover_sequence(q, 2 * n - 2)
        support: FrozenSet[Any] = frozenset([self.group.identity])
        translates: FrozenSet[Any] = frozenset([self.group.identity])
        for j in range(0, 2 * n - 1, 2):
            answer = answers[j]
            points = covered_points(self.restricted.cover(answer.cover_index), answer, self.letters)
            support = _reduced_products(self.group, support, canonical_order(points))
            translates = _reduced_products(self.group, translates, self.translates(answer))
        logger.debug(f"Lifted answer to {list(history)}: {len(support)} points, {len(translates)} translates")
        return Certificate(history[-1], tuple(translates), support)

    def kappa(self) -> int:
        """Longest translate any cover's answer uses, for strategies answering per cover."""
        if not self.inner.depends_only_on_last_cover:
            raise ValueError("κ is only defined for strategies answering per cover")
        return max(
            (self.group.length(z) for i in range(len(self.radii)) for z in self.translates(self.inner((i,)))),
            default=0,
        )

    def check_radius_budget(self, covers: Sequence[int], horizon: int) -> None:
        """
        Refuse I's covers that are too fine for ``horizon`` lifted rounds.

        Raises:
            ScheduleViolation: A cover's radius is below the required radius
        """
        if self.diameter is not None or not self.inner.depends_only_on_last_cover:
            return
        kappa = self.kappa()
        needed = required_radius(horizon, kappa)
        for c in covers:
            if self.radii[c] < needed:
                raise ScheduleViolation(
                    "(iii)" if kappa else "(ii)",
                    f"cover {c} has radius {self.radii[c]}, {horizon} rounds need {needed}",
                )


def lift_winning_to_group(
    space: MulticoveredSpace,
    generators: Iterable[Any],
    inner: Optional[Strategy] = None,
    covers: Optional[Sequence[int]] = None,
    horizon: Optional[int] = None,
) -> LiftedWinningStrategy:
    """Build the lifted strategy and check the radius budget for I's covers up front."""
    lifted = LiftedWinningStrategy(space, generators, inner)
    if horizon is not None:
        lifted.check_radius_budget(covers if covers is not None else range(len(lifted.radii)), horizon)
    return lifted


__all__ = [
    "AbelianLifting",
    "LiftedWinningStrategy",
    "addition_map_perfectness",
    "lift_hurewicz_to_abelian_group",
    "lift_scheepers_to_abelian_group",
    "lift_winning_to_group",
    "required_radius",
    "signed_sum_image",
]
