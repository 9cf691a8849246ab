"""
Groups with word metrics: finite Cayley tables, lattices Z^d and free groups.

Elements are plain points: table indices, integer tuples, or reduced words
(tuples of nonzero integers, -i standing for the inverse of generator i).
Word length is taken over the generators and their inverses.
"""

import logging
from abc import ABC, abstractmethod
from collections import deque
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..covers.points import point_key
from ..errors import InvalidSpaceError

logger = logging.getLogger(__name__)


class Group(ABC):
    """A finitely generated group with its word metric."""

    name: str = "group"
    is_abelian: bool = False
    is_finite: bool = False

    @property
    @abstractmethod
    def identity(self) -> Any:
        ...

    @abstractmethod
    def contains(self, element: Any) -> bool:
        ...

    @abstractmethod
    def multiply(self, left: Any, right: Any) -> Any:
        ...

    @abstractmethod
    def inverse(self, element: Any) -> Any:
        ...

    @abstractmethod
    def length(self, element: Any) -> int:
        ...

    @abstractmethod
    def shell(self, radius: int) -> List[Any]:
        """Elements of word length exactly ``radius``, in shortlex order."""

    def ball(self, radius: int) -> Iterator[Any]:
        """Elements of word length at most ``radius``, shortest first."""
        for r in range(radius + 1):
            shell = self.shell(r)
            if not shell and r > 0 and self.is_finite:
                return
            yield from shell

    def enumerate(self) -> Iterator[Any]:
        """Every element, shortest first."""
        r = 0
        while True:
            shell = self.shell(r)
            if not shell and self.is_finite:
                return
            yield from shell
            r += 1

    def conjugate(self, element: Any, by: Any) -> Any:
        """by · element · by⁻¹"""
        return self.multiply(self.multiply(by, element), self.inverse(by))

    def in_double_coset(self, point: Any, element: Any, radius: int) -> bool:
        """Whether point ∈ U·element·U for the word ball U of ``radius``."""
        inverse = self.inverse(element)
        for u in self.ball(radius):
            if self.length(self.multiply(inverse, self.multiply(self.inverse(u), point))) <= radius:
                return True
        return False

    def __repr__(self) -> str:
        return self.name


class CayleyTableGroup(Group):
    """
    Finite group given by its multiplication table.

    Args:
        table: n×n array, table[a, b] = a·b on elements 0..n-1
        generators: Elements generating the group
        name: Label used in reports
        labels: Optional display names of the elements

    Raises:
        InvalidSpaceError: The table is not a group or the generators do not generate it
    """

    is_finite = True

    def __init__(self, table, generators: Sequence[int], name: str = "table", labels: Optional[Sequence[str]] = None):
        self.table = np.asarray(table, dtype=np.int64)
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        n = self.table.shape[0]
        if self.table.ndim != 2 or self.table.shape != (n, n) or n == 0:
            raise InvalidSpaceError(f"{name}: Cayley table must be a nonempty square array")
        if self.table.min() < 0 or self.table.max() >= n:
            raise InvalidSpaceError(f"{name}: table entries must be element indices")
        if not np.array_equal(self.table[self.table, :], self.table[:, self.table]):
            raise InvalidSpaceError(f"{name}: multiplication is not associative")
        arange = np.arange(n)
        identities = [
            e for e in range(n)
            if np.array_equal(self.table[e], arange) and np.array_equal(self.table[:, e], arange)
        ]
        if not identities:
            raise InvalidSpaceError(f"{name}: no identity element")
        self._identity = identities[0]
        hits = self.table == self._identity
        if not hits.any(axis=1).all():
            raise InvalidSpaceError(f"{name}: some element has no inverse")
        self._inverse = hits.argmax(axis=1)
        self.order = n
        self.generators = tuple(int(g) for g in generators)
        for g in self.generators:
            if not 0 <= g < n:
                raise InvalidSpaceError(f"{name}: generator {g} is not an element")
        self.is_abelian = bool(np.array_equal(self.table, self.table.T))
        self._lengths = self._word_lengths()

    def _word_lengths(self) -> np.ndarray:
        steps = sorted({g for g in self.generators} | {int(self._inverse[g]) for g in self.generators})
        lengths = np.full(self.order, -1, dtype=np.int64)
        lengths[self._identity] = 0
        queue = deque([self._identity])
        while queue:
            current = queue.popleft()
            for step in steps:
                following = int(self.table[current, step])
                if lengths[following] < 0:
                    lengths[following] = lengths[current] + 1
                    queue.append(following)
        if (lengths < 0).any():
            raise InvalidSpaceError(f"{self.name}: generators {list(self.generators)} do not generate the group")
        return lengths

    @property
    def identity(self) -> int:
        return self._identity

    def elements(self) -> List[int]:
        return list(range(self.order))

    def contains(self, element: Any) -> bool:
        return isinstance(element, (int, np.integer)) and not isinstance(element, bool) and 0 <= element < self.order

    def multiply(self, left: int, right: int) -> int:
        return int(self.table[left, right])

    def inverse(self, element: int) -> int:
        return int(self._inverse[element])

    def length(self, element: int) -> int:
        return int(self._lengths[element])

    @property
    def diameter(self) -> int:
        return int(self._lengths.max())

    def shell(self, radius: int) -> List[int]:
        return [int(e) for e in np.flatnonzero(self._lengths == radius)]

    def in_double_coset(self, point: int, element: int, radius: int) -> bool:
        ball = np.flatnonzero(self._lengths <= radius)
        left = self.table[ball, element]
        return bool((self.table[np.ix_(left, ball)] == point).any())

    def label(self, element: int) -> str:
        return self.labels[element] if self.labels is not None else str(element)


def cyclic_group(n: int, generators: Sequence[int] = (1,)) -> CayleyTableGroup:
    """Z_n with addition mod n."""
    if n < 1:
        raise InvalidSpaceError(f"Cyclic group order must be positive, got {n}")
    elements = np.arange(n)
    table = (elements[:, None] + elements[None, :]) % n
    return CayleyTableGroup(table, [g % n for g in generators] if n > 1 else [0], name=f"Z{n}")


def direct_product_table(left: CayleyTableGroup, right: CayleyTableGroup) -> CayleyTableGroup:
    """G × H with element (g, h) stored at index g·|H| + h."""
    m = right.order
    g = np.arange(left.order).repeat(m)
    h = np.tile(np.arange(m), left.order)
    table = left.table[g[:, None], g[None, :]] * m + right.table[h[:, None], h[None, :]]
    generators = [a * m + right.identity for a in left.generators]
    generators += [left.identity * m + b for b in right.generators]
    return CayleyTableGroup(table, generators, name=f"{left.name}x{right.name}")


def _element_orders(group: CayleyTableGroup) -> List[int]:
    orders = []
    for element in range(group.order):
        current, k = element, 1
        while current != group.identity:
            current = group.multiply(current, element)
            k += 1
        orders.append(k)
    return orders


def is_isomorphic_by_table(left: CayleyTableGroup, right: CayleyTableGroup) -> Optional[Dict[int, int]]:
    """
    Search for an isomorphism by matching images of the generators.

    Returns:
        Element map left -> right, or None if the groups are not isomorphic
    """
    if left.order != right.order or left.is_abelian != right.is_abelian:
        return None
    left_orders, right_orders = _element_orders(left), _element_orders(right)
    if sorted(left_orders) != sorted(right_orders):
        return None
    generators = sorted(set(left.generators)) or [left.identity]
    candidates = [[h for h in range(right.order) if right_orders[h] == left_orders[g]] for g in generators]
    for images in product(*candidates):
        mapping = {left.identity: right.identity}
        queue = deque([left.identity])
        consistent = True
        while queue and consistent:
            current = queue.popleft()
            for g, image in zip(generators, images):
                following = left.multiply(current, g)
                value = right.multiply(mapping[current], image)
                known = mapping.get(following)
                if known is None:
                    mapping[following] = value
                    queue.append(following)
                elif known != value:
                    consistent = False
                    break
        if not consistent or len(mapping) != left.order or len(set(mapping.values())) != right.order:
            continue
        if all(
            mapping[left.multiply(a, b)] == right.multiply(mapping[a], mapping[b])
            for a in range(left.order)
            for b in range(left.order)
        ):
            return mapping
    return None


class LatticeGroup(Group):
    """Z^d with the l1 (standard generators) or max (king moves) word metric."""

    is_abelian = True

    def __init__(self, dimension: int, norm: str = "l1"):
        if dimension < 1:
            raise InvalidSpaceError(f"Lattice dimension must be positive, got {dimension}")
        if norm not in ("l1", "max"):
            raise InvalidSpaceError(f"Unknown lattice norm {norm!r}")
        self.dimension = dimension
        self.norm = norm
        self.name = f"Z^{dimension}" if dimension > 1 else "Z"

    @property
    def identity(self) -> Tuple[int, ...]:
        return (0,) * self.dimension

    def contains(self, element: Any) -> bool:
        return (
            isinstance(element, tuple)
            and len(element) == self.dimension
            and all(isinstance(c, int) and not isinstance(c, bool) for c in element)
        )

    def multiply(self, left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(a + b for a, b in zip(left, right))

    def inverse(self, element: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(-a for a in element)

    def length(self, element: Tuple[int, ...]) -> int:
        if self.norm == "l1":
            return sum(abs(a) for a in element)
        return max(abs(a) for a in element)

    def distance(self, left: Tuple[int, ...], right: Tuple[int, ...]) -> int:
        return self.length(tuple(a - b for a, b in zip(left, right)))

    def shell(self, radius: int) -> List[Tuple[int, ...]]:
        if radius == 0:
            return [self.identity]
        span = range(-radius, radius + 1)
        return sorted((v for v in product(span, repeat=self.dimension) if self.length(v) == radius), key=point_key)

    def box(self, half_width: int) -> List[Tuple[int, ...]]:
        """[−M, M]^d in canonical order."""
        span = range(-half_width, half_width + 1)
        return sorted(product(span, repeat=self.dimension), key=point_key)

    def in_double_coset(self, point: Tuple[int, ...], element: Tuple[int, ...], radius: int) -> bool:
        # Balls in these norms satisfy U + U = ball(2r).
        return self.distance(point, element) <= 2 * radius


class FreeGroup(Group):
    """Free group on ``rank`` generators; words are tuples of ±1..±rank."""

    def __init__(self, rank: int):
        if rank < 0:
            raise InvalidSpaceError(f"Free group rank must be nonnegative, got {rank}")
        self.rank = rank
        self.is_abelian = rank <= 1
        self.letters = tuple(sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)], key=point_key))
        self.name = f"F{rank}"
        self._shells: List[List[Tuple[int, ...]]] = [[()]]

    @property
    def identity(self) -> Tuple[int, ...]:
        return ()

    @staticmethod
    def reduce(word: Sequence[int]) -> Tuple[int, ...]:
        stack: List[int] = []
        for letter in word:
            if stack and stack[-1] == -letter:
                stack.pop()
            else:
                stack.append(letter)
        return tuple(stack)

    def contains(self, element: Any) -> bool:
        if not isinstance(element, tuple):
            return False
        for i, letter in enumerate(element):
            if not isinstance(letter, int) or isinstance(letter, bool) or letter == 0 or abs(letter) > self.rank:
                return False
            if i and element[i - 1] == -letter:
                return False
        return True

    def multiply(self, left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
        cut = 0
        while cut < min(len(left), len(right)) and left[len(left) - 1 - cut] == -right[cut]:
            cut += 1
        return left[: len(left) - cut] + right[cut:]

    def inverse(self, element: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(-letter for letter in reversed(element))

    def length(self, element: Tuple[int, ...]) -> int:
        return len(element)

    def shell(self, radius: int) -> List[Tuple[int, ...]]:
        while len(self._shells) <= radius:
            previous = self._shells[-1]
            if not previous or not self.letters:
                self._shells.append([])
                continue
            self._shells.append([w + (x,) for w in previous for x in self.letters if not w or w[-1] != -x])
        return self._shells[radius]

    def enumerate(self) -> Iterator[Tuple[int, ...]]:
        if not self.letters:
            yield ()
            return
        yield from super().enumerate()

    def ball(self, radius: int) -> Iterator[Tuple[int, ...]]:
        if not self.letters:
            yield ()
            return
        yield from super().ball(radius)

    def parse(self, text: str) -> Tuple[int, ...]:
        """Read a word like ``"abA"``: lowercase letters are generators, uppercase their inverses."""
        word = []
        for char in text.strip():
            index = ord(char.lower()) - ord("a") + 1
            if not 1 <= index <= self.rank:
                raise InvalidSpaceError(f"Letter {char!r} is not a generator of {self.name}")
            word.append(index if char.islower() else -index)
        return self.reduce(word)

    def format(self, word: Tuple[int, ...]) -> str:
        return "".join(chr(ord("a") + abs(x) - 1) if x > 0 else chr(ord("A") + abs(x) - 1) for x in word) or "e"
