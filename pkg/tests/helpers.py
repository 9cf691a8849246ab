"""
Builders shared by the test modules.
"""

from src.covers import ExplicitMember, FiniteCover, FiniteGroundSet, Multicover, MulticoveredSpace


def explicit_space(points, covers, name="test"):
    """A finite space from point labels and, per cover, its members as point lists."""
    ground = FiniteGroundSet(points)
    built = [
        FiniteCover([ExplicitMember(frozenset(m)) for m in members], ground, label=f"u{i}")
        for i, members in enumerate(covers)
    ]
    return MulticoveredSpace(ground, Multicover(built), name=name)


def singletons(n, name="singletons"):
    return explicit_space(range(n), [[[p] for p in range(n)]], name=name)


# II must see the second cover before answering the first: Menger holds, the game is an I win.
LOOKAHEAD_COVERS = [
    [[0, 1], [2, 3]],
    [[0, 1, 2], [3]],
    [[0], [1, 2, 3]],
]


def lookahead_space():
    return explicit_space(range(4), LOOKAHEAD_COVERS, name="lookahead")
