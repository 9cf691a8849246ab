import pytest

from helpers import explicit_space, lookahead_space, singletons


@pytest.fixture
def square():
    """Four points on a cycle, covered by the four edges."""
    return explicit_space(range(4), [[[0, 1], [1, 2], [2, 3], [0, 3]]], name="square")


@pytest.fixture
def lookahead():
    return lookahead_space()


@pytest.fixture
def six_singletons():
    return singletons(6)


@pytest.fixture
def layered():
    """Three points with a fine, a middle and a trivial cover."""
    return explicit_space(
        range(3),
        [[[0], [1], [2]], [[0, 1], [1, 2]], [[0, 1, 2]]],
        name="layered",
    )

