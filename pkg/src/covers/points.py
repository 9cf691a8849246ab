"""
Point helpers.

Points are plain hashable values: integers for finite sets, tuples of
integers for lattice vectors and free-group words, and pairs for product
spaces. Every ordering the engine relies on goes through ``point_key``.
"""

from typing import Any, Iterable, List, Tuple


def point_key(point: Any) -> Tuple:
    """Sort key giving a total, deterministic order on mixed points.

    Integers sort before tuples, tuples sort by length and then
    element-wise (shortlex), strings last.
    """
    if isinstance(point, bool):
        return (0, int(point))
    if isinstance(point, int):
        return (0, point)
    if isinstance(point, tuple):
        return (1, len(point), tuple(point_key(item) for item in point))
    if isinstance(point, str):
        return (2, point)
    raise TypeError(f"Unsupported point type: {type(point).__name__}")


def canonical_order(points: Iterable[Any]) -> List[Any]:
    """Return the points sorted by ``point_key``."""
    return sorted(points, key=point_key)


def format_point(point: Any) -> Any:
    """JSON-friendly form of a point (tuples become lists)."""
    if isinstance(point, tuple):
        return [format_point(item) for item in point]
    return point


def parse_point(raw: Any) -> Any:
    """Inverse of ``format_point``."""
    if isinstance(raw, list):
        return tuple(parse_point(item) for item in raw)
    return raw
