"""
Turning validated space descriptions into multicovered spaces, plus JSON
loading and instance fingerprints.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from ..covers import (
    ExplicitMember,
    FiniteCover,
    FiniteGroundSet,
    Multicover,
    MulticoveredSpace,
    Side,
    canonical_order,
    format_point,
    parse_point,
    product_space,
)
from ..errors import SchemaError
from ..spaces import (
    CayleyTableGroup,
    FiniteMetricSpace,
    FreeGroup,
    LatticeGroup,
    cyclic_group,
    group_space,
    lattice_metric_multicover,
    metric_multicover,
)
from ..spaces.groups import Group
from .schemas import (
    ExplicitSpaceSpec,
    GroupDescriptor,
    GroupSpaceSpec,
    LatticeMetricSpec,
    MetricSpaceSpec,
    ProbeSettings,
    ProductSpaceSpec,
    RunSpec,
    SpaceSpec,
)

logger = logging.getLogger(__name__)


def schema_error(error: ValidationError) -> SchemaError:
    """First validation problem as a SchemaError pointing at its field."""
    first = error.errors()[0]
    field = ".".join(str(part) for part in first["loc"])
    return SchemaError(first["msg"], field)


def load_json(path: str) -> Any:
    try:
        with open(Path(path), 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Invalid JSON: {e}", path)


def parse_run_spec(data: Any) -> RunSpec:
    """Validate a run description.

    Raises:
        SchemaError: The description does not match the schema
    """
    try:
        return RunSpec.model_validate(data)
    except ValidationError as e:
        raise schema_error(e) from None


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def fingerprint(data: Any) -> str:
    """Content hash of a JSON-compatible value."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def spec_fingerprint(spec: RunSpec) -> str:
    """Hash of the instance a run works on: spaces, game, pieces and lifting parameters."""
    body = spec.model_dump(mode="json", include={"space", "other", "game", "pieces", "lifting"})
    return fingerprint(body)


def parse_points(raw: Optional[List[Any]]) -> Optional[List[Any]]:
    if raw is None:
        return None
    return [parse_point(p) for p in raw]


def build_group(descriptor: GroupDescriptor) -> Group:
    if descriptor.type == "cyclic":
        return cyclic_group(descriptor.order, descriptor.generators)
    if descriptor.type == "table":
        return CayleyTableGroup(descriptor.table, descriptor.generators)
    if descriptor.type == "free":
        return FreeGroup(descriptor.rank)
    return LatticeGroup(descriptor.dimension, descriptor.norm)


def build_space(spec: SpaceSpec, probes: Optional[ProbeSettings] = None) -> MulticoveredSpace:
    """
    Build the multicovered space a description names.

    Args:
        spec: Validated space description
        probes: Default probe sizes for lazy spaces

    Returns:
        MulticoveredSpace ready for games and checks

    Raises:
        InvalidSpaceError: The description is well-formed but not a valid space
    """
    probes = probes or ProbeSettings()
    if isinstance(spec, ExplicitSpaceSpec):
        ground = FiniteGroundSet(parse_point(p) for p in spec.points)
        covers = []
        for i, members in enumerate(spec.covers):
            covers.append(
                FiniteCover(
                    [ExplicitMember(frozenset(parse_point(p) for p in member)) for member in members],
                    ground,
                    label=f"u{i}",
                )
            )
        return MulticoveredSpace(ground, Multicover(covers), name=spec.name)
    if isinstance(spec, MetricSpaceSpec):
        metric = FiniteMetricSpace([parse_point(p) for p in spec.points], spec.distances, name=spec.name)
        return metric_multicover(metric, spec.radii)
    if isinstance(spec, LatticeMetricSpec):
        box = spec.probe_box if spec.probe_box is not None else probes.probe_box
        return lattice_metric_multicover(spec.dimension, spec.radii, spec.norm, box)
    if isinstance(spec, GroupSpaceSpec):
        group = build_group(spec.group)
        box = spec.probe_box if spec.probe_box is not None else probes.probe_box
        length = spec.word_length if spec.word_length is not None else probes.word_length
        return group_space(group, spec.radii, Side(spec.side), probe_box=box, word_length=length)
    if isinstance(spec, ProductSpaceSpec):
        return product_space(build_space(spec.left, probes), build_space(spec.right, probes))
    raise SchemaError(f"Unknown space kind {type(spec).__name__}", "space.kind")


def explicit_form(space: MulticoveredSpace) -> Dict[str, Any]:
    """Normalized explicit description of a finite space.

    Points are canonically ordered, each cover keeps its members in index
    order with their points sorted.
    """
    covers = []
    for cover in space.multicover:
        covers.append([
            [format_point(p) for p in canonical_order(cover.member_points(i))]
            for i in cover.indices()
        ])
    return {
        "kind": "explicit",
        "name": space.name,
        "points": [format_point(p) for p in space.ground.points],
        "covers": covers,
    }
