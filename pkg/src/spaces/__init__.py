"""
Concrete multicovered spaces: finite metrics, lattices, groups, and the
lifting constructions from generating sets to whole groups.
"""

from .group_covers import DEFAULT_WORD_LENGTH, group_ground, group_multicover, group_space, neighborhood_radius, translate_cover
from .groups import (
    CayleyTableGroup,
    FreeGroup,
    Group,
    LatticeGroup,
    cyclic_group,
    direct_product_table,
    is_isomorphic_by_table,
)
from .lifting import (
    AbelianLifting,
    LiftedWinningStrategy,
    addition_map_perfectness,
    lift_hurewicz_to_abelian_group,
    lift_scheepers_to_abelian_group,
    lift_winning_to_group,
    required_radius,
    signed_sum_image,
)
from .metric import (
    DEFAULT_PROBE_BOX,
    FiniteMetricSpace,
    lattice_ground,
    lattice_metric_multicover,
    max_product_metric,
    metric_multicover,
)
from .schedules import BoxSet, GeneratorChain, NeighborhoodSchedule, SumNeighborhood

__all__ = [
    "AbelianLifting",
    "BoxSet",
    "CayleyTableGroup",
    "DEFAULT_PROBE_BOX",
    "DEFAULT_WORD_LENGTH",
    "FiniteMetricSpace",
    "FreeGroup",
    "GeneratorChain",
    "Group",
    "LatticeGroup",
    "LiftedWinningStrategy",
    "NeighborhoodSchedule",
    "SumNeighborhood",
    "addition_map_perfectness",
    "cyclic_group",
    "direct_product_table",
    "group_ground",
    "group_multicover",
    "group_space",
    "is_isomorphic_by_table",
    "lattice_ground",
    "lattice_metric_multicover",
    "lift_hurewicz_to_abelian_group",
    "lift_scheepers_to_abelian_group",
    "lift_winning_to_group",
    "max_product_metric",
    "metric_multicover",
    "neighborhood_radius",
    "required_radius",
    "signed_sum_image",
    "translate_cover",
]
