"""
Covers, multicovers, boundedness and the refinement preorder.
"""

from .bounded import bounded_by, candidate_pool, covered_points, greedy_selection, unbounded_witness
from .constructions import product_cover, product_ground, product_multicover, product_space, restrict
from .cover import Certificate, Cover, FiniteCover, LazyCover, Multicover, MulticoveredSpace
from .ground import FiniteGroundSet, GroundSet, LazyGroundSet
from .maps import MapKind, SpaceMap, identity_map, projection_map
from .members import BallMember, CoverMember, ExplicitMember, ProductMember, Side, TranslateMember
from .order import (
    DEFAULT_SEARCH_BOUND,
    coarser_than,
    equivalent_multicovers,
    is_centered,
    is_omega_bounded,
    is_totally_bounded,
    multicover_coarser,
)
from .points import canonical_order, format_point, parse_point, point_key
from .predicates import is_cover, is_gamma_cover, is_omega_cover, is_proper_omega_cover
from .tribool import Scope, TriBool, Verdict

__all__ = [
    "BallMember",
    "Certificate",
    "Cover",
    "CoverMember",
    "DEFAULT_SEARCH_BOUND",
    "ExplicitMember",
    "FiniteCover",
    "FiniteGroundSet",
    "GroundSet",
    "LazyCover",
    "LazyGroundSet",
    "MapKind",
    "Multicover",
    "MulticoveredSpace",
    "ProductMember",
    "Scope",
    "Side",
    "SpaceMap",
    "TranslateMember",
    "TriBool",
    "Verdict",
    "bounded_by",
    "candidate_pool",
    "canonical_order",
    "coarser_than",
    "covered_points",
    "equivalent_multicovers",
    "format_point",
    "greedy_selection",
    "identity_map",
    "is_centered",
    "is_cover",
    "is_gamma_cover",
    "is_omega_bounded",
    "is_omega_cover",
    "is_proper_omega_cover",
    "is_totally_bounded",
    "multicover_coarser",
    "parse_point",
    "point_key",
    "product_cover",
    "product_ground",
    "product_multicover",
    "product_space",
    "projection_map",
    "restrict",
    "unbounded_witness",
]
