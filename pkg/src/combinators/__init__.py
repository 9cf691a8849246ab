"""
Combinators turning strategies and witness sequences for simpler spaces
into ones for unions, products, images and preimages.
"""

from .sigma import default_projection_assign, sigma_bounded_product_strategy, sigma_bounded_product_witness
from .strategies import (
    GammaUpgradedStrategy,
    ProductStrategy,
    PullbackStrategy,
    UnionStrategy,
    gamma_upgrade,
    lift_certificate,
    product_strategy,
    pullback_strategy,
    subsequence_union,
    union_strategy,
)
from .witness import PieceDecomposition, PowerWitness, WitnessClass, WitnessSequence
from .witnesses import (
    hurewicz_product_witness,
    menger_power_from_scheepers,
    omega_engulfing_rounds,
    proper_omega_from_scheepers,
    push_forward_witness,
    scheepers_from_menger_powers,
    tails_contain_pieces,
    totally_bounded_decomposition,
)

__all__ = [
    "GammaUpgradedStrategy",
    "PieceDecomposition",
    "PowerWitness",
    "ProductStrategy",
    "PullbackStrategy",
    "UnionStrategy",
    "WitnessClass",
    "WitnessSequence",
    "default_projection_assign",
    "gamma_upgrade",
    "hurewicz_product_witness",
    "lift_certificate",
    "menger_power_from_scheepers",
    "omega_engulfing_rounds",
    "product_strategy",
    "proper_omega_from_scheepers",
    "pullback_strategy",
    "push_forward_witness",
    "scheepers_from_menger_powers",
    "sigma_bounded_product_strategy",
    "sigma_bounded_product_witness",
    "subsequence_union",
    "tails_contain_pieces",
    "totally_bounded_decomposition",
    "union_strategy",
]
