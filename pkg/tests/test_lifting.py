from itertools import product

import pytest

from src.combinators import WitnessClass, WitnessSequence
from src.covers import Side
from src.errors import CertificateError, InvalidSpaceError, RangeError, ScheduleViolation
from src.games import WinCondition, verify_on_probe
from src.spaces import (
    AbelianLifting,
    BoxSet,
    FreeGroup,
    GeneratorChain,
    LatticeGroup,
    LiftedWinningStrategy,
    NeighborhoodSchedule,
    SumNeighborhood,
    addition_map_perfectness,
    group_space,
    lift_winning_to_group,
    required_radius,
    signed_sum_image,
)

F2 = FreeGroup(2)
Z = LatticeGroup(1)
LINE_PROBE = [(p,) for p in range(-20, 21)]


def free_space(radii, side=Side.RIGHT):
    return group_space(F2, radii, side, word_length=3)


def line_lifting():
    """X = [-16, 16] in Z with K_n = [-2^n, 2^n] and O_n the ball of radius 2^(6-n)."""
    return AbelianLifting(Z, GeneratorChain.boxes(Z, 13), NeighborhoodSchedule.halving(6), 16)


def test_required_radius():
    assert required_radius(1, 0) == 2
    assert required_radius(3, 2) == 256
    with pytest.raises(ValueError):
        required_radius(0, 0)


def test_lifted_strategy_wins_on_the_free_group():
    space = free_space([2 ** e for e in range(10, -1, -1)])
    lifted = lift_winning_to_group(space, [(1,), (2,)], covers=[0, 1], horizon=5)
    first = lifted((0,))
    assert first.members == ((),)
    assert first.support == frozenset([(), (1,), (-1,), (2,), (-2,)])
    result = verify_on_probe(space, product([0, 1], repeat=5), lifted, WinCondition.cover())
    assert result.is_yes
    assert result.evidence == {"sequences": 32}


def test_radius_budget_refuses_fine_covers():
    space = free_space([2 ** e for e in range(10, -1, -1)])
    with pytest.raises(ScheduleViolation) as info:
        lift_winning_to_group(space, [(1,), (2,)], covers=[0, 1], horizon=6)
    assert info.value.condition == "(ii)"


def test_lifting_needs_halving_radii():
    lifted = LiftedWinningStrategy(free_space([5, 4, 3]), [(1,), (2,)])
    with pytest.raises(ScheduleViolation) as info:
        lifted((0,))
    assert info.value.condition == "(ii)"


def test_lifting_needs_right_translates():
    with pytest.raises(InvalidSpaceError):
        LiftedWinningStrategy(free_space([2, 1], Side.LEFT), [(1,)])
    with pytest.raises(InvalidSpaceError):
        LiftedWinningStrategy(free_space([2, 1]), [(3,)])


def test_engulfing_round_on_the_line():
    lifting = line_lifting()
    assert lifting.last == 6
    assert lifting.engulfing_round([(20,)]) == 2
    assert lifting.engulfing_round([(-3,), (7,)]) == 2
    assert lifting.engulfing_round([]) == 0
    with pytest.raises(RangeError):
        lifting.engulfing_round([(1000,)])


def test_scheepers_lift_on_the_line():
    witness = line_lifting().lift_scheepers(g_probe=LINE_PROBE)
    assert witness.klass is WitnessClass.OMEGA
    assert len(witness) == 7
    assert witness.check(LINE_PROBE)


def test_hurewicz_lift_on_the_line():
    witness = line_lifting().lift_hurewicz(g_probe=LINE_PROBE)
    assert witness.klass is WitnessClass.GAMMA
    assert witness.start == 2
    assert witness.check(LINE_PROBE)


def test_scheepers_lift_rejects_thin_witnesses():
    thin = WitnessSequence((BoxSet(1, 16),) + (BoxSet(1, 0),) * 6, WitnessClass.PROPER_OMEGA)
    with pytest.raises(CertificateError):
        line_lifting().lift_scheepers(thin)
    with pytest.raises(RangeError):
        line_lifting().lift_scheepers(g_probe=[(1000,)])


def test_scheepers_lift_follows_the_witness():
    other = AbelianLifting(Z, GeneratorChain.boxes(Z, 13), NeighborhoodSchedule.halving(7), 16)
    supplied = WitnessSequence(tuple(other.x_items()), WitnessClass.PROPER_OMEGA, k=3)
    witness = line_lifting().lift_scheepers(supplied, g_probe=LINE_PROBE)
    assert [item.radius for item in witness.items] == [128, 64, 32, 16]
    assert [item.chain_set.half_width for item in witness.items] == [1, 4, 16, 64]
    assert witness.check(LINE_PROBE)
    default = line_lifting().lift_scheepers(g_probe=LINE_PROBE)
    assert [item.radius for item in default.items] == [64, 32, 16, 8, 4, 2, 1]


def test_lifts_reject_witnesses_off_the_chain():
    flat = WitnessSequence((SumNeighborhood(Z, BoxSet(1, 1000), 1000),) * 7, WitnessClass.PROPER_OMEGA)
    with pytest.raises(CertificateError):
        line_lifting().lift_scheepers(flat, g_probe=LINE_PROBE)
    with pytest.raises(CertificateError):
        line_lifting().lift_hurewicz(flat.with_class(WitnessClass.GAMMA), g_probe=LINE_PROBE)


def test_generating_set_reaches_points_outside_the_box():
    lifting = AbelianLifting(Z, GeneratorChain.boxes(Z, 13), NeighborhoodSchedule.halving(6), 1)
    generators, m = lifting.generating_set([(3,)])
    assert generators == [(-1,), (0,), (1,)]
    assert m == 2
    assert lifting.difference_sum(generators, m) == {(c,) for c in range(-4, 5)}
    assert lifting.engulfing_round([(3,)]) == 4


def test_scheepers_lift_on_the_plane():
    plane = LatticeGroup(2)
    lifting = AbelianLifting(plane, GeneratorChain.boxes(plane, 9), NeighborhoodSchedule.halving(4), 4)
    probe = plane.box(6)
    witness = lifting.lift_scheepers(g_probe=probe)
    assert witness.check(probe)


def test_schedules_must_halve():
    with pytest.raises(ScheduleViolation) as info:
        NeighborhoodSchedule((4, 3)).require_halving()
    assert info.value.condition == "(ii)"
    with pytest.raises(InvalidSpaceError):
        NeighborhoodSchedule((2, 2))
    with pytest.raises(InvalidSpaceError):
        NeighborhoodSchedule((2, 1, 0))


def test_conjugation_breaks_small_balls_in_free_groups():
    schedule = NeighborhoodSchedule.halving(3)
    with pytest.raises(ScheduleViolation) as info:
        schedule.verify_on_probe(F2, F2.ball(3), [[(2,)]] * 3)
    assert info.value.condition == "(iii)"
    schedule.verify_on_probe(F2, F2.ball(3))


def test_generator_chains_are_checked():
    with pytest.raises(InvalidSpaceError):
        GeneratorChain(Z, [{(1,)}])
    with pytest.raises(InvalidSpaceError):
        GeneratorChain(Z, [BoxSet(1, 2), BoxSet(1, 3)])
    chain = GeneratorChain(Z, [{(0,)}, {(-1,), (0,), (1,)}])
    with pytest.raises(RangeError):
        chain[5]


def test_addition_maps():
    assert signed_sum_image(Z, [(0,), (1,)], [1, -1]) == {(-1,), (0,), (1,)}
    assert addition_map_perfectness(Z, 2, 1, [2, 1]).is_yes
    with pytest.raises(InvalidSpaceError):
        addition_map_perfectness(F2, 2, 1, [2, 1])
