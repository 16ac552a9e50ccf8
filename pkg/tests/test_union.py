"""Union engine: covers, witnesses, covering numbers, weighted feasibility."""

import random

import pytest

import matroid_arena as ma
from matroid_arena.errors import InconsistentInput, MismatchedGroundSets, TooLarge
from matroid_arena.union import Cover, DeficiencyWitness

from conftest import (
    CATALOG,
    KNOWN_CHI,
    assert_cover_valid,
    assert_layered_cover_valid,
    formula_chi,
    names_with,
)


def test_union_two_forests_cover_k4():
    k4 = CATALOG["k4"]
    # oracle first: the exhaustive backtracking search confirms feasibility
    assert ma.brute_force_cover(k4, [1] * 6, [2] * 6) is not None
    result = ma.union_cover([k4, k4])
    assert isinstance(result, Cover)
    assert_cover_valid(k4, result, [1] * 6)


def test_union_deficiency_u13():
    u13 = CATALOG["u13"]
    result = ma.union_cover([u13, u13])
    assert isinstance(result, DeficiencyWitness)
    assert result.elements == frozenset({0, 1, 2})
    assert result.demand == 3 and result.supply == 2


def test_union_single_independent_ground():
    u33 = ma.load_matroid(ma.UniformSpec(3, 3))
    result = ma.union_cover([u33])
    assert isinstance(result, Cover)
    assert result.parts == (frozenset({0, 1, 2}),)


def test_union_mismatched_grounds():
    with pytest.raises(MismatchedGroundSets):
        ma.union_cover([CATALOG["u13"], CATALOG["u24"]])


def test_union_mixed_matroids():
    # partition forces {0,1,2} apart; uniform takes any pair
    part = CATALOG["partition"]
    u25 = ma.load_matroid(ma.UniformSpec(5, 2))
    result = ma.union_cover([part, u25, u25])
    assert isinstance(result, Cover)
    for m, p in zip([part, u25, u25], result.parts):
        assert m.is_independent(p)


def test_chromatic_number_examples():
    assert ma.chromatic_number(CATALOG["u13"]) == 3
    assert ma.chromatic_number(CATALOG["k4"]) == 2
    assert ma.chromatic_number(CATALOG["k5"]) == 3


@pytest.mark.parametrize("name", names_with(7))
def test_chromatic_number_matches_formula_oracle(name):
    m = CATALOG[name]
    assert ma.chromatic_number(m) == formula_chi(m) == KNOWN_CHI[name]


def test_wcover_k4_two_layers():
    k4 = CATALOG["k4"]
    result = ma.check_canonical_colorable(k4, [1] * 6, [2] * 6)
    assert isinstance(result, Cover)
    assert_layered_cover_valid(k4, result, [1] * 6, [2] * 6)


def test_wcover_u13_witness():
    result = ma.check_canonical_colorable(CATALOG["u13"], [1] * 3, [2] * 3)
    assert isinstance(result, DeficiencyWitness)
    assert result.supply < result.demand
    # verify the witness arithmetic directly against rank calls: two list
    # layers, each contributing rank(A) = 1
    assert result.supply == 2 * CATALOG["u13"].rank(result.elements) == 2


def test_wcover_zero_weights():
    result = ma.check_canonical_colorable(CATALOG["u24"], [0] * 4, [3] * 4)
    assert isinstance(result, Cover)
    assert result.k == 3 and all(not p for p in result.parts)


def test_wcover_list_smaller_than_weight():
    result = ma.check_canonical_colorable(CATALOG["u24"], [2, 1, 1, 1], [1, 2, 2, 2])
    assert isinstance(result, DeficiencyWitness)
    assert result.elements == frozenset({0})
    assert result.demand == 2 and result.supply == 1


def test_wcover_ragged_lists():
    # element 0 may only use layer 1; still feasible for U_{2,4}
    u24 = CATALOG["u24"]
    result = ma.check_canonical_colorable(u24, [1] * 4, [1, 2, 2, 2])
    assert isinstance(result, Cover)
    assert_layered_cover_valid(u24, result, [1] * 4, [1, 2, 2, 2])


def test_wcover_vector_validation():
    with pytest.raises(InconsistentInput):
        ma.check_canonical_colorable(CATALOG["u24"], [1] * 3, [2] * 4)
    with pytest.raises(InconsistentInput):
        ma.check_canonical_colorable(CATALOG["u24"], [1] * 4, [-1] * 4)


def test_brute_force_cover_examples():
    u24 = CATALOG["u24"]
    cover = ma.brute_force_cover(u24, [1] * 4, [2] * 4)
    assert cover is not None
    assert_cover_valid(u24, cover, [1] * 4)
    assert ma.brute_force_cover(u24, [1] * 4, [1] * 4) is None
    assert ma.brute_force_cover(CATALOG["k5"], [1] * 10, [2] * 10) is None


def test_brute_force_cover_caps():
    with pytest.raises(TooLarge):
        ma.brute_force_cover(ma.load_matroid(ma.UniformSpec(13, 3)), [1] * 13, [2] * 13)
    with pytest.raises(TooLarge):
        ma.brute_force_cover(CATALOG["u24"], [1] * 4, [5] * 4)


@pytest.mark.parametrize("name", names_with(7))
def test_engine_agrees_with_brute_force(name):
    """Constant weight/list combos plus seeded ragged vectors."""
    m = CATALOG[name]
    rng = random.Random(20260809)
    instances = [([w] * m.n, [l] * m.n) for w in (0, 1, 2) for l in (1, 2, 3)]
    for _ in range(40):
        instances.append(
            (
                [rng.randint(0, 2) for _ in range(m.n)],
                [rng.randint(1, 3) for _ in range(m.n)],
            )
        )
    for w, l in instances:
        engine = ma.check_canonical_colorable(m, w, l)
        brute = ma.brute_force_cover(m, w, l)
        assert isinstance(engine, Cover) == (brute is not None), (name, w, l)
        if isinstance(engine, Cover):
            assert_layered_cover_valid(m, engine, w, l)
        else:
            assert engine.supply < engine.demand


@pytest.mark.parametrize("name", names_with(7))
def test_witness_soundness_under_infeasible_instances(name):
    """Every witness returned satisfies its inequality by direct rank calls."""
    m = CATALOG[name]
    rng = random.Random(name)
    for _ in range(30):
        w = [rng.randint(0, 3) for _ in range(m.n)]
        l = [rng.randint(0, 2) for _ in range(m.n)]
        result = ma.check_canonical_colorable(m, w, l)
        if isinstance(result, DeficiencyWitness):
            big_k = max(l, default=0)
            supply = sum(
                m.rank([e for e in result.elements if l[e] >= i])
                for i in range(1, big_k + 1)
            )
            demand = sum(w[e] for e in result.elements)
            assert result.demand == demand and result.supply == supply < demand
