"""Subset exchange: construction vs enumeration oracle, basis form."""

import numpy as np
import pytest

import matroid_arena as ma
from matroid_arena.core import elements_of
from matroid_arena.errors import NotABasis, PreconditionViolated, TooLarge

from conftest import CATALOG


def _valid(m, i1, i2, x, y):
    i1, i2, x, y = map(frozenset, (i1, i2, x, y))
    return (
        y <= i2
        and m.is_independent((i1 - x) | y)
        and m.is_independent((i2 - y) | x)
    )


def test_brute_force_u24_enumeration():
    u24 = CATALOG["u24"]
    valid = ma.brute_force_exchange(u24, [0, 1], [2, 3], [0])
    assert valid == {frozenset({2}), frozenset({3})}


def test_brute_force_empty_x_contains_empty():
    valid = ma.brute_force_exchange(CATALOG["k3"], [0, 1], [2], [])
    assert frozenset() in valid


def test_brute_force_parallel_pair():
    u12 = ma.load_matroid(ma.ExplicitSpec(2, ((), (0,), (1,))))
    valid = ma.brute_force_exchange(u12, [0], [1], [0])
    # Y = {} fails: (I2 \ Y) + X = {0,1} is the parallel circuit
    assert valid == {frozenset({1})}
    assert ma.exchange_subsets(u12, [0], [1], [0]) == frozenset({1})


def test_exchange_u24_returns_valid_choice():
    u24 = CATALOG["u24"]
    y = ma.exchange_subsets(u24, [0, 1], [2, 3], [0])
    assert y in ma.brute_force_exchange(u24, [0, 1], [2, 3], [0])


def test_exchange_empty_x():
    u24 = CATALOG["u24"]
    y = ma.exchange_subsets(u24, [0, 1], [2, 3], [])
    assert _valid(u24, [0, 1], [2, 3], [], y)


def test_exchange_full_basis_swap():
    k3 = CATALOG["k3"]
    y = ma.exchange_subsets(k3, [0, 1], [0, 2], [0, 1])
    assert _valid(k3, [0, 1], [0, 2], [0, 1], y)


def test_exchange_overlapping_sets():
    # X meeting I1 & I2 exercises the contraction reduction
    u24 = CATALOG["u24"]
    y = ma.exchange_subsets(u24, [0, 1], [1, 2], [0, 1])
    assert _valid(u24, [0, 1], [1, 2], [0, 1], y)


def test_exchange_preconditions():
    u24 = CATALOG["u24"]
    with pytest.raises(PreconditionViolated):
        ma.exchange_subsets(u24, [0, 1, 2], [3], [0])  # I1 dependent
    with pytest.raises(PreconditionViolated):
        ma.exchange_subsets(u24, [0, 1], [3], [2])  # X not inside I1


def test_brute_force_cap():
    m = ma.load_matroid(ma.UniformSpec(20, 20))
    with pytest.raises(TooLarge):
        ma.brute_force_exchange(m, [], list(range(17)), [])


def test_basis_exchange_k3():
    k3 = CATALOG["k3"]
    # edges: 0 = 01, 1 = 02, 2 = 12; bases B1 = {0,1}, B2 = {0,2}, X = {1}
    y = ma.multiple_basis_exchange(k3, [0, 1], [0, 2], [1])
    assert y == frozenset({2})  # the only valid single swap
    assert _valid(k3, [0, 1], [0, 2], [1], y)


def test_basis_exchange_identity_cases():
    u24 = CATALOG["u24"]
    assert ma.multiple_basis_exchange(u24, [0, 1], [2, 3], []) == frozenset()
    # identical bases: X must come back as Y to keep both swaps spanning
    assert ma.multiple_basis_exchange(u24, [0, 1], [0, 1], [0]) == frozenset({0})


def test_basis_exchange_sizes_and_rank():
    k4 = CATALOG["k4"]
    b1, b2 = frozenset({0, 1, 2}), frozenset({2, 4, 5})
    assert k4.rank(b1) == k4.rank(b2) == 3
    for xmask in range(8):
        x = {list(b1)[i] for i in range(3) if xmask >> i & 1}
        y = ma.multiple_basis_exchange(k4, b1, b2, x)
        assert len(y) == len(x)
        assert k4.rank((b1 - x) | y) == 3
        assert k4.rank((b2 - y) | x) == 3


def test_basis_exchange_rejects_non_basis():
    with pytest.raises(NotABasis):
        ma.multiple_basis_exchange(CATALOG["k4"], [0, 1], [2, 4, 5], [0])


@pytest.mark.parametrize("name", ["u13", "u23", "u24", "k3", "partition"])
def test_exhaustive_construction_vs_oracle(name):
    """Every (I1, I2, X): oracle finds a valid Y and the construction's Y is
    in the oracle's valid set.  (Full n<=7 sweep lives in the acceptance run.)"""
    m = CATALOG[name]
    tab = m.table()
    ind = [int(s) for s in np.nonzero(tab)[0]]
    for i1 in ind:
        x = i1
        while True:
            for i2 in ind:
                valid = ma.brute_force_exchange(
                    m, elements_of(i1), elements_of(i2), elements_of(x)
                )
                assert valid, (name, i1, i2, x)
                y = ma.exchange_subsets(
                    m, elements_of(i1), elements_of(i2), elements_of(x)
                )
                assert y in valid, (name, i1, i2, x)
            if x == 0:
                break
            x = (x - 1) & i1
