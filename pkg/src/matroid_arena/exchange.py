"""Constructive subset exchange between two independent sets.

Given independent I1, I2 and X inside I1, produce Y inside I2 so that both
swapped sets (I1 minus X plus Y) and (I2 minus Y plus X) stay independent.
The construction contracts the common part, restricts to the two candidate
unions, and lets the union engine split the remaining elements; the returned
Y is re-verified on the original instance before it leaves.  An enumeration
oracle over all Y candidates backs the exhaustive tests.
"""

from __future__ import annotations

from typing import Iterable

from .core import Matroid, contract, elements_of, mask_of, restrict, sorted_elements
from .errors import InternalInfeasible, NotABasis, PreconditionViolated, TooLarge
from .union import Cover, union_cover


def _validated_masks(m: Matroid, i1, i2, x) -> tuple[int, int, int]:
    i1m = mask_of(i1, m.n)
    i2m = mask_of(i2, m.n)
    xm = mask_of(x, m.n)
    if not m.indep_mask(i1m):
        raise PreconditionViolated(f"I1 {sorted_elements(i1m)} not independent")
    if not m.indep_mask(i2m):
        raise PreconditionViolated(f"I2 {sorted_elements(i2m)} not independent")
    if xm & ~i1m:
        raise PreconditionViolated(f"X {sorted_elements(xm)} not a subset of I1")
    return i1m, i2m, xm


def exchange_subsets(
    m: Matroid, i1: Iterable[int], i2: Iterable[int], x: Iterable[int]
) -> frozenset[int]:
    """One valid Y for the (I1, I2, X) exchange, deterministically chosen.

    Elements of X shared with I2 stay put on both sides and are returned
    inside Y, which keeps the basis variant exact; the rest is found by
    covering (I1 u I2) minus the shared part with the two restrictions.
    """
    i1m, i2m, xm = _validated_masks(m, i1, i2, x)
    shared = i1m & i2m
    xp = xm & ~shared

    ground_parent = (i1m | i2m) & ~shared
    mc = contract(m, elements_of(shared))
    child_of = {p: c for c, p in enumerate(mc.element_map.to_parent)}
    sub = restrict(mc, [child_of[p] for p in sorted_elements(ground_parent)])
    to_parent = tuple(mc.element_map.to_parent[c] for c in sub.element_map.to_parent)
    to_child = {p: c for c, p in enumerate(to_parent)}

    def child_mask(parent_mask: int) -> int:
        out = 0
        for p in elements_of(parent_mask):
            out |= 1 << to_child[p]
        return out

    allowed1 = child_mask(xp | (i2m & ~shared))
    allowed2 = child_mask((i1m & ~shared & ~xp) | (i2m & ~shared))

    def layer(allowed: int) -> Matroid:
        return Matroid(
            sub.n,
            lambda mask, _a=allowed: (mask & ~_a) == 0 and sub.indep_mask(mask),
        )

    result = union_cover([layer(allowed1), layer(allowed2)])
    if not isinstance(result, Cover):
        raise InternalInfeasible(
            f"no exchange cover for I1={sorted_elements(i1m)} "
            f"I2={sorted_elements(i2m)} X={sorted_elements(xm)}"
        )
    part2_parent = 0
    for c in result.parts[1]:
        part2_parent |= 1 << to_parent[c]
    ym = (part2_parent & i2m & ~shared) | (xm & shared)

    if not m.indep_mask((i1m & ~xm) | ym) or not m.indep_mask((i2m & ~ym) | xm):
        raise InternalInfeasible("constructed Y fails re-verification")
    return elements_of(ym)


def multiple_basis_exchange(
    m: Matroid, b1: Iterable[int], b2: Iterable[int], x: Iterable[int]
) -> frozenset[int]:
    """Basis form: swapped sets are again bases and |Y| = |X|."""
    b1m = mask_of(b1, m.n)
    b2m = mask_of(b2, m.n)
    r = m.rank_full()
    for name, bm in (("B1", b1m), ("B2", b2m)):
        if bm.bit_count() != r or not m.indep_mask(bm):
            raise NotABasis(f"{name} {sorted_elements(bm)} is not a basis")
    y = exchange_subsets(m, elements_of(b1m), elements_of(b2m), x)
    xm = mask_of(x, m.n)
    ym = mask_of(y, m.n)
    swapped1 = (b1m & ~xm) | ym
    swapped2 = (b2m & ~ym) | xm
    if ym.bit_count() != xm.bit_count():
        raise InternalInfeasible("basis exchange with |Y| != |X|")
    if swapped1.bit_count() != r or swapped2.bit_count() != r:
        raise InternalInfeasible("basis exchange result not spanning")
    return y


def brute_force_exchange(
    m: Matroid, i1: Iterable[int], i2: Iterable[int], x: Iterable[int]
) -> set[frozenset[int]]:
    """All valid Y by direct enumeration over subsets of I2; test oracle."""
    i1m, i2m, xm = _validated_masks(m, i1, i2, x)
    if i2m.bit_count() > 16:
        raise TooLarge("brute-force exchange capped at |I2| <= 16")
    base1 = i1m & ~xm
    valid: set[frozenset[int]] = set()
    y = i2m
    while True:
        if m.indep_mask(base1 | y) and m.indep_mask((i2m & ~y) | xm):
            valid.add(elements_of(y))
        if y == 0:
            break
        y = (y - 1) & i2m
    return valid
