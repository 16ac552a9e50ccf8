"""Matroid union engine.

Covers a ground set by sets independent in k given matroid oracles via
breadth-first augmenting search over the exchange digraph, or returns a
deficiency witness set A with sum_i r_i(A) < |A| certifying impossibility.
On top of it: covering numbers, weighted canonical-list cover feasibility
(the gate for the coloring game), and an exhaustive backtracking oracle used
to cross-check the engine at desk scale.

Every returned cover and witness is re-verified against the raw oracles
before it leaves this module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .core import Matroid, clone_elements, elements_of, mask_of, sorted_elements
from .errors import (
    InconsistentInput,
    InternalInfeasible,
    MismatchedGroundSets,
    PreconditionViolated,
    TooLarge,
)

BRUTE_MAX_N = 12
BRUTE_MAX_L = 4


@dataclass(frozen=True)
class Cover:
    """Ordered color classes; index i (0-based here, color i+1 in transcripts)."""

    parts: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.parts)

    def multiplicity(self, e: int) -> int:
        return sum(1 for p in self.parts if e in p)

    def to_json(self) -> dict:
        return {"parts": [sorted(p) for p in self.parts]}

    @staticmethod
    def from_json(obj: dict) -> "Cover":
        return Cover(tuple(frozenset(int(e) for e in p) for p in obj["parts"]))


@dataclass(frozen=True)
class DeficiencyWitness:
    """Set A whose total supply of independence falls short of its demand."""

    elements: frozenset[int]
    demand: int
    supply: int

    def to_json(self) -> dict:
        return {"A": sorted(self.elements), "demand": self.demand, "supply": self.supply}


def weights_from_json(obj: dict, n: int) -> tuple[int, ...]:
    return validate_vector(obj["w"], n, "w")


def list_sizes_from_json(obj: dict, n: int) -> tuple[int, ...]:
    return validate_vector(obj["l"], n, "l")


def validate_vector(values, n: int, name: str) -> tuple[int, ...]:
    vec = tuple(int(v) for v in values)
    if len(vec) != n:
        raise InconsistentInput(f"{name} has {len(vec)} entries for ground size {n}")
    if any(v < 0 for v in vec):
        raise InconsistentInput(f"{name} entries must be >= 0")
    return vec


def _assert_partition_cover(matroids: Sequence[Matroid], parts: list[int]) -> None:
    n = matroids[0].n
    covered = 0
    for m, pmask in zip(matroids, parts):
        if not m.indep_mask(pmask):
            raise InternalInfeasible(f"part {sorted_elements(pmask)} not independent")
        if covered & pmask:
            raise InternalInfeasible("parts overlap")
        covered |= pmask
    if covered != (1 << n) - 1:
        raise InternalInfeasible("cover misses elements")


def union_cover(matroids: Sequence[Matroid]) -> Cover | DeficiencyWitness:
    """Partition {0..n-1} into parts independent in the respective matroids.

    Elements are inserted in ascending order; each insertion searches the
    exchange digraph breadth-first for a shortest augmenting swap sequence.
    When no sequence exists, the set of reachable elements is the witness.
    """
    if not matroids:
        raise PreconditionViolated("union over zero matroids")
    n = matroids[0].n
    if any(m.n != n for m in matroids):
        raise MismatchedGroundSets([m.n for m in matroids])
    k = len(matroids)
    parts = [0] * k

    for e0 in range(n):
        prev: dict[int, tuple[int, int]] = {e0: (-1, -1)}  # elem -> (pred, arc part)
        queue = deque([e0])
        landing: tuple[int, int] | None = None  # (element, part that takes it)
        while queue and landing is None:
            x = queue.popleft()
            xbit = 1 << x
            for i in range(k):
                if parts[i] & xbit:
                    continue
                if matroids[i].indep_mask(parts[i] | xbit):
                    landing = (x, i)
                    break
                # x displaces y in part i when the swap stays independent
                rest = parts[i]
                while rest:
                    low = rest & -rest
                    rest ^= low
                    y = low.bit_length() - 1
                    if y in prev:
                        continue
                    if matroids[i].indep_mask((parts[i] ^ low) | xbit):
                        prev[y] = (x, i)
                        queue.append(y)
        if landing is None:
            a_mask = 0
            for x in prev:
                a_mask |= 1 << x
            aset = elements_of(a_mask)
            supply = sum(m.rank_mask(a_mask) for m in matroids)
            if supply >= len(aset):
                raise InternalInfeasible("blocked search without rank deficiency")
            return DeficiencyWitness(aset, demand=len(aset), supply=supply)
        x, i = landing
        parts[i] |= 1 << x
        while True:
            px, pi = prev[x]
            if px < 0:
                break
            # px replaces x in part pi
            parts[pi] = (parts[pi] ^ (1 << x)) | (1 << px)
            x = px

    _assert_partition_cover(matroids, parts)
    return Cover(tuple(elements_of(p) for p in parts))


def chromatic_number(m: Matroid) -> int:
    """Least k with a partition into k independent sets, scanning k upward."""
    if m.n == 0:
        return 0
    r = m.rank_full()
    if r == 0:
        raise PreconditionViolated("matroid with loops has no proper coloring")
    k = max(1, -(-m.n // r))
    while True:
        if isinstance(union_cover([m] * k), Cover):
            return k
        k += 1


def check_canonical_colorable(
    m: Matroid, weights: Sequence[int], list_sizes: Sequence[int]
) -> Cover | DeficiencyWitness:
    """Decide weighted colorability from canonical lists {1..l(e)}.

    Looks for parts I_1..I_K (K = max l) with I_i inside {e : l(e) >= i},
    every part independent, and element e in exactly w(e) parts.  Reduction:
    clone each element w(e) times, then run the union engine against K
    restrictions of the clone.  The answer pulled back to original ids is
    re-verified before return; witnesses come back in original ids too.
    """
    w = validate_vector(weights, m.n, "w")
    l = validate_vector(list_sizes, m.n, "l")
    for e in range(m.n):
        if l[e] < w[e]:
            return DeficiencyWitness(frozenset([e]), demand=w[e], supply=l[e])
    big_k = max(l, default=0)
    if sum(w) == 0:
        return Cover(tuple(frozenset() for _ in range(big_k)))
    cloned, copy_map = clone_elements(m, w)
    allowed_masks = []
    for i in range(1, big_k + 1):
        allowed = 0
        for j, orig in enumerate(copy_map):
            if l[orig] >= i:
                allowed |= 1 << j
        allowed_masks.append(allowed)

    def layer(allowed: int):
        return Matroid(
            cloned.n,
            lambda mask, _a=allowed: (mask & ~_a) == 0 and cloned.indep_mask(mask),
        )

    result = union_cover([layer(a) for a in allowed_masks])
    if isinstance(result, DeficiencyWitness):
        originals = frozenset(copy_map[j] for j in result.elements)
        demand = sum(w[e] for e in originals)
        supply = 0
        for i in range(1, big_k + 1):
            layer_set = [e for e in originals if l[e] >= i]
            supply += m.rank_mask(mask_of(layer_set, m.n))
        if supply >= demand:
            raise InternalInfeasible("pulled-back witness lost its deficiency")
        return DeficiencyWitness(originals, demand=demand, supply=supply)

    parts = []
    for i, cpart in enumerate(result.parts, start=1):
        part = frozenset(copy_map[j] for j in cpart)
        if len(part) != len(cpart):
            raise InternalInfeasible("two copies of one element in a part")
        if not m.indep_mask(mask_of(part, m.n)):
            raise InternalInfeasible("pulled-back part not independent")
        if any(l[e] < i for e in part):
            raise InternalInfeasible("part exceeds its canonical list layer")
        parts.append(part)
    cover = Cover(tuple(parts))
    for e in range(m.n):
        if cover.multiplicity(e) != w[e]:
            raise InternalInfeasible(f"element {e} covered wrong number of times")
    return cover


def brute_force_cover(
    m: Matroid, weights: Sequence[int], list_sizes: Sequence[int]
) -> Cover | None:
    """Exhaustive backtracking over per-element color choices; test oracle.

    Same feasibility answer as check_canonical_colorable, found without the
    union engine.  Enforced caps keep it desk-scale.
    """
    w = validate_vector(weights, m.n, "w")
    l = validate_vector(list_sizes, m.n, "l")
    if m.n > BRUTE_MAX_N or max(l, default=0) > BRUTE_MAX_L:
        raise TooLarge(f"brute force capped at n<={BRUTE_MAX_N}, l<={BRUTE_MAX_L}")
    if any(l[e] < w[e] for e in range(m.n)):
        return None
    big_k = max(l, default=0)
    parts = [0] * big_k

    def place(e: int) -> bool:
        if e == m.n:
            return True
        bit = 1 << e
        for combo in combinations(range(l[e]), w[e]):
            if all(m.indep_mask(parts[c] | bit) for c in combo):
                for c in combo:
                    parts[c] |= bit
                if place(e + 1):
                    return True
                for c in combo:
                    parts[c] ^= bit
        return False

    if not place(0):
        return None
    return Cover(tuple(elements_of(p) for p in parts))
