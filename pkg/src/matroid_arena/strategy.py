"""The coloring player's constructive strategy for the on-line game.

The engine keeps a private witness: an ordered cover I_1..I_k of the ground
set in which element e appears exactly residual_w(e) times and only in parts
whose index fits under e's remaining list capacity.  Each adversary reveal V
is answered by a cascade of subset exchanges that pushes V-elements one part
forward, ejects an independent I from the last part, and leaves a witness
for the reduced instance.  Two step conditions are re-verified on every call
rather than trusted:

  (1) the updated parts cover each element exactly residual_w(e) - [e in I]
      times, and
  (2) any element landing in updated part s came from an original part t
      with t >= s + [e in V], which is what keeps part indices under the
      shrinking list capacities.

The same machinery colors off-line list assignments by replaying the game
against the list contents, one color per round.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .core import Matroid, elements_of, mask_of, sorted_elements
from .errors import (
    IllegalMove,
    InternalInfeasible,
    NotColorable,
    PreconditionViolated,
)
from .exchange import exchange_subsets
from .union import Cover, DeficiencyWitness, check_canonical_colorable, validate_vector


@dataclass(frozen=True)
class StepResult:
    chosen: frozenset[int]
    new_cover: Cover


@dataclass(frozen=True)
class AliceState:
    """Private strategy state between rounds; treat as an immutable value."""

    matroid: Matroid
    cover: Cover
    residual_w: tuple[int, ...]
    residual_l: tuple[int, ...]
    assigned: tuple[frozenset[int], ...]
    round: int


def _cover_masks(m: Matroid, cover: Cover) -> list[int]:
    return [mask_of(p, m.n) for p in cover.parts]


def _check_wcover(m: Matroid, parts: Sequence[int], w: Sequence[int]) -> None:
    for pmask in parts:
        if not m.indep_mask(pmask):
            raise PreconditionViolated(
                f"cover part {sorted_elements(pmask)} not independent"
            )
    for e in range(m.n):
        mult = sum(1 for pmask in parts if pmask >> e & 1)
        if mult != w[e]:
            raise PreconditionViolated(
                f"element {e} covered {mult} times, weight demands {w[e]}"
            )


def _step_masks(
    m: Matroid, parts: Sequence[int], vmask: int
) -> tuple[int, list[int]]:
    """Run the exchange cascade; returns (chosen mask, new part masks)."""
    k = len(parts)
    new_parts: list[int] = []
    chosen = 0
    cur = parts[0] if k else 0
    for i in range(k):
        nxt = parts[i + 1] if i + 1 < k else 0
        x = (vmask & cur) & ~nxt
        if i + 1 < k:
            y = mask_of(
                exchange_subsets(
                    m, elements_of(cur), elements_of(nxt), elements_of(x)
                ),
                m.n,
            )
            new_parts.append((cur & ~x) | y)
            cur = (nxt & ~y) | x
        else:
            chosen = x
            new_parts.append(cur & ~x)
    return chosen, new_parts


def _verify_step(
    m: Matroid,
    parts: Sequence[int],
    vmask: int,
    chosen: int,
    new_parts: Sequence[int],
) -> None:
    if chosen & ~vmask:
        raise InternalInfeasible("chosen set leaves the revealed set")
    if not m.indep_mask(chosen):
        raise InternalInfeasible("chosen set not independent")
    for e in range(m.n):
        bit = 1 << e
        old_mult = sum(1 for p in parts if p & bit)
        new_mult = sum(1 for p in new_parts if p & bit)
        if new_mult != old_mult - (1 if chosen & bit else 0):
            raise InternalInfeasible(f"condition (1) broken at element {e}")
    for s, pmask in enumerate(new_parts):
        if not m.indep_mask(pmask):
            raise InternalInfeasible(f"updated part {s} not independent")
        rest = pmask
        while rest:
            low = rest & -rest
            rest ^= low
            e = low.bit_length() - 1
            need = s + (1 if vmask & low else 0)
            if not any(parts[t] & low for t in range(need, len(parts))):
                raise InternalInfeasible(f"condition (2) broken at element {e}")


def inductive_step(
    m: Matroid, cover: Cover, weights: Sequence[int], v: Iterable[int]
) -> StepResult:
    """One cover update for reveal V; validates the w-cover precondition and
    re-verifies conditions (1) and (2) on the output."""
    w = validate_vector(weights, m.n, "w")
    parts = _cover_masks(m, cover)
    _check_wcover(m, parts, w)
    vmask = mask_of(v, m.n)
    chosen, new_parts = _step_masks(m, parts, vmask)
    _verify_step(m, parts, vmask, chosen, new_parts)
    return StepResult(
        elements_of(chosen), Cover(tuple(elements_of(p) for p in new_parts))
    )


def init(m: Matroid, weights: Sequence[int], list_sizes: Sequence[int]) -> AliceState:
    """Start a game: find the initial witness cover or refuse with the
    deficiency witness (the instance is then unwinnable, not just unhandled)."""
    w = validate_vector(weights, m.n, "w")
    l = validate_vector(list_sizes, m.n, "l")
    result = check_canonical_colorable(m, w, l)
    if isinstance(result, DeficiencyWitness):
        raise NotColorable(result)
    return AliceState(
        matroid=m,
        cover=result,
        residual_w=w,
        residual_l=l,
        assigned=tuple(frozenset() for _ in range(m.n)),
        round=1,
    )


def _check_state(state: AliceState) -> None:
    m = state.matroid
    parts = _cover_masks(m, state.cover)
    _check_wcover(m, parts, state.residual_w)
    for e in range(m.n):
        if not 0 <= state.residual_w[e] <= state.residual_l[e]:
            raise InternalInfeasible(f"capacity invariant broken at element {e}")
    for s, pmask in enumerate(parts):
        for e in elements_of(pmask):
            if s + 1 > state.residual_l[e]:
                raise InternalInfeasible(
                    f"part {s + 1} holds element {e} beyond its list capacity"
                )


def respond(state: AliceState, v: Iterable[int]) -> tuple[frozenset[int], AliceState]:
    """Answer reveal V: color an independent I with this round's color and
    hand back the successor state."""
    m = state.matroid
    vmask = mask_of(v, m.n)
    if vmask == 0:
        raise IllegalMove("reveal must be non-empty")
    for e in elements_of(vmask):
        if state.residual_l[e] < 1:
            raise IllegalMove(f"list of element {e} is already full")

    parts = _cover_masks(m, state.cover)
    chosen, new_parts = _step_masks(m, parts, vmask)
    _verify_step(m, parts, vmask, chosen, new_parts)

    new_state = AliceState(
        matroid=m,
        cover=Cover(tuple(elements_of(p) for p in new_parts)),
        residual_w=tuple(
            state.residual_w[e] - (1 if chosen >> e & 1 else 0) for e in range(m.n)
        ),
        residual_l=tuple(
            state.residual_l[e] - (1 if vmask >> e & 1 else 0) for e in range(m.n)
        ),
        assigned=tuple(
            state.assigned[e] | {state.round} if chosen >> e & 1 else state.assigned[e]
            for e in range(m.n)
        ),
        round=state.round + 1,
    )
    _check_state(new_state)
    return elements_of(chosen), new_state


def offline_list_color(
    m: Matroid, weights: Sequence[int], lists: Sequence[Iterable[int]]
) -> tuple[frozenset[int], ...]:
    """Color from arbitrary lists by replaying the on-line game against the
    lists themselves: reveal every list containing color c in one round, in
    ascending color order.

    Returns W with |W(e)| = w(e), W(e) inside L(e), and every color class
    independent; raises NotColorable when the canonical-list gate fails.
    """
    w = validate_vector(weights, m.n, "w")
    if len(lists) != m.n:
        raise PreconditionViolated(f"{len(lists)} lists for ground size {m.n}")
    pools = [frozenset(int(c) for c in lst) for lst in lists]
    state = init(m, w, tuple(len(p) for p in pools))
    palette = sorted(set().union(*pools)) if pools else []
    result = [set() for _ in range(m.n)]
    for color in palette:
        revealed = [e for e in range(m.n) if color in pools[e]]
        if not revealed:
            continue
        chosen, state = respond(state, revealed)
        for e in chosen:
            result[e].add(color)
    colored = tuple(frozenset(s) for s in result)
    for e in range(m.n):
        if len(colored[e]) != w[e]:
            raise InternalInfeasible(f"element {e} got {len(colored[e])} colors")
        if not colored[e] <= pools[e]:
            raise InternalInfeasible(f"element {e} colored outside its list")
    for color in palette:
        cls = [e for e in range(m.n) if color in colored[e]]
        if not m.is_independent(cls):
            raise InternalInfeasible(f"color class {color} not independent")
    return colored
