"""Referee, adversaries, transcripts and verifiers for the reveal-and-color game.

Round r: the adversary (Bob) reveals a non-empty set of elements whose lists
are not yet full and color r joins their lists; the colorer (Alice) answers
with an independent subset of the reveal, which gets color r.  The game ends
when every list holds exactly its capacity; Alice wins iff every element then
carries exactly its weight in colors.

Two verifiers close the loop: an exhaustive walk of all adversary plays
against the deterministic engine strategy (upper bound), and a full minimax
over both players that extracts an adversary winning line when one exists
(lower bound).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from . import strategy
from .core import Matroid, elements_of, load_matroid_json, mask_of, spec_to_json
from .errors import (
    IllegalMove,
    InternalInfeasible,
    NotColorable,
    PreconditionViolated,
    TooLarge,
    WrongPhase,
)
from .union import validate_vector

AWAITING_BOB = "awaiting-bob"
AWAITING_ALICE = "awaiting-alice"
FINISHED = "finished"

VERIFY_MAX_N = 5
VERIFY_MAX_L = 6  # admits the doubled-weight instances (l = 2*chi <= 6)
MINIMAX_MAX_L = 3


@dataclass(frozen=True)
class GameConfig:
    matroid: Matroid
    weights: tuple[int, ...]
    list_sizes: tuple[int, ...]
    alice: str = "engine"  # engine | human
    bob: str = "human"  # strategy name | human
    seed: int | None = None

    def game_json(self) -> dict:
        """Game-defining fields only; who supplied the moves is run metadata."""
        if self.matroid.spec is None:
            raise PreconditionViolated("cannot serialize a derived matroid")
        return {
            "matroid": spec_to_json(self.matroid.spec),
            "w": list(self.weights),
            "l": list(self.list_sizes),
        }


def make_config(
    matroid: Matroid,
    weights: Sequence[int] | None = None,
    list_sizes: Sequence[int] | None = None,
    k: int | None = None,
    alice: str = "engine",
    bob: str = "human",
    seed: int | None = None,
) -> GameConfig:
    n = matroid.n
    w = validate_vector(weights if weights is not None else [1] * n, n, "w")
    if list_sizes is None:
        if k is None:
            raise PreconditionViolated("need list sizes or k")
        list_sizes = [k] * n
    l = validate_vector(list_sizes, n, "l")
    return GameConfig(matroid, w, l, alice=alice, bob=bob, seed=seed)


@dataclass(frozen=True)
class GameState:
    lists: tuple[frozenset[int], ...]
    assigned: tuple[frozenset[int], ...]
    round: int
    phase: str
    pending: frozenset[int] | None


@dataclass(frozen=True)
class RoundRecord:
    color: int
    bob: frozenset[int]
    alice: frozenset[int]


@dataclass(frozen=True)
class Transcript:
    config: GameConfig
    rounds: tuple[RoundRecord, ...]
    result: str


@dataclass(frozen=True)
class Verdict:
    winner: str
    states_explored: int
    counterexample: Transcript | None

    def to_json(self) -> dict:
        return {
            "winner": self.winner,
            "statesExplored": self.states_explored,
            "counterexample": None
            if self.counterexample is None
            else transcript_to_json(self.counterexample),
        }


def new_game(config: GameConfig) -> GameState:
    n = config.matroid.n
    state = GameState(
        lists=tuple(frozenset() for _ in range(n)),
        assigned=tuple(frozenset() for _ in range(n)),
        round=1,
        phase=AWAITING_BOB,
        pending=None,
    )
    if eligible_mask(state, config) == 0:
        state = GameState(state.lists, state.assigned, state.round, FINISHED, None)
    return state


def eligible_mask(state: GameState, config: GameConfig) -> int:
    out = 0
    for e in range(config.matroid.n):
        if len(state.lists[e]) < config.list_sizes[e]:
            out |= 1 << e
    return out


def legal_bob_moves(state: GameState, config: GameConfig) -> Iterator[frozenset[int]]:
    """All non-empty reveals from elements with list room, ascending mask order."""
    if state.phase == FINISHED:
        return
    if state.phase != AWAITING_BOB:
        raise WrongPhase(f"phase is {state.phase}")
    elig = eligible_mask(state, config)
    v = 0
    while True:
        v = (v - elig) & elig  # next submask in ascending order
        if v == 0:
            return
        yield elements_of(v)


def apply_bob(state: GameState, config: GameConfig, v: Iterable[int]) -> GameState:
    if state.phase != AWAITING_BOB:
        raise WrongPhase(f"phase is {state.phase}")
    vmask = mask_of(v, config.matroid.n)
    if vmask == 0:
        raise IllegalMove("reveal must be non-empty")
    elig = eligible_mask(state, config)
    if vmask & ~elig:
        full = sorted(elements_of(vmask & ~elig))
        raise IllegalMove(f"list already full for elements {full}")
    color = state.round
    lists = tuple(
        state.lists[e] | {color} if vmask >> e & 1 else state.lists[e]
        for e in range(config.matroid.n)
    )
    return GameState(lists, state.assigned, state.round, AWAITING_ALICE, elements_of(vmask))


def apply_alice(state: GameState, config: GameConfig, a: Iterable[int]) -> GameState:
    if state.phase != AWAITING_ALICE:
        raise WrongPhase(f"phase is {state.phase}")
    amask = mask_of(a, config.matroid.n)
    pending = mask_of(state.pending, config.matroid.n)
    if amask & ~pending:
        raise IllegalMove("colored set not a subset of the reveal")
    if not config.matroid.indep_mask(amask):
        raise IllegalMove("colored set is dependent")
    color = state.round
    for e in elements_of(amask):
        if len(state.assigned[e]) >= config.weights[e]:
            raise IllegalMove(f"element {e} already has its full weight of colors")
        if color in state.assigned[e]:
            raise IllegalMove(f"element {e} already carries color {color}")
    assigned = tuple(
        state.assigned[e] | {color} if amask >> e & 1 else state.assigned[e]
        for e in range(config.matroid.n)
    )
    nxt = GameState(state.lists, assigned, state.round + 1, AWAITING_BOB, None)
    if eligible_mask(nxt, config) == 0:
        nxt = GameState(nxt.lists, nxt.assigned, nxt.round, FINISHED, None)
    return nxt


def winner(state: GameState, config: GameConfig) -> str | None:
    if state.phase != FINISHED:
        return None
    ok = all(
        len(state.assigned[e]) == config.weights[e] for e in range(config.matroid.n)
    )
    return "alice" if ok else "bob"


# ---------------------------------------------------------------------------
# adversary strategies
# ---------------------------------------------------------------------------


def _bob_full(state: GameState, config: GameConfig, rng) -> frozenset[int]:
    return elements_of(eligible_mask(state, config))


def _bob_singletons(state: GameState, config: GameConfig, rng) -> frozenset[int]:
    elig = eligible_mask(state, config)
    return frozenset([(elig & -elig).bit_length() - 1])


def _bob_random(state: GameState, config: GameConfig, rng) -> frozenset[int]:
    elems = sorted(elements_of(eligible_mask(state, config)))
    while True:
        pick = [e for e in elems if rng.random() < 0.5]
        if pick:
            return frozenset(pick)


def _bob_tight(state: GameState, config: GameConfig, rng) -> frozenset[int]:
    """A minimal dependent subset of the eligible elements, else everything."""
    m = config.matroid
    elig = eligible_mask(state, config)
    if m.indep_mask(elig):
        return elements_of(elig)
    d = elig
    for e in sorted(elements_of(elig)):
        probe = d & ~(1 << e)
        if not m.indep_mask(probe):
            d = probe
    return elements_of(d)


BOB_STRATEGIES: dict[str, Callable] = {
    "full": _bob_full,
    "singletons": _bob_singletons,
    "random": _bob_random,
    "tight": _bob_tight,
}


class EngineAlice:
    """Deterministic colorer: witness strategy when the instance is feasible,
    greedy coloring otherwise (still a legal player, just beatable)."""

    def __init__(self, config: GameConfig):
        self.config = config
        try:
            self._state: strategy.AliceState | None = strategy.init(
                config.matroid, config.weights, config.list_sizes
            )
        except NotColorable:
            self._state = None

    def _greedy(self, state: GameState, pending: frozenset[int]) -> frozenset[int]:
        m = self.config.matroid
        amask = 0
        for e in sorted(pending):
            if len(state.assigned[e]) >= self.config.weights[e]:
                continue
            if m.indep_mask(amask | (1 << e)):
                amask |= 1 << e
        return elements_of(amask)

    def peek(self, state: GameState) -> frozenset[int]:
        """The move this strategy would make now, without advancing it."""
        if state.pending is None:
            raise WrongPhase("no pending reveal to answer")
        if self._state is None:
            return self._greedy(state, state.pending)
        chosen, _ = strategy.respond(self._state, state.pending)
        return chosen

    def move(self, state: GameState) -> frozenset[int]:
        if state.pending is None:
            raise WrongPhase("no pending reveal to answer")
        if self._state is None:
            return self._greedy(state, state.pending)
        chosen, self._state = strategy.respond(self._state, state.pending)
        return chosen


def play(config: GameConfig, bob: Callable | None = None) -> Transcript:
    """Run a full engine-vs-engine game; deterministic given the config."""
    if bob is None:
        if config.bob not in BOB_STRATEGIES:
            raise PreconditionViolated(f"unknown bob strategy {config.bob!r}")
        bob = BOB_STRATEGIES[config.bob]
        if config.bob == "random" and config.seed is None:
            raise PreconditionViolated("random bob needs a seed")
    rng = random.Random(config.seed)
    alice = EngineAlice(config)
    state = new_game(config)
    rounds: list[RoundRecord] = []
    while state.phase != FINISHED:
        v = bob(state, config, rng)
        state = apply_bob(state, config, v)
        a = alice.move(state)
        state = apply_alice(state, config, a)
        rounds.append(RoundRecord(color=state.round - 1, bob=v, alice=a))
    return Transcript(config=config, rounds=tuple(rounds), result=winner(state, config))


# ---------------------------------------------------------------------------
# transcripts
# ---------------------------------------------------------------------------


def transcript_to_json(t: Transcript) -> dict:
    return {
        "config": t.config.game_json(),
        "rounds": [
            {"color": r.color, "bob": sorted(r.bob), "alice": sorted(r.alice)}
            for r in t.rounds
        ],
        "result": t.result,
    }


def transcript_dumps(t: Transcript) -> str:
    """Canonical byte form: compact separators, fixed field order."""
    return json.dumps(transcript_to_json(t), separators=(",", ":"))


def transcript_from_json(obj: dict) -> Transcript:
    matroid = load_matroid_json(obj["config"]["matroid"])
    config = GameConfig(
        matroid=matroid,
        weights=validate_vector(obj["config"]["w"], matroid.n, "w"),
        list_sizes=validate_vector(obj["config"]["l"], matroid.n, "l"),
        alice="human",
        bob="human",
    )
    rounds = tuple(
        RoundRecord(
            color=int(r["color"]),
            bob=frozenset(int(e) for e in r["bob"]),
            alice=frozenset(int(e) for e in r["alice"]),
        )
        for r in obj["rounds"]
    )
    return Transcript(config=config, rounds=rounds, result=str(obj["result"]))


def replay_transcript(t: Transcript) -> GameState:
    """Feed the recorded rounds back through the referee; the final state must
    reproduce the recorded result or the transcript is corrupt."""
    config = t.config
    state = new_game(config)
    for i, rec in enumerate(t.rounds, start=1):
        if rec.color != i:
            raise IllegalMove(f"round {i} recorded color {rec.color}")
        state = apply_bob(state, config, rec.bob)
        state = apply_alice(state, config, rec.alice)
    if state.phase != FINISHED:
        raise IllegalMove("transcript ends before the lists are full")
    if winner(state, config) != t.result:
        raise IllegalMove(
            f"transcript claims {t.result}, referee says {winner(state, config)}"
        )
    return state


# ---------------------------------------------------------------------------
# exhaustive verification: the colorer side
# ---------------------------------------------------------------------------


class _BobWinFound(Exception):
    def __init__(self, path: list[int]):
        self.path = path


def verify_alice_wins(
    m: Matroid,
    weights: Sequence[int],
    list_sizes: Sequence[int],
    move_universe: str = "full",
    memo: bool = True,
) -> Verdict:
    """Walk every adversary reveal sequence against the deterministic engine
    strategy.  Positions are memoized on (cover, remaining capacities): the
    strategy's behaviour depends on nothing else.

    move_universe "full" explores all non-empty reveals and enforces the
    exhaustive-search caps; "capped" restricts the adversary to singletons
    plus the maximal reveal, which scales further but certifies less.
    """
    w = validate_vector(weights, m.n, "w")
    l = validate_vector(list_sizes, m.n, "l")
    if move_universe not in ("full", "capped"):
        raise PreconditionViolated(f"unknown move universe {move_universe!r}")
    if move_universe == "full" and (m.n > VERIFY_MAX_N or max(l, default=0) > VERIFY_MAX_L):
        raise TooLarge(
            f"exhaustive verification capped at n<={VERIFY_MAX_N}, l<={VERIFY_MAX_L}"
        )
    state0 = strategy.init(m, w, l)  # NotColorable propagates: hypothesis fails
    parts0 = tuple(mask_of(p, m.n) for p in state0.cover.parts)

    step_cache: dict[tuple[tuple[int, ...], int], tuple[int, tuple[int, ...]]] = {}
    seen: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}
    distinct: set = set()

    def transitions(parts: tuple[int, ...], vmask: int):
        key = (parts, vmask)
        hit = step_cache.get(key)
        if hit is None:
            chosen, new_parts = strategy._step_masks(m, parts, vmask)
            strategy._verify_step(m, parts, vmask, chosen, new_parts)
            hit = (chosen, tuple(new_parts))
            step_cache[key] = hit
        return hit

    def reveals(elig: int) -> Iterator[int]:
        if move_universe == "capped":
            rest = elig
            while rest:
                low = rest & -rest
                rest ^= low
                yield low
            if elig.bit_count() > 1:
                yield elig
            return
        v = 0
        while True:
            v = (v - elig) & elig
            if v == 0:
                return
            yield v

    def explore(parts: tuple[int, ...], rl: tuple[int, ...], path: list[int]) -> None:
        key = (parts, rl)
        if memo and key in seen:
            if not seen[key]:
                raise _BobWinFound(path.copy())
            return
        distinct.add(key)
        elig = 0
        for e in range(m.n):
            if rl[e] > 0:
                elig |= 1 << e
        if elig == 0:
            ok = all(p == 0 for p in parts)
            if memo:
                seen[key] = ok
            if not ok:
                raise _BobWinFound(path.copy())
            return
        if memo:
            seen[key] = True  # provisional; cycles are impossible (capacity strictly drops)
        for vmask in reveals(elig):
            chosen, new_parts = transitions(parts, vmask)
            new_rl = tuple(
                rl[e] - (1 if vmask >> e & 1 else 0) for e in range(m.n)
            )
            path.append(vmask)
            explore(new_parts, new_rl, path)
            path.pop()

    try:
        explore(parts0, l, [])
    except _BobWinFound as found:
        config = GameConfig(m, w, l, alice="engine", bob="scripted")
        script = iter(found.path)
        t = play(config, bob=lambda s, c, r: elements_of(next(script)))
        return Verdict(winner="bob", states_explored=len(distinct), counterexample=t)
    return Verdict(winner="alice", states_explored=len(distinct), counterexample=None)


# ---------------------------------------------------------------------------
# minimax: the adversary side
# ---------------------------------------------------------------------------


def _minimax_bob_wins(
    m: Matroid,
    w: tuple[int, ...],
    l: tuple[int, ...],
    memo: bool,
    symmetry: bool,
) -> tuple[Callable, Callable, dict]:
    """Returns (bob_wins(slots, weights), winning_reveal(slots, weights), table).

    State is per-element (remaining list slots, remaining weight); colors are
    fresh every round so nothing else carries across rounds.  The adversary
    quantifies existentially over reveals, the colorer universally over all
    independent answers, not just the engine strategy's.
    """
    n = m.n
    table = {}
    distinct: set = set()
    canon = None
    if symmetry:
        # sound for uniform matroids: every element permutation is an automorphism
        def canon(slots, wts):
            return tuple(sorted(zip(slots, wts)))

    def alice_answers(vmask: int, wts: tuple[int, ...]) -> Iterator[int]:
        pool = 0
        for e in range(n):
            if vmask >> e & 1 and wts[e] > 0:
                pool |= 1 << e
        a = 0
        while True:
            if m.indep_mask(a):
                yield a
            a = (a - pool) & pool
            if a == 0:
                return

    def bob_wins(slots: tuple[int, ...], wts: tuple[int, ...]) -> bool:
        key = canon(slots, wts) if canon else (slots, wts)
        if memo and key in table:
            return table[key]
        distinct.add(key)
        elig = 0
        for e in range(n):
            if slots[e] > 0:
                elig |= 1 << e
        if elig == 0:
            out = any(x > 0 for x in wts)
        else:
            out = winning_reveal(slots, wts) is not None
        if memo:
            table[key] = out
        return out

    def winning_reveal(slots: tuple[int, ...], wts: tuple[int, ...]) -> int | None:
        elig = 0
        for e in range(n):
            if slots[e] > 0:
                elig |= 1 << e
        v = 0
        while True:
            v = (v - elig) & elig
            if v == 0:
                return None
            new_slots = tuple(
                slots[e] - (1 if v >> e & 1 else 0) for e in range(n)
            )
            if all(
                bob_wins(
                    new_slots,
                    tuple(wts[e] - (1 if a >> e & 1 else 0) for e in range(n)),
                )
                for a in alice_answers(v, wts)
            ):
                return v

    return bob_wins, winning_reveal, distinct


def find_bob_win(
    m: Matroid,
    weights: Sequence[int],
    list_sizes: Sequence[int],
    memo: bool = True,
    symmetry: bool = False,
) -> Transcript | None:
    """A replay-verified adversary winning line, or None when the colorer has
    the game (full minimax over both players)."""
    verdict = minimax_verdict(m, weights, list_sizes, memo=memo, symmetry=symmetry)
    return verdict.counterexample


def minimax_verdict(
    m: Matroid,
    weights: Sequence[int],
    list_sizes: Sequence[int],
    memo: bool = True,
    symmetry: bool = False,
) -> Verdict:
    w = validate_vector(weights, m.n, "w")
    l = validate_vector(list_sizes, m.n, "l")
    if m.n > VERIFY_MAX_N or max(l, default=0) > MINIMAX_MAX_L:
        raise TooLarge(f"minimax capped at n<={VERIFY_MAX_N}, l<={MINIMAX_MAX_L}")
    bob_wins, winning_reveal, distinct = _minimax_bob_wins(m, w, l, memo, symmetry)
    if not bob_wins(l, w):
        return Verdict(winner="alice", states_explored=len(distinct), counterexample=None)

    # walk the winning strategy against a deterministic greedy defender
    config = GameConfig(m, w, l, alice="human", bob="minimax")
    state = new_game(config)
    slots, wts = l, w
    rounds: list[RoundRecord] = []
    while state.phase != FINISHED:
        v = winning_reveal(slots, wts)
        if v is None:
            raise InternalInfeasible("winning line lost on reconstruction")
        state = apply_bob(state, config, elements_of(v))
        amask = 0
        for e in sorted(elements_of(v)):
            if wts[e] > 0 and m.indep_mask(amask | (1 << e)):
                amask |= 1 << e
        state = apply_alice(state, config, elements_of(amask))
        rounds.append(
            RoundRecord(state.round - 1, elements_of(v), elements_of(amask))
        )
        slots = tuple(slots[e] - (1 if v >> e & 1 else 0) for e in range(m.n))
        wts = tuple(wts[e] - (1 if amask >> e & 1 else 0) for e in range(m.n))
    t = Transcript(config, tuple(rounds), winner(state, config))
    if t.result != "bob":
        raise InternalInfeasible("reconstructed line did not win")
    replay_transcript(t)
    return Verdict(winner="bob", states_explored=len(distinct), counterexample=t)
