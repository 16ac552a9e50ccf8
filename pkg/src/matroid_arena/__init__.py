"""Matroid coloring engine: covering numbers, constructive subset exchange,
and a provably winning strategy for the on-line reveal-and-color game, with a
referee, exhaustive verifiers, a CLI and an HTTP play service."""

from .core import (
    ElementMap,
    ExplicitSpec,
    GraphicSpec,
    LinearSpec,
    Matroid,
    MatroidSpec,
    PartitionSpec,
    UniformSpec,
    clone_elements,
    contract,
    load_matroid,
    load_matroid_json,
    restrict,
    spec_from_json,
    spec_to_json,
)
from .exchange import brute_force_exchange, exchange_subsets, multiple_basis_exchange
from .game import (
    GameConfig,
    GameState,
    Transcript,
    Verdict,
    apply_alice,
    apply_bob,
    find_bob_win,
    legal_bob_moves,
    make_config,
    minimax_verdict,
    new_game,
    play,
    replay_transcript,
    transcript_dumps,
    transcript_from_json,
    transcript_to_json,
    verify_alice_wins,
    winner,
)
from .strategy import AliceState, StepResult, inductive_step, init, offline_list_color, respond
from .union import (
    Cover,
    DeficiencyWitness,
    brute_force_cover,
    check_canonical_colorable,
    chromatic_number,
    union_cover,
)

__version__ = "0.1.0"

__all__ = [
    "AliceState",
    "Cover",
    "DeficiencyWitness",
    "ElementMap",
    "ExplicitSpec",
    "GameConfig",
    "GameState",
    "GraphicSpec",
    "LinearSpec",
    "Matroid",
    "MatroidSpec",
    "PartitionSpec",
    "StepResult",
    "Transcript",
    "UniformSpec",
    "Verdict",
    "apply_alice",
    "apply_bob",
    "brute_force_cover",
    "brute_force_exchange",
    "check_canonical_colorable",
    "chromatic_number",
    "clone_elements",
    "contract",
    "exchange_subsets",
    "find_bob_win",
    "inductive_step",
    "init",
    "legal_bob_moves",
    "load_matroid",
    "load_matroid_json",
    "make_config",
    "minimax_verdict",
    "multiple_basis_exchange",
    "new_game",
    "offline_list_color",
    "play",
    "replay_transcript",
    "respond",
    "restrict",
    "spec_from_json",
    "spec_to_json",
    "transcript_dumps",
    "transcript_from_json",
    "transcript_to_json",
    "union_cover",
    "verify_alice_wins",
    "winner",
]
