"""Command-line front door.

Machine-readable JSON goes to stdout, human summaries to stderr, and the
exit code alone tells scripts what happened: 0 success / colorer wins,
1 infeasible or adversary wins, 2 bad input, 3 internal assertion failure.
Every command is deterministic given its flags (including --seed).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

import numpy as np

from . import game, service, strategy
from .core import Matroid, elements_of, load_matroid_json, mask_of
from .errors import (
    IllegalMove,
    InternalInfeasible,
    MatroidArenaError,
    NotColorable,
    PreconditionViolated,
    SpecInvalid,
    TooLarge,
)
from .exchange import brute_force_exchange, exchange_subsets
from .union import (
    Cover,
    DeficiencyWitness,
    check_canonical_colorable,
    chromatic_number,
    union_cover,
    validate_vector,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

log = logging.getLogger("matroid_arena")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_matroid_file(path: str) -> Matroid:
    return load_matroid_json(_read_json(path))


def _weights(args, n: int) -> tuple[int, ...]:
    if getattr(args, "weights", None):
        return validate_vector(_read_json(args.weights)["w"], n, "w")
    return tuple([1] * n)


def _list_sizes(args, n: int) -> tuple[int, ...]:
    if getattr(args, "lists", None):
        return validate_vector(_read_json(args.lists)["l"], n, "l")
    if getattr(args, "k", None) is not None:
        return tuple([args.k] * n)
    raise SpecInvalid("need --lists or --k")


def cmd_chroma(args) -> int:
    m = _load_matroid_file(args.matroid)
    chi = chromatic_number(m)
    cover = union_cover([m] * chi)
    assert isinstance(cover, Cover)
    _emit({"chi": chi, "cover": cover.to_json()})
    _note(f"chromatic number {chi} with a {chi}-part cover")
    return EXIT_OK


def cmd_wcover(args) -> int:
    m = _load_matroid_file(args.matroid)
    w = _weights(args, m.n)
    l = validate_vector(_read_json(args.lists)["l"], m.n, "l")
    result = check_canonical_colorable(m, w, l)
    if isinstance(result, DeficiencyWitness):
        _emit({"witness": result.to_json()})
        _note(f"infeasible: demand {result.demand} > supply {result.supply} on {sorted(result.elements)}")
        return EXIT_INFEASIBLE
    _emit({"cover": result.to_json()})
    _note(f"feasible with {result.k} canonical color layers")
    return EXIT_OK


def cmd_play(args) -> int:
    m = _load_matroid_file(args.matroid)
    config = game.make_config(
        m,
        weights=_weights(args, m.n),
        list_sizes=_list_sizes(args, m.n),
        alice="engine",
        bob=args.bob,
        seed=args.seed,
    )
    if args.bob not in game.BOB_STRATEGIES:
        raise SpecInvalid(f"unknown bob strategy {args.bob!r}")
    t = game.play(config)
    payload = game.transcript_dumps(t)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    sys.stdout.write(payload + "\n")
    _note(f"{t.result} wins after {len(t.rounds)} rounds (bob={args.bob})")
    return EXIT_OK if t.result == "alice" else EXIT_INFEASIBLE


def cmd_verify(args) -> int:
    m = _load_matroid_file(args.matroid)
    w = _weights(args, m.n)
    l = _list_sizes(args, m.n)
    if args.mode == "exhaustive":
        verdict = game.verify_alice_wins(m, w, l, move_universe=args.move_universe)
    else:
        verdict = game.minimax_verdict(m, w, l)
    _emit(verdict.to_json())
    _note(f"{args.mode}: winner {verdict.winner}, {verdict.states_explored} states")
    return EXIT_OK if verdict.winner == "alice" else EXIT_INFEASIBLE


def cmd_exchange_check(args) -> int:
    m = _load_matroid_file(args.matroid)
    checked = failed = 0
    if args.exhaustive:
        if m.n > 7:
            raise TooLarge("exhaustive exchange check capped at n <= 7")
        tab = m.table()
        ind_masks = [int(s) for s in np.nonzero(tab)[0]]
        for i1 in ind_masks:
            x = i1
            while True:
                for i2 in ind_masks:
                    checked += 1
                    if not _one_exchange_ok(m, i1, i2, x):
                        failed += 1
                if x == 0:
                    break
                x = (x - 1) & i1
    else:
        rng = random.Random(args.seed)
        tab = m.table()
        ind_masks = [int(s) for s in np.nonzero(tab)[0]]
        for _ in range(args.samples):
            i1 = rng.choice(ind_masks)
            i2 = rng.choice(ind_masks)
            x = 0
            for e in elements_of(i1):
                if rng.random() < 0.5:
                    x |= 1 << e
            checked += 1
            if not _one_exchange_ok(m, i1, i2, x):
                failed += 1
    _emit({"checked": checked, "passed": checked - failed, "failed": failed})
    _note(f"{checked} exchange instances, {failed} failures")
    return EXIT_OK if failed == 0 else EXIT_INTERNAL


def _one_exchange_ok(m: Matroid, i1: int, i2: int, x: int) -> bool:
    try:
        valid = brute_force_exchange(m, elements_of(i1), elements_of(i2), elements_of(x))
        if not valid:
            return False
        y = exchange_subsets(m, elements_of(i1), elements_of(i2), elements_of(x))
        return y in valid
    except MatroidArenaError:
        return False


def cmd_list_color(args) -> int:
    m = _load_matroid_file(args.matroid)
    w = _weights(args, m.n)
    lists = [[int(c) for c in lst] for lst in _read_json(args.lists)["lists"]]
    try:
        colored = strategy.offline_list_color(m, w, lists)
    except NotColorable as exc:
        _emit({"witness": exc.witness.to_json()})
        _note("infeasible: canonical-lists condition fails")
        return EXIT_INFEASIBLE
    _emit({"W": [sorted(s) for s in colored]})
    _note("colored from lists")
    return EXIT_OK


def cmd_serve(args) -> int:
    try:
        server = service.create_server(port=args.port, state_dir=args.state_dir)
    except OSError as exc:
        _note(f"cannot bind port {args.port}: {exc}")
        return EXIT_INPUT
    host, port = server.server_address[:2]
    _note(f"serving on http://{host}:{port} (state dir: {args.state_dir or 'none'})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        _note("interrupted")
    finally:
        server.server_close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matroid-arena", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("chroma", help="covering number and a witness cover")
    sp.add_argument("--matroid", required=True)
    sp.set_defaults(fn=cmd_chroma)

    sp = sub.add_parser("wcover", help="weighted canonical-list cover or witness")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--weights")
    sp.add_argument("--lists", required=True)
    sp.set_defaults(fn=cmd_wcover)

    sp = sub.add_parser("play", help="run one game against a built-in adversary")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--lists")
    sp.add_argument("--weights")
    sp.add_argument("--k", type=int)
    sp.add_argument("--bob", default="full")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_play)

    sp = sub.add_parser("verify", help="exhaustive or minimax game verification")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--weights")
    sp.add_argument("--lists")
    sp.add_argument("--mode", choices=["exhaustive", "minimax"], default="exhaustive")
    sp.add_argument("--move-universe", choices=["full", "capped"], default="full")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("exchange-check", help="exchange construction vs enumeration oracle")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exhaustive", action="store_true")
    sp.set_defaults(fn=cmd_exchange_check)

    sp = sub.add_parser("list-color", help="color from explicit lists")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--lists", required=True)
    sp.add_argument("--weights")
    sp.set_defaults(fn=cmd_list_color)

    sp = sub.add_parser("serve", help="run the HTTP play service")
    sp.add_argument("--port", type=int, default=8080)
    sp.add_argument("--state-dir")
    sp.set_defaults(fn=cmd_serve)

    return p


def main(argv=None) -> int:
    level = os.environ.get("MATROID_ARENA_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NotColorable as exc:
        _emit({"witness": exc.witness.to_json()})
        _note(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    except (InternalInfeasible,) as exc:
        _note(f"internal assertion failed: {exc}")
        return EXIT_INTERNAL
    except (IllegalMove, PreconditionViolated) as exc:
        _note(f"invalid request: {exc}")
        return EXIT_INPUT
    except (MatroidArenaError, OSError, json.JSONDecodeError, KeyError) as exc:
        _note(f"input error: {type(exc).__name__}: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
