"""Session-hosting JSON-over-HTTP API for live play against the engine.

Endpoints:
  POST   /sessions                   create (201; 409 + witness if infeasible)
  GET    /sessions                   list summaries
  GET    /sessions/{id}[?debug=1]    full public state (+witness with debug)
  DELETE /sessions/{id}              drop session and snapshot
  POST   /sessions/{id}/bob-move     {"V":[...]}; engine reply inline when it
                                     plays the colorer
  POST   /sessions/{id}/alice-move   {"A":[...]} for human-colorer sessions
  GET    /sessions/{id}/hint         suggested move for whoever is to move

All bodies are JSON; errors are {"error": code, "reason": text}.  Sessions
are snapshotted to --state-dir as one JSON file each after every move and
rebuilt by replay on startup, so a restart loses nothing.  Moves validate
fully before anything is stored: a rejected move cannot mutate state.
"""

from __future__ import annotations

import json
import logging
import secrets
import threading
from datetime import datetime, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import game, strategy
from .core import Matroid, elements_of, load_matroid_json, mask_of, spec_to_json
from .errors import (
    IllegalMove,
    MatroidArenaError,
    NotColorable,
    SpecInvalid,
    WrongPhase,
)
from .union import validate_vector

log = logging.getLogger("matroid_arena.service")

BOB_HINT_MAX_N = 12


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class ApiError(Exception):
    def __init__(self, status: int, code: str, reason: str, extra: dict | None = None):
        self.status = status
        self.body = {"error": code, "reason": reason}
        if extra:
            self.body.update(extra)
        super().__init__(reason)


class Session:
    """One live game; all mutation happens under ``lock``."""

    def __init__(self, sid: str, config: game.GameConfig):
        self.id = sid
        self.config = config
        self.lock = threading.Lock()
        self.state = game.new_game(config)
        self.rounds: list[game.RoundRecord] = []
        self.created_at = _now()
        self.updated_at = self.created_at
        # witness strategy: the engine's own brain, or the hint shadow for a
        # human colorer; None when the instance is infeasible (human colorer
        # sessions may still be played, they are just lost causes)
        try:
            self.witness: strategy.AliceState | None = strategy.init(
                config.matroid, config.weights, config.list_sizes
            )
        except NotColorable:
            self.witness = None
        self.last_hint: frozenset[int] | None = None

    # -- views ---------------------------------------------------------------

    def summary(self) -> dict:
        return {
            "id": self.id,
            "phase": self.state.phase,
            "round": self.state.round,
            "alice": self.config.alice,
            "bob": self.config.bob,
            "n": self.config.matroid.n,
            "createdAt": self.created_at,
            "updatedAt": self.updated_at,
        }

    def public_state(self, debug: bool = False) -> dict:
        st = self.state
        result = game.winner(st, self.config)
        out = {
            "id": self.id,
            "config": {
                "matroid": spec_to_json(self.config.matroid.spec),
                "w": list(self.config.weights),
                "l": list(self.config.list_sizes),
                "alice": self.config.alice,
                "bob": self.config.bob,
            },
            "phase": st.phase,
            "round": st.round,
            "lists": [sorted(s) for s in st.lists],
            "assigned": [sorted(s) for s in st.assigned],
            "pending": None if st.pending is None else sorted(st.pending),
            "rounds": [
                {"color": r.color, "bob": sorted(r.bob), "alice": sorted(r.alice)}
                for r in self.rounds
            ],
            "result": result,
        }
        if st.phase == game.FINISHED:
            t = game.Transcript(self.config, tuple(self.rounds), result)
            out["transcript"] = game.transcript_to_json(t)
        if debug and self.witness is not None:
            out["witness"] = {
                "cover": [sorted(p) for p in self.witness.cover.parts],
                "residualW": list(self.witness.residual_w),
                "residualL": list(self.witness.residual_l),
            }
        return out

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "createdAt": self.created_at,
            "updatedAt": self.updated_at,
            "config": {
                "matroid": spec_to_json(self.config.matroid.spec),
                "w": list(self.config.weights),
                "l": list(self.config.list_sizes),
                "alice": self.config.alice,
                "bob": self.config.bob,
                "seed": self.config.seed,
            },
            "rounds": [
                {"color": r.color, "bob": sorted(r.bob), "alice": sorted(r.alice)}
                for r in self.rounds
            ],
            "pending": None if self.state.pending is None else sorted(self.state.pending),
        }

    # -- moves ---------------------------------------------------------------

    def bob_move(self, v) -> dict:
        vset = frozenset(int(e) for e in v)
        after_bob = game.apply_bob(self.state, self.config, vset)
        reply: frozenset[int] | None = None
        new_witness = self.witness
        new_hint = self.last_hint
        if self.witness is not None:
            chosen, new_witness = strategy.respond(self.witness, vset)
        else:
            chosen = self._greedy(after_bob)
        if self.config.alice == "engine":
            reply = chosen
            final = game.apply_alice(after_bob, self.config, reply)
        else:
            new_hint = chosen if self.witness is not None else None
            final = after_bob
        # all validation passed: commit
        self.state = final
        if self.config.alice == "engine":
            self.rounds.append(game.RoundRecord(final.round - 1, vset, reply))
        self.witness = new_witness
        self.last_hint = new_hint
        self.updated_at = _now()
        out = self.public_state()
        out["aliceMove"] = None if reply is None else sorted(reply)
        return out

    def alice_move(self, a) -> dict:
        if self.config.alice == "engine":
            raise ApiError(409, "WrongPhase", "the engine plays the colorer here")
        aset = frozenset(int(e) for e in a)
        pending = self.state.pending
        color = self.state.round
        final = game.apply_alice(self.state, self.config, aset)
        self.state = final
        self.rounds.append(game.RoundRecord(color, pending, aset))
        self.last_hint = None
        self.updated_at = _now()
        return self.public_state()

    def _greedy(self, state: game.GameState) -> frozenset[int]:
        m = self.config.matroid
        amask = 0
        for e in sorted(state.pending or ()):
            if len(state.assigned[e]) >= self.config.weights[e]:
                continue
            if m.indep_mask(amask | (1 << e)):
                amask |= 1 << e
        return elements_of(amask)

    def hint(self) -> dict:
        st = self.state
        if st.phase == game.FINISHED:
            raise ApiError(409, "Finished", "game is over, no moves to suggest")
        if st.phase == game.AWAITING_ALICE:
            move = self.last_hint if self.last_hint is not None else self._greedy(st)
            # the shadow may suggest elements the human colorer already saturated
            legal = frozenset(
                e
                for e in move
                if len(st.assigned[e]) < self.config.weights[e]
            )
            return {"for": "alice", "move": sorted(legal)}
        return {"for": "bob", "move": sorted(_bob_hint(self.config.matroid, st, self.config))}


def _bob_hint(m: Matroid, state: game.GameState, config: game.GameConfig) -> frozenset[int]:
    """Eligible subset with the largest |A| / rank(A) ratio (deficiency feel);
    falls back to the whole eligible set on big ground sets."""
    elig = game.eligible_mask(state, config)
    if elig == 0:
        return frozenset()
    if m.n > BOB_HINT_MAX_N:
        return elements_of(elig)
    ranks = m.ranks()
    best_mask, best_size, best_rank = 0, 0, 1
    a = 0
    while True:
        a = (a - elig) & elig
        if a == 0:
            break
        size = a.bit_count()
        r = int(ranks[a])
        if r == 0:
            continue
        # compare size/r > best_size/best_rank by cross-multiplication
        better = size * best_rank > best_size * r
        tie = size * best_rank == best_size * r
        if better or (tie and (size, -a) > (best_size, -best_mask)):
            best_mask, best_size, best_rank = a, size, r
    return elements_of(best_mask)


class SessionStore:
    def __init__(self, state_dir: str | None = None):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            self._load_snapshots()

    # -- persistence ----------------------------------------------------------

    def _snapshot_path(self, sid: str) -> Path:
        return self.state_dir / f"{sid}.json"

    def persist(self, session: Session) -> None:
        if not self.state_dir:
            return
        tmp = self._snapshot_path(session.id).with_suffix(".tmp")
        tmp.write_text(json.dumps(session.snapshot(), indent=1), encoding="utf-8")
        tmp.replace(self._snapshot_path(session.id))

    def _load_snapshots(self) -> None:
        for path in sorted(self.state_dir.glob("*.json")):
            try:
                snap = json.loads(path.read_text(encoding="utf-8"))
                session = self._rebuild(snap)
                self.sessions[session.id] = session
            except (MatroidArenaError, KeyError, ValueError) as exc:
                log.warning("skipping snapshot %s: %s", path.name, exc)

    def _rebuild(self, snap: dict) -> Session:
        cfg = snap["config"]
        matroid = load_matroid_json(cfg["matroid"])
        config = game.GameConfig(
            matroid=matroid,
            weights=validate_vector(cfg["w"], matroid.n, "w"),
            list_sizes=validate_vector(cfg["l"], matroid.n, "l"),
            alice=cfg.get("alice", "engine"),
            bob=cfg.get("bob", "human"),
            seed=cfg.get("seed"),
        )
        session = Session(snap["id"], config)
        session.created_at = snap.get("createdAt", session.created_at)
        for rec in snap["rounds"]:
            vset = frozenset(int(e) for e in rec["bob"])
            aset = frozenset(int(e) for e in rec["alice"])
            after_bob = game.apply_bob(session.state, config, vset)
            if session.witness is not None:
                chosen, session.witness = strategy.respond(session.witness, vset)
                if config.alice == "engine" and chosen != aset:
                    raise SpecInvalid("snapshot diverges from the engine strategy")
            session.state = game.apply_alice(after_bob, config, aset)
            session.rounds.append(
                game.RoundRecord(int(rec["color"]), vset, aset)
            )
        if snap.get("pending"):
            vset = frozenset(int(e) for e in snap["pending"])
            session.state = game.apply_bob(session.state, config, vset)
            if session.witness is not None:
                chosen, session.witness = strategy.respond(session.witness, vset)
                session.last_hint = chosen
        session.updated_at = snap.get("updatedAt", session.updated_at)
        return session

    # -- collection -----------------------------------------------------------

    def create(self, body: dict) -> Session:
        try:
            matroid = load_matroid_json(body["matroid"])
            weights = body.get("w") or [1] * matroid.n
            if body.get("l") is not None:
                list_sizes = body["l"]
            elif body.get("k") is not None:
                list_sizes = [int(body["k"])] * matroid.n
            else:
                raise SpecInvalid("need l or k")
            config = game.make_config(
                matroid,
                weights=weights,
                list_sizes=list_sizes,
                alice=str(body.get("alice", "engine")),
                bob=str(body.get("bob", "human")),
                seed=body.get("seed"),
            )
            if config.alice not in ("engine", "human"):
                raise SpecInvalid(f"unknown alice kind {config.alice!r}")
        except (MatroidArenaError, KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "bad-request", f"{type(exc).__name__}: {exc}") from exc
        if config.alice == "engine":
            try:
                strategy.init(matroid, config.weights, config.list_sizes)
            except NotColorable as exc:
                raise ApiError(
                    409,
                    "NotColorable",
                    "engine cannot guarantee this instance",
                    {"witness": exc.witness.to_json()},
                ) from exc
        sid = secrets.token_urlsafe(9)
        session = Session(sid, config)
        with self.lock:
            self.sessions[sid] = session
        self.persist(session)
        return session

    def get(self, sid: str) -> Session:
        with self.lock:
            session = self.sessions.get(sid)
        if session is None:
            raise ApiError(404, "unknown-session", f"no session {sid!r}")
        return session

    def delete(self, sid: str) -> None:
        with self.lock:
            session = self.sessions.pop(sid, None)
        if session is None:
            raise ApiError(404, "unknown-session", f"no session {sid!r}")
        if self.state_dir:
            self._snapshot_path(sid).unlink(missing_ok=True)

    def list_summaries(self) -> list[dict]:
        with self.lock:
            sessions = sorted(self.sessions.values(), key=lambda s: s.created_at)
        return [s.summary() for s in sessions]


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore  # set by create_server

    # -- plumbing ---------------------------------------------------------

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send(self, status: int, body: dict) -> None:
        payload = json.dumps(body, separators=(",", ":")).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _read_body(self) -> dict:
        raw = self._raw_body
        if not raw:
            return {}
        try:
            body = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ApiError(400, "bad-request", f"body is not JSON: {exc}") from exc
        if not isinstance(body, dict):
            raise ApiError(400, "bad-request", "body must be a JSON object")
        return body

    def _route(self, method: str) -> None:
        try:
            # drain the request body up front: responding on an error path
            # with unread bytes left makes the close an RST, and the client
            # then loses the response
            length = int(self.headers.get("Content-Length") or 0)
            self._raw_body = self.rfile.read(length) if length else b""
            self._dispatch(method)
        except ApiError as exc:
            self._send(exc.status, exc.body)
        except WrongPhase as exc:
            self._send(409, {"error": "WrongPhase", "reason": str(exc)})
        except IllegalMove as exc:
            self._send(409, {"error": "IllegalMove", "reason": exc.reason})
        except MatroidArenaError as exc:
            self._send(400, {"error": type(exc).__name__, "reason": str(exc)})
        except Exception as exc:  # pragma: no cover - last resort
            log.exception("unhandled error")
            self._send(500, {"error": "internal", "reason": str(exc)})

    # -- routing ----------------------------------------------------------

    def do_POST(self):
        self._route("POST")

    def do_GET(self):
        self._route("GET")

    def do_DELETE(self):
        self._route("DELETE")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def _dispatch(self, method: str) -> None:
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        store = self.store

        if parts == ["sessions"]:
            if method == "POST":
                session = store.create(self._read_body())
                with session.lock:
                    self._send(201, session.public_state())
                return
            if method == "GET":
                self._send(200, {"sessions": store.list_summaries()})
                return
            raise ApiError(405, "method-not-allowed", f"{method} /sessions")

        if len(parts) >= 2 and parts[0] == "sessions":
            sid = parts[1]
            if len(parts) == 2:
                if method == "GET":
                    session = store.get(sid)
                    debug = parse_qs(url.query).get("debug", ["0"])[0] == "1"
                    with session.lock:
                        self._send(200, session.public_state(debug=debug))
                    return
                if method == "DELETE":
                    store.delete(sid)
                    self._send(200, {"deleted": sid})
                    return
                raise ApiError(405, "method-not-allowed", f"{method} on a session")
            if len(parts) == 3 and method == "POST" and parts[2] == "bob-move":
                session = store.get(sid)
                body = self._read_body()
                if "V" not in body or not isinstance(body["V"], list):
                    raise ApiError(400, "bad-request", 'body needs "V": [elements]')
                with session.lock:
                    out = session.bob_move(body["V"])
                    store.persist(session)
                self._send(200, out)
                return
            if len(parts) == 3 and method == "POST" and parts[2] == "alice-move":
                session = store.get(sid)
                body = self._read_body()
                if "A" not in body or not isinstance(body["A"], list):
                    raise ApiError(400, "bad-request", 'body needs "A": [elements]')
                with session.lock:
                    out = session.alice_move(body["A"])
                    store.persist(session)
                self._send(200, out)
                return
            if len(parts) == 3 and method == "GET" and parts[2] == "hint":
                session = store.get(sid)
                with session.lock:
                    self._send(200, session.hint())
                return

        raise ApiError(404, "not-found", f"no route {method} {url.path}")


def create_server(port: int = 8080, state_dir: str | None = None) -> ThreadingHTTPServer:
    """Bound but not yet serving; call serve_forever() (cmd_serve does)."""
    store = SessionStore(state_dir=state_dir)
    handler = type("BoundHandler", (_Handler,), {"store": store})
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.store = store  # handy for tests
    return server
