import { describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { GameController } from "../src/game.js";
import type { SessionState } from "../src/types.js";

const K3 = {
    type: "graphic" as const,
    vertices: 3,
    edges: [
        [0, 1],
        [0, 2],
        [1, 2],
    ] as [number, number][],
};

function state(partial: Partial<SessionState>): SessionState {
    return {
        id: "s1",
        config: { matroid: K3, w: [1, 1, 1], l: [2, 2, 2], alice: "engine", bob: "human" },
        phase: "awaiting-bob",
        round: 1,
        lists: [[], [], []],
        assigned: [[], [], []],
        pending: null,
        rounds: [],
        result: null,
        ...partial,
    };
}

const client = new Client("http://unused");

describe("adversary composer", () => {
    it("empty selection cannot submit", () => {
        const ctl = new GameController(client, state({}), "bob");
        expect(ctl.legality().ok).toBe(false);
    });

    it("eligible toggles accumulate into a legal reveal", () => {
        const ctl = new GameController(client, state({}), "bob");
        ctl.toggle(0);
        ctl.toggle(2);
        expect([...ctl.selection].sort()).toEqual([0, 2]);
        expect(ctl.legality().ok).toBe(true);
        ctl.toggle(0);
        expect([...ctl.selection]).toEqual([2]);
    });

    it("full lists are not togglable and poison legality if forced", () => {
        const ctl = new GameController(
            client,
            state({ lists: [[1, 2], [1], []] }),
            "bob",
        );
        ctl.toggle(0); // ignored: list full
        expect(ctl.selection.size).toBe(0);
        ctl.selection.add(0); // forced in: composer still refuses
        expect(ctl.legality().ok).toBe(false);
    });
});

describe("colorer composer", () => {
    const aliceState = () =>
        state({
            config: { matroid: K3, w: [1, 1, 1], l: [2, 2, 2], alice: "human", bob: "human" },
            phase: "awaiting-alice",
            pending: [0, 1, 2],
            lists: [[1], [1], [1]],
        });

    it("passing (empty selection) is legal", () => {
        const ctl = new GameController(client, aliceState(), "alice");
        expect(ctl.legality().ok).toBe(true);
    });

    it("selection outside the reveal is blocked", () => {
        const ctl = new GameController(
            client,
            { ...aliceState(), pending: [0, 1] },
            "alice",
        );
        ctl.selection.add(2);
        expect(ctl.legality().ok).toBe(false);
        expect(ctl.legality().reason).toMatch(/revealed/);
    });

    it("a dependent selection (triangle) is blocked locally", () => {
        const ctl = new GameController(client, aliceState(), "alice");
        ctl.toggle(0);
        ctl.toggle(1);
        ctl.toggle(2);
        expect(ctl.legality().ok).toBe(false);
        expect(ctl.legality().reason).toMatch(/dependent/);
    });

    it("weight-saturated elements are blocked", () => {
        const st = aliceState();
        st.assigned = [[1], [], []];
        const ctl = new GameController(client, st, "alice");
        ctl.selection.add(0);
        expect(ctl.legality().ok).toBe(false);
    });

    it("engine-colorer sessions are never the human's turn", () => {
        const ctl = new GameController(
            client,
            state({ phase: "awaiting-alice", pending: [0] }),
            "alice",
        );
        expect(ctl.myTurn()).toBe(false);
    });
});

describe("polling rule", () => {
    it("no polling when the engine replies inline or it is our move", () => {
        const ours = new GameController(client, state({}), "bob");
        expect(ours.needsPolling()).toBe(false);
        const engineTurn = new GameController(
            client,
            state({ phase: "awaiting-alice", pending: [0] }),
            "bob",
        );
        expect(engineTurn.needsPolling()).toBe(false); // engine colorer: reply rides the POST
    });

    it("polls while a remote human colorer thinks", () => {
        const waiting = new GameController(
            client,
            state({
                config: { matroid: K3, w: [1, 1, 1], l: [2, 2, 2], alice: "human", bob: "human" },
                phase: "awaiting-alice",
                pending: [0],
            }),
            "bob",
        );
        expect(waiting.needsPolling()).toBe(true);
    });

    it("finished games never poll", () => {
        const done = new GameController(client, state({ phase: "finished", result: "alice" }), "bob");
        expect(done.needsPolling()).toBe(false);
    });
});
