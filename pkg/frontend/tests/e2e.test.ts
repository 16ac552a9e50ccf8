// End-to-end acceptance: a scripted session plays the adversary on K4 with
// k = 2 to completion against the engine colorer over the real HTTP service,
// driven through the real board DOM. The final board must show all six
// edges colored in two independent classes, and the replay viewer must
// expose exactly 2 steps per round.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { Board, locallyDependent } from "../src/board.js";
import { GameController } from "../src/game.js";
import { ReplayViewer } from "../src/replay.js";
import { createFromChoice } from "../src/setup.js";
import { CATALOG } from "../src/catalog.js";

let server: ChildProcess;
let base = "";

beforeAll(async () => {
    server = spawn("python3", ["-m", "matroid_arena.cli", "serve", "--port", "0"], {
        stdio: ["ignore", "ignore", "pipe"],
    });
    base = await new Promise<string>((resolve, reject) => {
        let buf = "";
        const timer = setTimeout(() => reject(new Error(`service never came up: ${buf}`)), 30_000);
        server.stderr!.on("data", (chunk: Buffer) => {
            buf += chunk.toString();
            const m = buf.match(/serving on (http:\/\/[\d.]+:\d+)/);
            if (m) {
                clearTimeout(timer);
                resolve(m[1]);
            }
        });
        server.on("exit", (code) => reject(new Error(`service exited ${code}: ${buf}`)));
    });
});

afterAll(() => {
    server?.kill();
});

describe("scripted adversary session on K4", () => {
    it("plays to completion; final board shows 6 edges in 2 independent classes", async () => {
        const client = new Client(base);
        const outcome = await createFromChoice(client, {
            catalogName: "K4",
            k: 2,
            role: "bob",
        });
        expect(outcome.error).toBeUndefined();
        expect(outcome.session).toBeDefined();

        const controller = new GameController(client, outcome.session!, "bob");
        const host = document.createElement("div");
        document.body.appendChild(host);
        const board = new Board(host, CATALOG["K4"], (e) => controller.toggle(e));

        const render = () =>
            board.render({
                lists: controller.last.lists,
                assigned: controller.last.assigned,
                selected: controller.selection,
                selectable: controller.togglable(),
            });
        render();

        let rounds = 0;
        while (controller.last.phase !== "finished") {
            // click every edge with list room, through the real DOM
            for (const e of controller.eligible()) {
                const node = host.querySelector(`[data-element="${e}"]`)!;
                node.dispatchEvent(new Event("click"));
            }
            expect(controller.legality().ok).toBe(true);
            await controller.submit();
            render();
            rounds += 1;
            expect(rounds).toBeLessThanOrEqual(12);
        }

        expect(controller.last.result).toBe("alice");

        // final board: every edge carries exactly one color badge
        const cells = [...host.querySelectorAll("g[data-element]")] as HTMLElement[];
        expect(cells.length).toBe(6);
        const classes = new Map<string, number[]>();
        for (const cell of cells) {
            const colors = cell.dataset.assigned!.split(",").filter(Boolean);
            expect(colors.length).toBe(1);
            const e = Number(cell.dataset.element);
            classes.set(colors[0], [...(classes.get(colors[0]) ?? []), e]);
        }
        expect(classes.size).toBe(2);
        for (const members of classes.values()) {
            expect(locallyDependent(CATALOG["K4"], members)).toBe(false);
        }

        // replay viewer: exactly two steps per recorded round
        const transcript = controller.last.transcript!;
        expect(transcript.rounds.length).toBe(rounds);
        const viewer = new ReplayViewer(transcript);
        expect(viewer.stepCount).toBe(2 * rounds);
        while (viewer.index < viewer.stepCount) viewer.next();
        const last = viewer.view();
        const coloredUnion = new Set(transcript.rounds.flatMap((r) => r.alice));
        const shown = new Set(last.assigned.flatMap((cs, e) => (cs.length ? [e] : [])));
        expect(shown).toEqual(coloredUnion);
        expect(shown.size).toBe(6);

        document.body.removeChild(host);
    });

    it("surfaces the deficiency witness on infeasible setups", async () => {
        const client = new Client(base);
        const outcome = await createFromChoice(client, {
            catalogName: "U(1,3) three parallel",
            k: 2,
            role: "bob",
        });
        expect(outcome.session).toBeUndefined();
        expect(outcome.witness).toEqual({ A: [0, 1, 2], demand: 3, supply: 2 });
    });

    it("the colorer role gets hints that the referee accepts", async () => {
        const client = new Client(base);
        const outcome = await createFromChoice(client, {
            catalogName: "U(2,4)",
            k: 2,
            role: "alice",
        });
        const controller = new GameController(client, outcome.session!, "alice");
        // this client also supplies the adversary's reveals (two-seat play)
        await client.bobMove(controller.id, [0, 1, 2, 3]);
        await controller.refresh();
        expect(controller.myTurn()).toBe(true);
        const hinted = await controller.hint();
        controller.selection = new Set(hinted);
        expect(controller.legality().ok).toBe(true);
        const next = await controller.submit();
        expect(next.round).toBe(2);
    });
});
