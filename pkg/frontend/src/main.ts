// Screen wiring: setup -> live game -> replay. No game logic lives here
// beyond assembling moves; the server's responses are rendered verbatim.

import { Client } from "./api.js";
import { Board } from "./board.js";
import { CATALOG, DEFAULT_K } from "./catalog.js";
import { GameController } from "./game.js";
import { ReplayViewer } from "./replay.js";
import { createFromChoice } from "./setup.js";
import type { SessionState, Transcript } from "./types.js";
import { groundSize } from "./types.js";

const $ = (id: string) => document.getElementById(id)!;

let client = new Client("http://127.0.0.1:8080");
let controller: GameController | null = null;
let board: Board | null = null;
let viewer: ReplayViewer | null = null;
let pollTimer: number | null = null;

function show(screen: "setup" | "game" | "replay"): void {
    for (const s of ["setup", "game", "replay"]) {
        $(`screen-${s}`).classList.toggle("hidden", s !== screen);
    }
}

// ---------------------------------------------------------------- setup --

function initSetup(): void {
    const pick = $("catalog") as HTMLSelectElement;
    for (const name of Object.keys(CATALOG)) {
        const opt = document.createElement("option");
        opt.value = name;
        opt.textContent = name;
        pick.appendChild(opt);
    }
    pick.addEventListener("change", () => {
        ($("k-input") as HTMLInputElement).value = String(DEFAULT_K[pick.value] ?? 2);
    });
    pick.value = "K4";
    ($("k-input") as HTMLInputElement).value = "2";
    $("create").addEventListener("click", () => void create());
}

async function create(): Promise<void> {
    client = new Client(($("server-url") as HTMLInputElement).value.replace(/\/$/, ""));
    const role = ($("role") as HTMLSelectElement).value as "bob" | "alice";
    const outcome = await createFromChoice(client, {
        catalogName: ($("catalog") as HTMLSelectElement).value,
        customJson: ($("custom-json") as HTMLTextAreaElement).value,
        k: Number(($("k-input") as HTMLInputElement).value),
        role,
    });
    const errBox = $("setup-error");
    errBox.textContent = outcome.error ?? "";
    if (outcome.witness && outcome.spec) {
        // highlight the deficient elements on a preview board
        const preview = new Board($("setup-board"), outcome.spec);
        const size = groundSize(outcome.spec);
        preview.render({
            lists: Array.from({ length: size }, () => []),
            assigned: Array.from({ length: size }, () => []),
            selected: new Set(),
            selectable: new Set(),
            highlight: new Set(outcome.witness.A),
        });
        errBox.textContent =
            `not colorable: elements {${outcome.witness.A.join(",")}} demand ` +
            `${outcome.witness.demand} but supply is ${outcome.witness.supply}`;
        return;
    }
    if (outcome.session) {
        startGame(outcome.session, role);
    }
}

// ----------------------------------------------------------------- game --

function startGame(session: SessionState, role: "bob" | "alice"): void {
    controller = new GameController(client, session, role);
    board = new Board($("game-board"), session.config.matroid, (e) => {
        controller!.toggle(e);
        renderGame();
    });
    show("game");
    renderGame();
}

function renderGame(): void {
    if (!controller || !board) return;
    const st = controller.last;
    board.render({
        lists: st.lists,
        assigned: st.assigned,
        selected: controller.selection,
        selectable: controller.togglable(),
        highlight: new Set(st.pending ?? []),
    });
    const legal = controller.legality();
    ($("submit") as HTMLButtonElement).disabled = !legal.ok;
    $("game-warning").textContent = legal.ok ? legal.warning ?? "" : legal.reason ?? "";
    $("status").textContent =
        st.phase === "finished"
            ? `finished: ${st.result} wins`
            : `round ${st.round}, ${st.phase}` +
              (controller.myTurn() ? " (your move)" : " (waiting)");
    $("open-replay").classList.toggle("hidden", st.phase !== "finished");
    schedulePoll();
}

function schedulePoll(): void {
    if (pollTimer !== null) {
        clearTimeout(pollTimer);
        pollTimer = null;
    }
    if (controller?.needsPolling()) {
        pollTimer = setTimeout(() => {
            void controller?.refresh().then(renderGame);
        }, 1000) as unknown as number;
    }
}

function initGame(): void {
    $("submit").addEventListener("click", () => {
        void (async () => {
            try {
                await controller!.submit();
                $("game-error").textContent = "";
            } catch (exc: any) {
                // rejected moves change nothing; show the referee's reason
                $("game-error").textContent = exc.reason ?? String(exc);
            }
            renderGame();
        })();
    });
    $("hint").addEventListener("click", () => {
        void (async () => {
            try {
                const move = await controller!.hint();
                controller!.selection = new Set(move);
                $("game-error").textContent = "";
            } catch (exc: any) {
                $("game-error").textContent = exc.reason ?? String(exc);
            }
            renderGame();
        })();
    });
    $("open-replay").addEventListener("click", () => {
        const t = controller?.last.transcript;
        if (t) startReplay(t);
    });
    $("back-to-setup").addEventListener("click", () => {
        if (pollTimer !== null) clearTimeout(pollTimer);
        show("setup");
    });
}

// --------------------------------------------------------------- replay --

function startReplay(t: Transcript): void {
    viewer = new ReplayViewer(t);
    const colorBox = $("replay-colors");
    colorBox.textContent = "";
    for (const c of viewer.colors) {
        const btn = document.createElement("button");
        btn.textContent = `color ${c}`;
        btn.addEventListener("click", () => {
            viewer!.toggleColor(c);
            btn.classList.toggle("off", !viewer!.colorVisible(c));
            renderReplay();
        });
        colorBox.appendChild(btn);
    }
    show("replay");
    renderReplay();
}

function renderReplay(): void {
    if (!viewer) return;
    const frame = viewer.view();
    const rboard = new Board($("replay-board"), viewer.transcript.config.matroid);
    rboard.render({
        lists: frame.lists,
        assigned: frame.assigned,
        selected: new Set(frame.colored ?? []),
        selectable: new Set(),
        highlight: new Set(frame.revealed ?? []),
    });
    $("replay-label").textContent =
        `${frame.label} (${viewer.index}/${viewer.stepCount})`;
    if (viewer.index === viewer.stepCount) {
        const uncolored = viewer.uncoloredAtEnd(viewer.transcript.config.w);
        $("replay-flags").textContent = uncolored.length
            ? `uncolored elements: {${uncolored.join(",")}}`
            : "";
    } else {
        $("replay-flags").textContent = "";
    }
}

function initReplay(): void {
    $("replay-prev").addEventListener("click", () => {
        viewer?.prev();
        renderReplay();
    });
    $("replay-next").addEventListener("click", () => {
        viewer?.next();
        renderReplay();
    });
    $("replay-file").addEventListener("change", (ev) => {
        const input = ev.target as HTMLInputElement;
        const file = input.files?.[0];
        if (!file) return;
        void file.text().then((text) => startReplay(JSON.parse(text)));
    });
    $("replay-back").addEventListener("click", () => show("game"));
}

export function boot(): void {
    initSetup();
    initGame();
    initReplay();
    show("setup");
}

if (typeof document !== "undefined" && document.getElementById("screen-setup")) {
    boot();
}
