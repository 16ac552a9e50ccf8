// Game controller: move assembly on top of the last server response.
// The rendered state is always exactly the last response body; a rejected
// move leaves it untouched and surfaces the server's reason.

import { Client } from "./api.js";
import { locallyDependent } from "./board.js";
import type { SessionState } from "./types.js";

export type Role = "bob" | "alice";

export interface Legality {
    ok: boolean;
    reason?: string;
    warning?: string;
}

export class GameController {
    selection = new Set<number>();

    constructor(
        private client: Client,
        public last: SessionState,
        public role: Role,
    ) {}

    get id(): string {
        return this.last.id;
    }

    eligible(): Set<number> {
        const out = new Set<number>();
        this.last.lists.forEach((lst, e) => {
            if (lst.length < this.last.config.l[e]) out.add(e);
        });
        return out;
    }

    togglable(): Set<number> {
        if (!this.myTurn()) return new Set();
        if (this.role === "bob") return this.eligible();
        return new Set(this.last.pending ?? []);
    }

    myTurn(): boolean {
        if (this.last.phase === "finished") return false;
        if (this.role === "bob") return this.last.phase === "awaiting-bob";
        return this.last.phase === "awaiting-alice" && this.last.config.alice === "human";
    }

    /** Poll only while a *remote human* is to move; the engine's replies come
     * back inside our own POST responses. */
    needsPolling(): boolean {
        if (this.last.phase === "finished" || this.myTurn()) return false;
        if (this.last.phase === "awaiting-alice") return this.last.config.alice === "human";
        return true; // awaiting a remote human adversary
    }

    toggle(element: number): void {
        if (!this.togglable().has(element)) return;
        if (this.selection.has(element)) this.selection.delete(element);
        else this.selection.add(element);
    }

    legality(): Legality {
        const sel = [...this.selection];
        if (!this.myTurn()) return { ok: false, reason: "not your turn" };
        if (this.role === "bob") {
            if (sel.length === 0) return { ok: false, reason: "reveal must be non-empty" };
            const eligible = this.eligible();
            if (sel.some((e) => !eligible.has(e)))
                return { ok: false, reason: "selection touches a full list" };
            return { ok: true };
        }
        const pending = new Set(this.last.pending ?? []);
        if (sel.some((e) => !pending.has(e)))
            return { ok: false, reason: "selection leaves the revealed set" };
        const over = sel.filter(
            (e) => this.last.assigned[e].length >= this.last.config.w[e],
        );
        if (over.length > 0)
            return { ok: false, reason: `element ${over[0]} already fully colored` };
        const dep = locallyDependent(this.last.config.matroid, sel);
        if (dep === true)
            return { ok: false, reason: "selection is dependent" };
        if (dep === null)
            return { ok: true, warning: "independence left to the server" };
        return { ok: true };
    }

    async submit(): Promise<SessionState> {
        const sel = [...this.selection].sort((a, b) => a - b);
        const next =
            this.role === "bob"
                ? await this.client.bobMove(this.id, sel)
                : await this.client.aliceMove(this.id, sel);
        this.last = next;
        this.selection.clear();
        return next;
    }

    async refresh(): Promise<SessionState> {
        this.last = await this.client.getState(this.id);
        return this.last;
    }

    async hint(): Promise<number[]> {
        const h = await this.client.hint(this.id);
        return h.move;
    }
}
