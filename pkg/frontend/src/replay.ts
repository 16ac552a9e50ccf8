// Transcript replay: a setup frame plus two frames per round (after the
// reveal, after the coloring), stepped forward and back; color classes can
// be toggled off to inspect the others.

import type { Transcript } from "./types.js";
import { groundSize } from "./types.js";

export interface Frame {
    label: string;
    lists: number[][];
    assigned: number[][];
    revealed?: number[];
    colored?: number[];
}

export function buildFrames(t: Transcript): Frame[] {
    const n = groundSize(t.config.matroid);
    const lists: number[][] = Array.from({ length: n }, () => []);
    const assigned: number[][] = Array.from({ length: n }, () => []);
    const snap = (xs: number[][]) => xs.map((x) => [...x]);
    const frames: Frame[] = [
        { label: "setup", lists: snap(lists), assigned: snap(assigned) },
    ];
    for (const round of t.rounds) {
        for (const e of round.bob) lists[e].push(round.color);
        frames.push({
            label: `round ${round.color}: reveal`,
            lists: snap(lists),
            assigned: snap(assigned),
            revealed: [...round.bob],
        });
        for (const e of round.alice) assigned[e].push(round.color);
        frames.push({
            label: `round ${round.color}: color`,
            lists: snap(lists),
            assigned: snap(assigned),
            colored: [...round.alice],
        });
    }
    return frames;
}

export class ReplayViewer {
    frames: Frame[];
    index = 0;
    private hiddenColors = new Set<number>();

    constructor(public transcript: Transcript) {
        this.frames = buildFrames(transcript);
    }

    /** Steps beyond the setup frame: exactly 2 per recorded round. */
    get stepCount(): number {
        return this.frames.length - 1;
    }

    get colors(): number[] {
        return this.transcript.rounds.map((r) => r.color);
    }

    next(): void {
        if (this.index < this.frames.length - 1) this.index += 1;
    }

    prev(): void {
        if (this.index > 0) this.index -= 1;
    }

    toggleColor(color: number): void {
        if (this.hiddenColors.has(color)) this.hiddenColors.delete(color);
        else this.hiddenColors.add(color);
    }

    colorVisible(color: number): boolean {
        return !this.hiddenColors.has(color);
    }

    /** The active frame with hidden color classes filtered out of badges. */
    view(): Frame {
        const f = this.frames[this.index];
        return {
            ...f,
            assigned: f.assigned.map((cs) => cs.filter((c) => this.colorVisible(c))),
        };
    }

    /** Elements left uncolored at the final frame (flags adversary wins). */
    uncoloredAtEnd(weights: number[]): number[] {
        const last = this.frames[this.frames.length - 1];
        return last.assigned
            .map((cs, e) => [cs.length, e])
            .filter(([len, e]) => len < weights[e as number])
            .map(([, e]) => e as number);
    }
}
