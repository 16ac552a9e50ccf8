// Wire types for the play service; the client renders these verbatim and
// holds no game state of its own beyond move assembly.

export type MatroidSpec =
    | { type: "uniform"; n: number; r: number }
    | { type: "partition"; blocks: number[][]; capacities: number[] }
    | { type: "graphic"; vertices: number; edges: [number, number][] }
    | { type: "linear"; prime: number; columns: number[][] }
    | { type: "explicit"; n: number; independent: number[][] };

export interface RoundRecord {
    color: number;
    bob: number[];
    alice: number[];
}

export interface Transcript {
    config: { matroid: MatroidSpec; w: number[]; l: number[] };
    rounds: RoundRecord[];
    result: "alice" | "bob";
}

export interface DeficiencyWitness {
    A: number[];
    demand: number;
    supply: number;
}

export interface SessionState {
    id: string;
    config: {
        matroid: MatroidSpec;
        w: number[];
        l: number[];
        alice: "engine" | "human";
        bob: string;
    };
    phase: "awaiting-bob" | "awaiting-alice" | "finished";
    round: number;
    lists: number[][];
    assigned: number[][];
    pending: number[] | null;
    rounds: RoundRecord[];
    result: "alice" | "bob" | null;
    transcript?: Transcript;
    aliceMove?: number[] | null;
}

export interface Hint {
    for: "alice" | "bob";
    move: number[];
}

export interface SessionSummary {
    id: string;
    phase: string;
    round: number;
    alice: string;
    bob: string;
    n: number;
    createdAt: string;
    updatedAt: string;
}

export function groundSize(spec: MatroidSpec): number {
    switch (spec.type) {
        case "uniform":
            return spec.n;
        case "partition":
            return spec.blocks.reduce((acc, b) => acc + b.length, 0);
        case "graphic":
            return spec.edges.length;
        case "linear":
            return spec.columns.length;
        case "explicit":
            return spec.n;
    }
}
