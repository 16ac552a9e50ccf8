// Built-in matroids for the setup screen.

import type { MatroidSpec } from "./types.js";

function completeGraph(v: number): [number, number][] {
    const edges: [number, number][] = [];
    for (let i = 0; i < v; i++) for (let j = i + 1; j < v; j++) edges.push([i, j]);
    return edges;
}

export const CATALOG: Record<string, MatroidSpec> = {
    "U(1,3) three parallel": { type: "uniform", n: 3, r: 1 },
    "U(2,3)": { type: "uniform", n: 3, r: 2 },
    "U(2,4)": { type: "uniform", n: 4, r: 2 },
    "K3 triangle": { type: "graphic", vertices: 3, edges: completeGraph(3) },
    "K4": { type: "graphic", vertices: 4, edges: completeGraph(4) },
    "K5": { type: "graphic", vertices: 5, edges: completeGraph(5) },
    "partition 3+2": {
        type: "partition",
        blocks: [
            [0, 1, 2],
            [3, 4],
        ],
        capacities: [1, 2],
    },
    "binary projective plane": {
        type: "linear",
        prime: 2,
        columns: [
            [0, 0, 1],
            [0, 1, 0],
            [0, 1, 1],
            [1, 0, 0],
            [1, 0, 1],
            [1, 1, 0],
            [1, 1, 1],
        ],
    },
};

export const DEFAULT_K: Record<string, number> = {
    "U(1,3) three parallel": 3,
    "U(2,3)": 2,
    "U(2,4)": 2,
    "K3 triangle": 2,
    "K4": 2,
    "K5": 3,
    "partition 3+2": 3,
    "binary projective plane": 3,
};
