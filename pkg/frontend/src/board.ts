// Board rendering: graphic matroids draw as a graph on a fixed circular
// vertex layout (deterministic for screenshots and tests); every other
// variant renders as an element grid. Elements show list chips (revealed
// colors) and assigned color badges; clicks toggle selection via callback.

import type { MatroidSpec } from "./types.js";

export interface BoardView {
    lists: number[][];
    assigned: number[][];
    selected: Set<number>;
    selectable: Set<number>;
    highlight?: Set<number>;
}

export function colorCss(color: number): string {
    return `hsl(${(color * 67) % 360} 70% 45%)`;
}

/** Local move-assembly legality: true = provably dependent, false = provably
 * independent, null = unknown (the server stays the authority either way). */
export function locallyDependent(spec: MatroidSpec, selection: Iterable<number>): boolean | null {
    const sel = [...selection];
    switch (spec.type) {
        case "uniform":
            return sel.length > spec.r;
        case "partition": {
            for (let b = 0; b < spec.blocks.length; b++) {
                const inBlock = sel.filter((e) => spec.blocks[b].includes(e)).length;
                if (inBlock > spec.capacities[b]) return true;
            }
            return false;
        }
        case "graphic": {
            const parent = new Map<number, number>();
            const find = (v: number): number => {
                let root = v;
                while (parent.get(root) !== undefined && parent.get(root) !== root) root = parent.get(root)!;
                parent.set(v, root);
                return root;
            };
            for (const e of sel) {
                const [u, v] = spec.edges[e];
                const ru = find(u);
                const rv = find(v);
                if (ru === rv) return true;
                parent.set(ru, rv);
            }
            return false;
        }
        case "explicit": {
            const key = [...sel].sort((a, b) => a - b).join(",");
            return !spec.independent.some(
                (s) => [...s].sort((a, b) => a - b).join(",") === key,
            );
        }
        case "linear": {
            // exact elimination over GF(p); safe in doubles for p < 2^15
            if (spec.prime >= 1 << 15) return null;
            const p = spec.prime;
            const cols = sel.map((e) => [...spec.columns[e]]);
            if (cols.length === 0) return false;
            const rows = cols[0].length;
            let rank = 0;
            for (let c = 0; c < cols.length && rank < rows; c++) {
                let pivot = -1;
                for (let r = rank; r < rows; r++) if (cols[c][r] % p !== 0) { pivot = r; break; }
                if (pivot === -1) continue;
                for (const col of cols) {
                    const t = col[rank]; col[rank] = col[pivot]; col[pivot] = t;
                }
                const inv = modPow(cols[c][rank], p - 2, p);
                for (let cc = 0; cc < cols.length; cc++) {
                    if (cc === c) continue;
                    const f = (cols[cc][rank] * inv) % p;
                    for (let r = 0; r < rows; r++) {
                        cols[cc][r] = ((cols[cc][r] - f * cols[c][r]) % p + p) % p;
                    }
                }
                rank++;
            }
            return rank < cols.length;
        }
    }
}

function modPow(base: number, exp: number, mod: number): number {
    let out = 1;
    let b = base % mod;
    let e = exp;
    while (e > 0) {
        if (e & 1) out = (out * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return out;
}

function chipRow(lists: number[], assigned: number[]): HTMLElement {
    const row = document.createElement("div");
    row.className = "chips";
    for (const c of lists) {
        const chip = document.createElement("span");
        const got = assigned.includes(c);
        chip.className = got ? "chip assigned" : "chip";
        chip.textContent = String(c);
        chip.style.borderColor = colorCss(c);
        if (got) chip.style.background = colorCss(c);
        row.appendChild(chip);
    }
    return row;
}

export class Board {
    constructor(
        private container: HTMLElement,
        public spec: MatroidSpec,
        private onToggle?: (element: number) => void,
    ) {}

    render(view: BoardView): void {
        this.container.textContent = "";
        if (this.spec.type === "graphic") {
            this.container.appendChild(this.renderGraph(this.spec, view));
        } else {
            this.container.appendChild(this.renderGrid(view));
        }
    }

    private cellState(view: BoardView, e: number, node: HTMLElement): void {
        node.dataset.element = String(e);
        node.dataset.assigned = view.assigned[e].join(",");
        node.dataset.chips = view.lists[e].join(",");
        node.classList.toggle("selected", view.selected.has(e));
        node.classList.toggle("selectable", view.selectable.has(e));
        node.classList.toggle("highlight", view.highlight?.has(e) ?? false);
        if (this.onToggle) {
            node.addEventListener("click", () => this.onToggle!(e));
        }
    }

    private renderGrid(view: BoardView): HTMLElement {
        const grid = document.createElement("div");
        grid.className = "board grid";
        const n = view.lists.length;
        for (let e = 0; e < n; e++) {
            const cell = document.createElement("div");
            cell.className = "cell";
            const head = document.createElement("div");
            head.className = "cell-id";
            head.textContent = `e${e}`;
            cell.appendChild(head);
            cell.appendChild(chipRow(view.lists[e], view.assigned[e]));
            this.cellState(view, e, cell);
            grid.appendChild(cell);
        }
        return grid;
    }

    /** Fixed circular layout: vertex i sits at angle 2*pi*i/V starting at
     * twelve o'clock, radius 120 in a 300x300 viewBox. */
    static vertexPosition(i: number, vertices: number): { x: number; y: number } {
        const angle = (2 * Math.PI * i) / vertices - Math.PI / 2;
        return { x: 150 + 120 * Math.cos(angle), y: 150 + 120 * Math.sin(angle) };
    }

    private renderGraph(
        spec: Extract<MatroidSpec, { type: "graphic" }>,
        view: BoardView,
    ): HTMLElement {
        const wrap = document.createElement("div");
        wrap.className = "board graph";
        const svgNs = "http://www.w3.org/2000/svg";
        const svg = document.createElementNS(svgNs, "svg");
        svg.setAttribute("viewBox", "0 0 300 300");
        svg.setAttribute("class", "graph-svg");

        const seen = new Map<string, number>();
        spec.edges.forEach(([u, v], e) => {
            const a = Board.vertexPosition(u, spec.vertices);
            const b = Board.vertexPosition(v, spec.vertices);
            const pairKey = `${Math.min(u, v)}-${Math.max(u, v)}`;
            const dup = seen.get(pairKey) ?? 0;
            seen.set(pairKey, dup + 1);
            // parallel edges bow out perpendicular to the segment
            const mx = (a.x + b.x) / 2;
            const my = (a.y + b.y) / 2;
            const len = Math.hypot(b.x - a.x, b.y - a.y) || 1;
            const off = dup * 14;
            const px = mx + ((a.y - b.y) / len) * off;
            const py = my + ((b.x - a.x) / len) * off;

            const group = document.createElementNS(svgNs, "g") as SVGGElement & HTMLElement;
            const path = document.createElementNS(svgNs, "path");
            path.setAttribute("d", `M ${a.x} ${a.y} Q ${px} ${py} ${b.x} ${b.y}`);
            path.setAttribute("fill", "none");
            const firstColor = view.assigned[e][0];
            path.setAttribute("stroke", firstColor !== undefined ? colorCss(firstColor) : "#888");
            path.setAttribute("stroke-width", view.selected.has(e) ? "6" : "3");
            group.appendChild(path);

            const label = document.createElementNS(svgNs, "text");
            label.setAttribute("x", String(px));
            label.setAttribute("y", String(py - 6));
            label.setAttribute("class", "edge-label");
            label.textContent =
                `e${e}` +
                (view.lists[e].length ? ` [${view.lists[e].join(" ")}]` : "") +
                (view.assigned[e].length ? ` = ${view.assigned[e].join(",")}` : "");
            group.appendChild(label);
            this.cellState(view, e, group as unknown as HTMLElement);
            svg.appendChild(group);
        });

        for (let i = 0; i < spec.vertices; i++) {
            const { x, y } = Board.vertexPosition(i, spec.vertices);
            const dot = document.createElementNS(svgNs, "circle");
            dot.setAttribute("cx", String(x));
            dot.setAttribute("cy", String(y));
            dot.setAttribute("r", "9");
            dot.setAttribute("class", "vertex");
            svg.appendChild(dot);
            const name = document.createElementNS(svgNs, "text");
            name.setAttribute("x", String(x));
            name.setAttribute("y", String(y + 4));
            name.setAttribute("class", "vertex-label");
            name.setAttribute("text-anchor", "middle");
            name.textContent = String(i);
            svg.appendChild(name);
        }
        wrap.appendChild(svg);
        return wrap;
    }
}
