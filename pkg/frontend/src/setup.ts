// Setup screen logic: assemble a create-session request from the form,
// surface API errors inline, and hand back the deficiency witness (if any)
// so the board can highlight the blocking elements.

import { ApiError, Client } from "./api.js";
import { CATALOG } from "./catalog.js";
import type { DeficiencyWitness, MatroidSpec, SessionState } from "./types.js";
import { groundSize } from "./types.js";

export interface SetupChoice {
    catalogName?: string;
    customJson?: string;
    k?: number;
    w?: number[];
    l?: number[];
    role: "bob" | "alice";
}

export interface SetupOutcome {
    session?: SessionState;
    witness?: DeficiencyWitness;
    spec?: MatroidSpec;
    error?: string;
}

export function chosenSpec(choice: SetupChoice): MatroidSpec {
    if (choice.customJson !== undefined && choice.customJson.trim() !== "") {
        const parsed = JSON.parse(choice.customJson);
        if (typeof parsed !== "object" || parsed === null || !("type" in parsed)) {
            throw new Error("matroid JSON needs a \"type\" field");
        }
        return parsed as MatroidSpec;
    }
    const spec = CATALOG[choice.catalogName ?? ""];
    if (!spec) throw new Error(`unknown catalog matroid ${choice.catalogName}`);
    return spec;
}

export async function createFromChoice(
    client: Client,
    choice: SetupChoice,
): Promise<SetupOutcome> {
    let spec: MatroidSpec;
    try {
        spec = chosenSpec(choice);
    } catch (exc) {
        return { error: exc instanceof Error ? exc.message : String(exc) };
    }
    const n = groundSize(spec);
    if (choice.w && choice.w.length !== n) {
        return { spec, error: `weights need ${n} entries` };
    }
    if (choice.l && choice.l.length !== n) {
        return { spec, error: `list sizes need ${n} entries` };
    }
    const body: Record<string, unknown> = {
        matroid: spec,
        // the human plays the chosen role; the engine takes the other seat
        // (an engine adversary is not hosted by the service, so a human
        // colorer simply faces whoever posts reveals, usually this client)
        alice: choice.role === "alice" ? "human" : "engine",
        bob: "human",
    };
    if (choice.w) body.w = choice.w;
    if (choice.l) body.l = choice.l;
    else body.k = choice.k ?? 2;
    try {
        const session = await client.createSession(body as any);
        return { session, spec };
    } catch (exc) {
        if (exc instanceof ApiError) {
            return { spec, witness: exc.witness, error: exc.reason };
        }
        return { spec, error: String(exc) };
    }
}
