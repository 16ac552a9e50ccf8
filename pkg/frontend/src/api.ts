// Thin fetch client for the session API. Every response body is returned
// as-is; the UI's rendered state must always equal the last response.

import type { Hint, SessionState, SessionSummary, DeficiencyWitness } from "./types.js";

export class ApiError extends Error {
    constructor(
        public status: number,
        public code: string,
        public reason: string,
        public witness?: DeficiencyWitness,
    ) {
        super(`${code}: ${reason}`);
    }
}

async function parse(resp: Response): Promise<any> {
    const text = await resp.text();
    const body = text ? JSON.parse(text) : {};
    if (!resp.ok) {
        throw new ApiError(
            resp.status,
            body.error ?? "http-error",
            body.reason ?? resp.statusText,
            body.witness,
        );
    }
    return body;
}

export class Client {
    constructor(public baseUrl: string) {}

    private async request(method: string, path: string, body?: unknown): Promise<any> {
        const resp = await fetch(this.baseUrl + path, {
            method,
            headers: body === undefined ? {} : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        return parse(resp);
    }

    createSession(config: {
        matroid: unknown;
        k?: number;
        w?: number[];
        l?: number[];
        alice?: "engine" | "human";
        bob?: string;
    }): Promise<SessionState> {
        return this.request("POST", "/sessions", config);
    }

    listSessions(): Promise<{ sessions: SessionSummary[] }> {
        return this.request("GET", "/sessions");
    }

    getState(id: string): Promise<SessionState> {
        return this.request("GET", `/sessions/${id}`);
    }

    deleteSession(id: string): Promise<{ deleted: string }> {
        return this.request("DELETE", `/sessions/${id}`);
    }

    bobMove(id: string, v: number[]): Promise<SessionState> {
        return this.request("POST", `/sessions/${id}/bob-move`, { V: v });
    }

    aliceMove(id: string, a: number[]): Promise<SessionState> {
        return this.request("POST", `/sessions/${id}/alice-move`, { A: a });
    }

    hint(id: string): Promise<Hint> {
        return this.request("GET", `/sessions/${id}/hint`);
    }
}
