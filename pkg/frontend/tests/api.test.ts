import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, Client } from "../src/api.js";

function mockFetch(status: number, body: unknown) {
    return vi.fn(async () => ({
        ok: status < 400,
        status,
        statusText: "x",
        text: async () => JSON.stringify(body),
    })) as unknown as typeof fetch;
}

afterEach(() => {
    vi.unstubAllGlobals();
});

describe("client", () => {
    it("posts create bodies to /sessions", async () => {
        const fetcher = mockFetch(201, { id: "abc", phase: "awaiting-bob" });
        vi.stubGlobal("fetch", fetcher);
        const client = new Client("http://server");
        const out = await client.createSession({ matroid: { type: "uniform", n: 2, r: 1 }, k: 2 });
        expect(out.id).toBe("abc");
        const [url, init] = (fetcher as any).mock.calls[0];
        expect(url).toBe("http://server/sessions");
        expect(init.method).toBe("POST");
        expect(JSON.parse(init.body)).toEqual({
            matroid: { type: "uniform", n: 2, r: 1 },
            k: 2,
        });
    });

    it("routes moves and hints to the session endpoints", async () => {
        const fetcher = mockFetch(200, {});
        vi.stubGlobal("fetch", fetcher);
        const client = new Client("http://server");
        await client.bobMove("id1", [0, 2]);
        await client.aliceMove("id1", [1]);
        await client.hint("id1");
        await client.deleteSession("id1");
        const calls = (fetcher as any).mock.calls;
        expect(calls.map((c: any) => [c[0], c[1].method])).toEqual([
            ["http://server/sessions/id1/bob-move", "POST"],
            ["http://server/sessions/id1/alice-move", "POST"],
            ["http://server/sessions/id1/hint", "GET"],
            ["http://server/sessions/id1", "DELETE"],
        ]);
        expect(JSON.parse(calls[0][1].body)).toEqual({ V: [0, 2] });
        expect(JSON.parse(calls[1][1].body)).toEqual({ A: [1] });
    });

    it("raises ApiError with the server's code, reason and witness", async () => {
        vi.stubGlobal(
            "fetch",
            mockFetch(409, {
                error: "NotColorable",
                reason: "nope",
                witness: { A: [0, 1, 2], demand: 3, supply: 2 },
            }),
        );
        const client = new Client("http://server");
        const err = await client
            .createSession({ matroid: { type: "uniform", n: 3, r: 1 }, k: 2 })
            .then(() => null)
            .catch((e) => e);
        expect(err).toBeInstanceOf(ApiError);
        expect(err.status).toBe(409);
        expect(err.code).toBe("NotColorable");
        expect(err.witness).toEqual({ A: [0, 1, 2], demand: 3, supply: 2 });
    });
});
