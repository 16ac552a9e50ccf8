// Boot wiring smoke test: the real index.html ids line up with main.ts.

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";
import { beforeAll, describe, expect, it } from "vitest";

const here = dirname(fileURLToPath(import.meta.url));

beforeAll(async () => {
    const html = readFileSync(join(here, "..", "index.html"), "utf-8");
    const body = html.slice(html.indexOf("<body>") + 6, html.indexOf("</body>"));
    document.body.innerHTML = body.replace(/<script[\s\S]*?<\/script>/g, "");
    const { boot } = await import("../src/main.js");
    boot();
});

describe("app boot", () => {
    it("populates the catalog picker with K4 preselected", () => {
        const pick = document.getElementById("catalog") as HTMLSelectElement;
        expect(pick.options.length).toBeGreaterThanOrEqual(8);
        expect(pick.value).toBe("K4");
        expect((document.getElementById("k-input") as HTMLInputElement).value).toBe("2");
    });

    it("starts on the setup screen with the others hidden", () => {
        expect(document.getElementById("screen-setup")!.classList.contains("hidden")).toBe(false);
        expect(document.getElementById("screen-game")!.classList.contains("hidden")).toBe(true);
        expect(document.getElementById("screen-replay")!.classList.contains("hidden")).toBe(true);
    });

    it("picking a catalog entry adjusts the default list size", () => {
        const pick = document.getElementById("catalog") as HTMLSelectElement;
        pick.value = "K5";
        pick.dispatchEvent(new Event("change"));
        expect((document.getElementById("k-input") as HTMLInputElement).value).toBe("3");
    });

    it("create with malformed custom JSON shows an inline parse error", async () => {
        (document.getElementById("custom-json") as HTMLTextAreaElement).value = "{nope";
        document.getElementById("create")!.dispatchEvent(new Event("click"));
        await new Promise((r) => setTimeout(r, 50));
        expect(document.getElementById("setup-error")!.textContent).not.toBe("");
    });
});
