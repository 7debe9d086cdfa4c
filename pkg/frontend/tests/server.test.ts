import { AddressInfo } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createAppServer } from "../src/server.js";
import { expectedHashes } from "./helpers.js";

const server = createAppServer();
let base = "";

beforeAll(async () => {
  await new Promise<void>((resolve) => server.listen(0, resolve));
  base = `http://127.0.0.1:${(server.address() as AddressInfo).port}`;
});

afterAll(() => {
  server.close();
});

describe("dev server bridge", () => {
  it("serves the page", async () => {
    const res = await fetch(`${base}/`);
    expect(res.status).toBe(200);
    expect(await res.text()).toContain("<canvas");
  });

  it("replays traces over HTTP", async () => {
    const res = await fetch(`${base}/api/replay`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ demo: "calculator", events: [] }),
    });
    expect(res.status).toBe(200);
    const report = (await res.json()) as { hash: string; svg: string };
    expect(report.hash).toBe((await expectedHashes())["calculator"]!.baseline);
    expect(report.svg).toContain("<svg");
  });

  it("returns the layout document", async () => {
    const res = await fetch(`${base}/api/document`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ demo: "personaldata", events: [] }),
    });
    const doc = (await res.json()) as { format: string };
    expect(doc.format).toBe("udapp-layout/1");
  });

  it("maps engine failures to 422 with the message", async () => {
    const res = await fetch(`${base}/api/replay`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        demo: "calculator",
        events: [{ type: "command", name: "add-plot", args: { expr: "x" } }],
      }),
    });
    expect(res.status).toBe(422);
    const body = (await res.json()) as { error: string };
    expect(body.error).toMatch(/plots/);
  });
});
