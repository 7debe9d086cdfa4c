/* Dev bridge: serves the page and proxies replay requests to the udapp CLI.
 * The browser page keeps its own event trace and posts it here; the server
 * holds no state beyond one engine scratch directory per demo. */

import { createServer, IncomingMessage, ServerResponse } from "node:http";
import { readFile } from "node:fs/promises";
import { dirname, extname, join, normalize } from "node:path";
import { fileURLToPath } from "node:url";

import { CliEngine, DemoName, EngineError } from "./engine.js";
import { TraceEvent } from "./trace.js";

const ROOT = dirname(fileURLToPath(import.meta.url));
const PUBLIC = join(ROOT, "..", "public");
const MIME: Record<string, string> = {
  ".html": "text/html; charset=utf-8",
  ".js": "text/javascript; charset=utf-8",
  ".css": "text/css; charset=utf-8",
  ".svg": "image/svg+xml",
};

const engines = new Map<DemoName, CliEngine>();

async function engineFor(demo: DemoName): Promise<CliEngine> {
  let engine = engines.get(demo);
  if (!engine) {
    engine = await CliEngine.create();
    engines.set(demo, engine);
  }
  return engine;
}

async function readBody(req: IncomingMessage): Promise<string> {
  const chunks: Buffer[] = [];
  for await (const chunk of req) chunks.push(chunk as Buffer);
  return Buffer.concat(chunks).toString("utf-8");
}

function send(res: ServerResponse, status: number, body: string, type = "application/json"): void {
  res.writeHead(status, { "content-type": type });
  res.end(body);
}

async function handleReplay(req: IncomingMessage, res: ServerResponse): Promise<void> {
  const body = JSON.parse(await readBody(req)) as { demo: DemoName; events: TraceEvent[] };
  const engine = await engineFor(body.demo);
  try {
    const report = await engine.replay(body.demo, body.events);
    send(res, 200, JSON.stringify(report));
  } catch (err) {
    const msg = err instanceof EngineError ? err.message : String(err);
    send(res, 422, JSON.stringify({ error: msg }));
  }
}

async function handleDocument(req: IncomingMessage, res: ServerResponse): Promise<void> {
  const body = JSON.parse(await readBody(req)) as { demo: DemoName; events: TraceEvent[] };
  const engine = await engineFor(body.demo);
  try {
    send(res, 200, JSON.stringify(await engine.document(body.demo, body.events)));
  } catch (err) {
    const msg = err instanceof EngineError ? err.message : String(err);
    send(res, 422, JSON.stringify({ error: msg }));
  }
}

async function handleStatic(path: string, res: ServerResponse): Promise<void> {
  const file = path === "/" ? "/index.html" : path;
  const candidates = [join(PUBLIC, normalize(file)), join(ROOT, normalize(file))];
  for (const full of candidates) {
    if (!full.startsWith(PUBLIC) && !full.startsWith(ROOT)) continue;
    try {
      const data = await readFile(full);
      send(res, 200, data.toString("utf-8"), MIME[extname(full)] ?? "application/octet-stream");
      return;
    } catch {
      /* try the next root */
    }
  }
  send(res, 404, JSON.stringify({ error: "not found" }));
}

export function createAppServer() {
  return createServer((req, res) => {
    const url = req.url ?? "/";
    if (req.method === "POST" && url === "/api/replay") {
      handleReplay(req, res).catch((err) => send(res, 500, JSON.stringify({ error: String(err) })));
      return;
    }
    if (req.method === "POST" && url === "/api/document") {
      handleDocument(req, res).catch((err) => send(res, 500, JSON.stringify({ error: String(err) })));
      return;
    }
    handleStatic(url, res).catch((err) => send(res, 500, JSON.stringify({ error: String(err) })));
  });
}

const invokedDirectly = process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  const port = Number(process.env["PORT"] ?? 8787);
  createAppServer().listen(port, () => {
    console.log(`udapp UI on http://localhost:${port}`);
  });
}
