import { execFile } from "node:child_process";
import { readFile } from "node:fs/promises";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { promisify } from "node:util";

import { LayoutDocument } from "../src/engine.js";
import { TraceEvent } from "../src/trace.js";

const execFileP = promisify(execFile);

export const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
export const DATA_DIR = join(REPO_ROOT, "tests", "data");

export async function expectedHashes(): Promise<
  Record<string, { baseline: string; trace: string }>
> {
  return JSON.parse(await readFile(join(DATA_DIR, "expected_hashes.json"), "utf-8"));
}

export async function readTrace(name: string): Promise<TraceEvent[]> {
  const text = await readFile(join(DATA_DIR, `${name}.jsonl`), "utf-8");
  return text
    .split("\n")
    .filter((line) => line.trim())
    .map((line) => JSON.parse(line) as TraceEvent);
}

/* Headless replay through the CLI directly (no frontend code involved):
 * the reference side of the UI-fidelity comparison. */
export async function cliReplayHash(demo: string, tracePath: string): Promise<string> {
  const { stdout } = await execFileP("udapp", ["replay", demo, tracePath]);
  return stdout.trim();
}

export function elementBounds(doc: LayoutDocument, id: string): [number, number, number, number] {
  const el = doc.scene.elements.find((e) => e.id === id);
  if (!el) throw new Error(`no element ${id} in the layout document`);
  return el.bounds;
}
