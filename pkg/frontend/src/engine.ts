/* Engine bridge: the frontend never implements scene semantics itself.
 * Every state question is answered by replaying the session's trace through
 * the `udapp` CLI and reading its JSON report or a layout document. */

import { execFile } from "node:child_process";
import { mkdtemp, readFile, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import { TraceEvent, toJsonl } from "./trace.js";

const execFileP = promisify(execFile);

export type DemoName = "calculator" | "personaldata" | "functions";

export interface EngineReport {
  hash: string;
  cursor: string;
  context: string | null; // element the last right press landed on
  app: Record<string, unknown>;
  svg: string;
}

/* Subset of the udapp-layout/1 document the UI actually reads. */
export interface LayoutElement {
  id: string;
  kind: { type: string; [k: string]: unknown };
  bounds: [number, number, number, number];
  movable: boolean;
  hidden: boolean;
  group_tag: string | null;
}

export interface LayoutGroup {
  id: string;
  title: string;
  members: string[];
  temporary: boolean;
}

export interface LayoutDocument {
  format: string;
  scene: { elements: LayoutElement[]; groups: LayoutGroup[]; z_order: string[] };
  app: Record<string, unknown>;
}

export class EngineError extends Error {
  constructor(message: string, readonly exitCode: number | null) {
    super(message);
    this.name = "EngineError";
  }
}

function cliCommand(): string[] {
  const override = process.env["UDAPP_CLI"];
  return override ? override.split(" ") : ["udapp"];
}

export class CliEngine {
  private constructor(readonly baseDir: string) {}

  /* baseDir holds the session trace plus any save-layout/load-layout files
   * (the CLI resolves relative paths against the trace's directory). */
  static async create(): Promise<CliEngine> {
    return new CliEngine(await mkdtemp(join(tmpdir(), "udapp-ui-")));
  }

  async replay(
    demo: DemoName,
    events: readonly TraceEvent[],
    opts: { layout?: string; saveLayout?: string } = {},
  ): Promise<EngineReport> {
    const tracePath = join(this.baseDir, "session.jsonl");
    await writeFile(tracePath, toJsonl(events), "utf-8");
    const [cmd, ...head] = cliCommand();
    const args = [...head, "replay", demo, tracePath, "--json"];
    if (opts.layout) args.push("--layout", opts.layout);
    if (opts.saveLayout) args.push("--save-layout", opts.saveLayout);
    try {
      const { stdout } = await execFileP(cmd as string, args, { maxBuffer: 64 * 1024 * 1024 });
      return JSON.parse(stdout) as EngineReport;
    } catch (err) {
      const e = err as { code?: number; stderr?: string; message?: string };
      throw new EngineError(e.stderr?.trim() || e.message || "engine failed", e.code ?? null);
    }
  }

  /* Current scene structure, read from the documented layout format. */
  async document(demo: DemoName, events: readonly TraceEvent[]): Promise<LayoutDocument> {
    const path = join(this.baseDir, "inspect.json");
    await this.replay(demo, events, { saveLayout: path });
    return JSON.parse(await readFile(path, "utf-8")) as LayoutDocument;
  }
}
