/* UiSession: the live session is its event trace.
 *
 * Mouse events and commands are forwarded verbatim; rendering replays the
 * whole trace through the engine CLI, so a recorded file always reproduces
 * the session's final hash.  The UI adds no semantics of its own. */

import { readFile, writeFile } from "node:fs/promises";
import { join } from "node:path";

import { CliEngine, DemoName, EngineReport, LayoutDocument } from "./engine.js";
import { Button, CommandName, TraceEvent, command, mouseDown, mouseMove, mouseUp } from "./trace.js";

export interface SessionOptions {
  /* render after every applied event (needed for live dirty/cursor state);
   * scripted drivers can turn it off and render once at the end */
  autoRender?: boolean;
}

export class UiSession {
  readonly events: TraceEvent[] = [];
  lastReport: EngineReport | null = null;
  lastError: string | null = null; // status-bar line; errors are never swallowed
  dirty = false; // did the last event change any geometry?
  recording = false;
  private recordStart = 0;
  private recordPreamble: TraceEvent[] = [];
  private readonly autoRender: boolean;

  private constructor(
    readonly demo: DemoName,
    readonly engine: CliEngine,
    opts: SessionOptions,
  ) {
    this.autoRender = opts.autoRender ?? true;
  }

  static async start(demo: DemoName, opts: SessionOptions = {}): Promise<UiSession> {
    const session = new UiSession(demo, await CliEngine.create(), opts);
    if (session.autoRender) await session.render();
    return session;
  }

  hash(): string | null {
    return this.lastReport?.hash ?? null;
  }

  cursor(): string {
    return this.lastReport?.cursor ?? "default";
  }

  async render(): Promise<EngineReport> {
    const before = this.lastReport?.hash;
    this.lastReport = await this.engine.replay(this.demo, this.events);
    this.dirty = this.lastReport.hash !== before;
    return this.lastReport;
  }

  /* Append one event; on engine failure the event is rolled back so one bad
   * command cannot poison the session. */
  private async apply(ev: TraceEvent): Promise<boolean> {
    this.events.push(ev);
    if (!this.autoRender) return false;
    try {
      await this.render();
    } catch (err) {
      this.events.pop();
      this.lastError = err instanceof Error ? err.message : String(err);
      throw err;
    }
    this.lastError = null;
    return this.dirty;
  }

  async pointerDown(x: number, y: number, button: Button = "left"): Promise<boolean> {
    return this.apply(mouseDown(x, y, button));
  }

  async pointerMove(x: number, y: number): Promise<boolean> {
    return this.apply(mouseMove(x, y));
  }

  async pointerUp(x: number, y: number): Promise<boolean> {
    return this.apply(mouseUp(x, y));
  }

  async command(name: CommandName, args: Record<string, unknown> = {}): Promise<boolean> {
    return this.apply(command(name, args));
  }

  async saveLayout(filename: string): Promise<void> {
    await this.apply({ type: "save-layout", path: filename });
  }

  async loadLayout(filename: string): Promise<void> {
    await this.apply({ type: "load-layout", path: filename });
  }

  async document(): Promise<LayoutDocument> {
    return this.engine.document(this.demo, this.events);
  }

  /* Record mode.  Starting mid-session snapshots the current state into the
   * session directory and opens the recording with a load-layout of it, so
   * the recorded file alone replays to the same final hash. */
  async startRecording(): Promise<void> {
    if (this.recording) return;
    this.recordPreamble = [];
    if (this.events.length > 0) {
      const base = "record-base.json";
      await this.engine.replay(this.demo, this.events, {
        saveLayout: join(this.engine.baseDir, base),
      });
      this.recordPreamble = [{ type: "load-layout", path: base }];
    }
    this.recordStart = this.events.length;
    this.recording = true;
  }

  recordedEvents(): TraceEvent[] {
    return [...this.recordPreamble, ...this.events.slice(this.recordStart)];
  }

  async stopRecording(filename: string): Promise<string> {
    this.recording = false;
    const path = join(this.engine.baseDir, filename);
    const { toJsonl } = await import("./trace.js");
    await writeFile(path, toJsonl(this.recordedEvents()), "utf-8");
    return path;
  }

  async readFileInSession(filename: string): Promise<string> {
    return readFile(join(this.engine.baseDir, filename), "utf-8");
  }
}
