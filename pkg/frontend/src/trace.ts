/* Trace events: the one schema shared by the UI, recorded trace files, and
 * the engine's replay CLI (JSON Lines, one event per line). */

export type Button = "left" | "right";

export const COMMAND_NAMES = [
  "hide",
  "show",
  "fix",
  "unfix",
  "spread",
  "restore-default",
  "rubber-band",
  "dissolve",
  "add-plot",
  "remove-plot",
  "press-key",
  "set-params",
] as const;

export type CommandName = (typeof COMMAND_NAMES)[number];

export type TraceEvent =
  | { type: "mouse-down"; x: number; y: number; button: Button }
  | { type: "mouse-move"; x: number; y: number }
  | { type: "mouse-up"; x: number; y: number }
  | { type: "command"; name: CommandName; args: Record<string, unknown> }
  | { type: "save-layout"; path: string }
  | { type: "load-layout"; path: string };

export function mouseDown(x: number, y: number, button: Button = "left"): TraceEvent {
  return { type: "mouse-down", x, y, button };
}

export function mouseMove(x: number, y: number): TraceEvent {
  return { type: "mouse-move", x, y };
}

export function mouseUp(x: number, y: number): TraceEvent {
  return { type: "mouse-up", x, y };
}

export function command(name: CommandName, args: Record<string, unknown> = {}): TraceEvent {
  return { type: "command", name, args };
}

export function toJsonl(events: readonly TraceEvent[]): string {
  return events.map((ev) => JSON.stringify(ev)).join("\n") + (events.length ? "\n" : "");
}
