/* Browser shell: one canvas, a demo selector, a context menu, a status bar.
 *
 * The page owns nothing but the event trace.  Every pointer event and menu
 * command is appended and the whole trace is replayed server-side through
 * the udapp CLI; the canvas just shows the returned SVG. */

import { DemoName, EngineReport, LayoutDocument } from "./engine.js";
import { MenuItem, buildMenu } from "./menu.js";
import { cursorToCss, drawSvg } from "./render.js";
import { CommandName, TraceEvent, mouseDown, mouseMove, mouseUp, toJsonl } from "./trace.js";

type ApiReport = EngineReport & { error?: string };

const canvas = document.getElementById("scene") as HTMLCanvasElement;
const demoSelect = document.getElementById("demo") as HTMLSelectElement;
const statusBar = document.getElementById("status") as HTMLElement;
const traceButton = document.getElementById("download-trace") as HTMLButtonElement;
const menuHost = document.getElementById("menu") as HTMLElement;

let demo: DemoName = "calculator";
let events: TraceEvent[] = [];
let buttonDown = false;
let lastMoveAt = 0;

function status(text: string): void {
  statusBar.textContent = text;
}

async function post<T>(url: string, body: unknown): Promise<T> {
  const res = await fetch(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const data = (await res.json()) as T & { error?: string };
  if (!res.ok) throw new Error(data.error ?? res.statusText);
  return data;
}

async function replay(extra: TraceEvent[] = []): Promise<ApiReport> {
  return post<ApiReport>("/api/replay", { demo, events: [...events, ...extra] });
}

async function refresh(): Promise<void> {
  try {
    const report = await replay();
    await drawSvg(canvas, report.svg);
    canvas.style.cursor = cursorToCss(report.cursor);
    status(`hash ${report.hash}`);
  } catch (err) {
    status(String(err)); // engine errors land in the status bar, unswallowed
  }
}

async function applyEvent(ev: TraceEvent): Promise<void> {
  events.push(ev);
  try {
    const report = await replay();
    await drawSvg(canvas, report.svg);
    canvas.style.cursor = cursorToCss(report.cursor);
    status(`hash ${report.hash}`);
  } catch (err) {
    events.pop(); // a rejected command must not poison the session
    status(String(err));
  }
}

function canvasPoint(ev: MouseEvent): { x: number; y: number } {
  const r = canvas.getBoundingClientRect();
  return { x: Math.round(ev.clientX - r.left), y: Math.round(ev.clientY - r.top) };
}

canvas.addEventListener("pointerdown", (ev) => {
  if (ev.button !== 0) return;
  const { x, y } = canvasPoint(ev);
  buttonDown = true;
  void applyEvent(mouseDown(x, y));
});

canvas.addEventListener("pointermove", (ev) => {
  const { x, y } = canvasPoint(ev);
  const now = performance.now();
  if (buttonDown) {
    if (now - lastMoveAt < 50) return; // drag redraw throttle
    lastMoveAt = now;
    void applyEvent(mouseMove(x, y));
  } else if (now - lastMoveAt > 150) {
    lastMoveAt = now;
    // idle moves are engine no-ops; probe without recording for the cursor
    void replay([mouseMove(x, y)])
      .then((report) => {
        canvas.style.cursor = cursorToCss(report.cursor);
      })
      .catch(() => undefined);
  }
});

canvas.addEventListener("pointerup", (ev) => {
  if (ev.button !== 0) return;
  const { x, y } = canvasPoint(ev);
  buttonDown = false;
  void applyEvent(mouseUp(x, y));
});

canvas.addEventListener("contextmenu", (ev) => {
  ev.preventDefault();
  const { x, y } = canvasPoint(ev);
  void openMenu(x, y, ev.clientX, ev.clientY);
});

async function openMenu(x: number, y: number, px: number, py: number): Promise<void> {
  events.push(mouseDown(x, y, "right"), mouseUp(x, y));
  try {
    const report = await replay();
    const doc = await post<LayoutDocument>("/api/document", { demo, events });
    showMenu(buildMenu(doc, report.context, demo), px, py);
  } catch (err) {
    status(String(err));
  }
}

function showMenu(items: MenuItem[], px: number, py: number): void {
  menuHost.innerHTML = "";
  menuHost.style.display = "block";
  menuHost.style.left = `${px}px`;
  menuHost.style.top = `${py}px`;
  const list = document.createElement("ul");
  for (const item of items) renderItem(item, list);
  menuHost.append(list);
}

function renderItem(item: MenuItem, parent: HTMLElement): void {
  const li = document.createElement("li");
  li.textContent = item.label + (item.children ? " ▸" : "");
  if (item.children) {
    const sub = document.createElement("ul");
    for (const child of item.children) renderItem(child, sub);
    li.append(sub);
  }
  li.addEventListener("click", (ev) => {
    ev.stopPropagation();
    if (item.children) return;
    closeMenu();
    void runItem(item);
  });
  parent.append(li);
}

function closeMenu(): void {
  menuHost.style.display = "none";
}

document.addEventListener("click", closeMenu);

async function runItem(item: MenuItem): Promise<void> {
  if (item.action) {
    await applyEvent({ type: "command", name: item.action.name, args: item.action.args });
    return;
  }
  switch (item.prompt) {
    case "expression": {
      const expr = window.prompt("f(x) =", "sin(x)");
      if (expr) await applyEvent({ type: "command", name: "add-plot" as CommandName, args: { expr } });
      break;
    }
    case "save-file": {
      const name = window.prompt("Save layout as", "layout.json");
      if (name) await applyEvent({ type: "save-layout", path: name });
      break;
    }
    case "load-file": {
      const name = window.prompt("Load layout from", "layout.json");
      if (name) await applyEvent({ type: "load-layout", path: name });
      break;
    }
    default:
      status(`${item.label}: not wired in this build`);
  }
}

demoSelect.addEventListener("change", () => {
  demo = demoSelect.value as DemoName;
  events = [];
  void refresh();
});

traceButton.addEventListener("click", () => {
  const blob = new Blob([toJsonl(events)], { type: "application/jsonl" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = `${demo}-session.jsonl`;
  a.click();
  URL.revokeObjectURL(a.href);
});

void refresh();
