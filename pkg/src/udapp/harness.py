"""Headless operation: scripted event traces, deterministic replay, SVG
snapshots, and the scene hash.

Traces are JSON Lines, one event per line; replaying a trace drives the
mover and scene exactly as a live UI would, so the full test surface needs
no UI at all.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from . import groups, persistence
from .demos import CalculatorApp, DemoApp, FunctionsApp
from .display import Command, FillRect, Font, Frame, Polyline, StrokeRect, Text
from .errors import EventError, TraceParseError, UdappError
from .geometry import Point, RectBounds
from .scene import Control, Scene, VisibilityParams

MOUSE_EVENTS = ("mouse-down", "mouse-move", "mouse-up")
COMMAND_NAMES = (
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
)


@dataclass(frozen=True)
class TraceEvent:
    type: str
    point: Point | None = None
    button: str = "left"
    name: str | None = None
    args: dict | None = None
    path: str | None = None

    def to_dict(self) -> dict:
        if self.type in MOUSE_EVENTS:
            d = {"type": self.type, "x": self.point.x, "y": self.point.y}
            if self.type == "mouse-down":
                d["button"] = self.button
            return d
        if self.type == "command":
            return {"type": "command", "name": self.name, "args": self.args or {}}
        return {"type": self.type, "path": self.path}


def mouse_down(x: float, y: float, button: str = "left") -> TraceEvent:
    return TraceEvent("mouse-down", point=Point(x, y), button=button)


def mouse_move(x: float, y: float) -> TraceEvent:
    return TraceEvent("mouse-move", point=Point(x, y))


def mouse_up(x: float, y: float) -> TraceEvent:
    return TraceEvent("mouse-up", point=Point(x, y))


def command(name: str, **args) -> TraceEvent:
    return TraceEvent("command", name=name, args=args)


def parse_trace(text: str) -> list[TraceEvent]:
    """Parse JSONL trace text; blank lines are allowed between events."""
    events: list[TraceEvent] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as e:
            raise TraceParseError(lineno, e.msg) from e
        if not isinstance(raw, dict) or "type" not in raw:
            raise TraceParseError(lineno, "event must be an object with a 'type'")
        etype = raw["type"]
        try:
            if etype in MOUSE_EVENTS:
                button = raw.get("button", "left")
                if button not in ("left", "right"):
                    raise TraceParseError(lineno, f"bad button {button!r}")
                events.append(
                    TraceEvent(etype, point=Point(float(raw["x"]), float(raw["y"])), button=button)
                )
            elif etype == "command":
                name = raw.get("name")
                if name not in COMMAND_NAMES:
                    raise TraceParseError(lineno, f"unknown command {name!r}")
                args = raw.get("args", {})
                if not isinstance(args, dict):
                    raise TraceParseError(lineno, "command args must be an object")
                events.append(TraceEvent("command", name=name, args=args))
            elif etype in ("save-layout", "load-layout"):
                path = raw.get("path")
                if not isinstance(path, str) or not path:
                    raise TraceParseError(lineno, "missing path")
                events.append(TraceEvent(etype, path=path))
            else:
                raise TraceParseError(lineno, f"unknown event type {etype!r}")
        except (KeyError, TypeError, ValueError) as e:
            raise TraceParseError(lineno, f"malformed event: {e}") from e
    return events


def format_trace(events: list[TraceEvent]) -> str:
    return "".join(json.dumps(ev.to_dict(), sort_keys=True) + "\n" for ev in events)


# --- scene hash -----------------------------------------------------------------


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def scene_hash(app: DemoApp) -> str:
    """FNV-1a 64 over the canonical layout document plus app state."""
    return f"{fnv1a64(persistence.save_layout(app.scene, app.app_state())):016x}"


# --- replay session ----------------------------------------------------------------


class Session:
    """Applies trace events to an app the way a UI event loop would."""

    def __init__(self, app: DemoApp, base_dir: str = "."):
        self.app = app
        self.base_dir = base_dir
        self.last_point = Point(0, 0)
        self.last_context: str | None = None  # element the last right press hit
        self._pending_click: str | None = None

    # mouse ----------------------------------------------------------------

    def mouse_down(self, p: Point, button: str = "left") -> None:
        self.last_point = p
        result = self.app.mover.catch(p, button)
        if button == "right":
            self.last_context = result.element_id
        elif result.kind.value == "no-catch":
            self._pending_click = self._click_target(p)

    def mouse_move(self, p: Point) -> bool:
        self.last_point = p
        return self.app.mover.move_to(p)

    def mouse_up(self, p: Point) -> None:
        self.last_point = p
        info = self.app.mover.release()
        if not info.was_caught and self._pending_click is not None:
            target = self._pending_click
            el = self.app.scene.elements.get(target)
            if el is not None and not el.hidden and el.params.bounds.contains(p):
                self.app.click(target)
        self._pending_click = None

    def _click_target(self, p: Point) -> str | None:
        """Topmost visible control whose interior holds the press."""
        for eid in reversed(self.app.scene.z_order):
            el = self.app.scene.elements[eid]
            if el.hidden:
                continue
            if isinstance(el.kind, Control) and el.params.bounds.contains(p):
                return eid
        return None

    # commands -------------------------------------------------------------

    def command(self, name: str, args: dict) -> None:
        # a live UI cannot issue commands mid-drag; normalize odd traces
        if self.app.mover.state is not None:
            self.app.mover.release()
        scene = self.app.scene
        if name in ("hide", "show"):
            scene.set_hidden(_req(args, "target", str), name == "hide")
        elif name in ("fix", "unfix"):
            scene.set_movable(_req(args, "target", str), name == "unfix")
        elif name == "spread":
            scene.spread_sample(_req(args, "sample", str), self._spread_targets(args))
        elif name == "restore-default":
            self.app.restore_default()
        elif name == "rubber-band":
            gid = scene.rubber_band_select(_rect(_req(args, "bounds", list)))
            if gid is not None:
                self.app.mover.register(gid)
        elif name == "dissolve":
            gid = _req(args, "group", str)
            groups.dissolve_group(scene, gid)
            self.app.mover.registered.discard(gid)
        elif name == "add-plot":
            if not isinstance(self.app, FunctionsApp):
                raise UdappError("this demo has no plots")
            kwargs = {}
            if "x_range" in args:
                kwargs["x_range"] = tuple(args["x_range"])
            if "y_range" in args:
                kwargs["y_range"] = tuple(args["y_range"])
            if "bounds" in args:
                kwargs["bounds"] = _rect(args["bounds"])
            self.app.add_plot(_req(args, "expr", str), **kwargs)
        elif name == "remove-plot":
            if not isinstance(self.app, FunctionsApp):
                raise UdappError("this demo has no plots")
            self.app.remove_plot(_req(args, "id", str))
        elif name == "press-key":
            if not isinstance(self.app, CalculatorApp):
                raise UdappError("this demo has no keypad")
            key = _req(args, "key", str)
            from .demos import LOGICAL_KEYS

            if key not in LOGICAL_KEYS:
                raise UdappError(f"unknown logical key {key!r}")
            self.app.press(key)
        elif name == "set-params":
            self._set_params(args)
        else:
            raise UdappError(f"unknown command {name!r}")

    def _spread_targets(self, args: dict) -> list[str]:
        if "targets" in args:
            targets = args["targets"]
            if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
                raise UdappError("spread targets must be a list of ids")
            return targets
        gid = _req(args, "group", str)
        if gid not in self.app.scene.groups:
            raise UdappError(f"no group {gid!r}")
        unit = self.app.scene.group_unit_ids(gid)
        return sorted(e for e in unit if e not in self.app.scene.groups)

    def _set_params(self, args: dict) -> None:
        scene = self.app.scene
        el = scene.element(_req(args, "id", str))
        p = el.params
        bounds = _rect(args["bounds"]) if "bounds" in args else p.bounds
        color = p.color
        if "color" in args:
            c = args["color"]
            if not (isinstance(c, list) and len(c) == 4):
                raise UdappError("color must be [r, g, b, a]")
            color = tuple(c)
        font = p.font
        if "font" in args:
            f = args["font"]
            if not isinstance(f, dict):
                raise UdappError("font must be an object")
            font = Font(
                str(f.get("family", p.font.family)),
                float(f.get("size", p.font.size)),
                bool(f.get("bold", p.font.bold)),
                bool(f.get("italic", p.font.italic)),
            )
        scene.set_visibility_params(el.id, VisibilityParams(bounds, color, font))

    # files ----------------------------------------------------------------

    def _resolve(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def save(self, path: str) -> None:
        if self.app.mover.state is not None:
            self.app.mover.release()
        persistence.write_layout(self._resolve(path), self.app.scene, self.app.app_state())

    def load(self, path: str) -> None:
        if self.app.mover.state is not None:
            self.app.mover.release()
        app_state = persistence.read_layout(self._resolve(path), self.app.scene)
        self.app.apply_app_state(app_state)
        self.app.mover.sync_registration()

    # dispatch ----------------------------------------------------------------

    def apply(self, ev: TraceEvent) -> None:
        if ev.type == "mouse-down":
            self.mouse_down(ev.point, ev.button)
        elif ev.type == "mouse-move":
            self.mouse_move(ev.point)
        elif ev.type == "mouse-up":
            self.mouse_up(ev.point)
        elif ev.type == "command":
            self.command(ev.name, ev.args or {})
        elif ev.type == "save-layout":
            self.save(ev.path)
        elif ev.type == "load-layout":
            self.load(ev.path)
        else:
            raise UdappError(f"unknown event type {ev.type!r}")

    def hash(self) -> str:
        return scene_hash(self.app)


def _req(args: dict, key: str, typ) -> object:
    v = args.get(key)
    if not isinstance(v, typ):
        raise UdappError(f"command needs {key!r} of type {typ.__name__}")
    return v


def _rect(v) -> RectBounds:
    if not (isinstance(v, (list, tuple)) and len(v) == 4):
        raise UdappError("bounds must be [left, top, width, height]")
    try:
        return RectBounds(*(float(x) for x in v))
    except (TypeError, ValueError) as e:
        raise UdappError(f"bad bounds: {e}") from e


def replay(app: DemoApp, events: list[TraceEvent], base_dir: str = ".") -> str:
    """Apply events in order; returns the final scene hash.

    Any failing event aborts with its index and cause.
    """
    session = Session(app, base_dir)
    for i, ev in enumerate(events):
        try:
            session.apply(ev)
        except UdappError as e:
            raise EventError(i, e) from e
    return session.hash()


# --- SVG rendering ---------------------------------------------------------------


def _n(v: float) -> str:
    """Coordinates rounded to 3 decimals, trailing zeros stripped."""
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _paint(color, attr: str) -> str:
    r, g, b, a = color
    out = f' {attr}="rgb({r},{g},{b})"'
    if a != 255:
        out += f' {attr}-opacity="{_n(a / 255)}"'
    return out


def _rect_attrs(b: RectBounds) -> str:
    return f'x="{_n(b.left)}" y="{_n(b.top)}" width="{_n(b.width)}" height="{_n(b.height)}"'


def _text_el(cmd: Text) -> str:
    font = cmd.font
    attrs = f'x="{_n(cmd.x)}" y="{_n(cmd.y)}" font-family={quoteattr(font.family)} font-size="{_n(font.size)}"'
    if font.bold:
        attrs += ' font-weight="bold"'
    if font.italic:
        attrs += ' font-style="italic"'
    attrs += _paint(cmd.color, "fill")
    return f"<text {attrs}>{escape(cmd.text)}</text>"


def _command_el(cmd: Command) -> str:
    if isinstance(cmd, FillRect):
        return f"<rect {_rect_attrs(cmd.bounds)}{_paint(cmd.color, 'fill')}/>"
    if isinstance(cmd, StrokeRect):
        return f'<rect {_rect_attrs(cmd.bounds)} fill="none"{_paint(cmd.color, "stroke")} stroke-width="1"/>'
    if isinstance(cmd, Text):
        return _text_el(cmd)
    if isinstance(cmd, Polyline):
        pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in cmd.points)
        return f'<polyline points="{pts}" fill="none"{_paint(cmd.color, "stroke")} stroke-width="1"/>'
    if isinstance(cmd, Frame):
        b = cmd.bounds
        rect = f'<rect {_rect_attrs(b)} fill="none"{_paint(cmd.color, "stroke")} stroke-width="1" stroke-dasharray="4 3"/>'
        title = ""
        if cmd.title:
            label = Text(b.left + 6.0, b.top - 3.0, cmd.title, Font(size=11.0), cmd.color)
            title = _text_el(label)
        return f"<g>{rect}{title}</g>"
    raise TypeError(f"not a display command: {cmd!r}")


def render_svg(scene: Scene) -> bytes:
    """Deterministic SVG 1.1: one element per display-list command."""
    w, h = scene.canvas
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_n(w)}" height="{_n(h)}" '
        f'viewBox="0 0 {_n(w)} {_n(h)}">',
    ]
    lines.extend(_command_el(cmd) for cmd in scene.build_display_list())
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
