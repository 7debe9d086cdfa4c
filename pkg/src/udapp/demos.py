"""The three reference applications: Calculator, PersonalData, Functions.

Each builder produces a scene wired to a mover plus whatever calculation
state the app owns.  Layout is entirely user territory afterwards; the app
logic binds to logical keys, never to positions, sizes, or views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .display import Color, Font
from .errors import UnknownIdError
from .geometry import RectBounds, SizeRange
from .mover import Mover
from .plotting import Curve, PlotSpec
from .scene import Control, Graphical, Scene, SceneElement, VisibilityParams
from .interpreter import parse_expression

DIGITS = tuple(str(d) for d in range(10))
LOGICAL_KEYS = frozenset(DIGITS) | {".", "+", "-", "*", "/", "=", "C", "sqrt", "1/x", "+/-"}

BUTTON_RANGE = SizeRange(24, 24, 160, 160)
FIELD_RANGE = SizeRange(60, 16, 420, 64)
LABEL_RANGE = SizeRange(30, 12, 300, 48)
PLOT_RANGE = SizeRange(120, 90, 1200, 900)

PLOT_PALETTE: tuple[Color, ...] = (
    (30, 90, 200, 255),
    (200, 60, 40, 255),
    (30, 150, 70, 255),
    (150, 60, 180, 255),
    (220, 140, 20, 255),
    (20, 150, 150, 255),
)


# --- calculator arithmetic ----------------------------------------------------


@dataclass(frozen=True)
class CalcState:
    """Immediate-execution desk calculator."""

    display: str = "0"
    accumulator: float = 0.0
    pending: str | None = None  # + - * /
    typing: bool = False  # user is mid-entry
    fresh: bool = False  # current display is a usable operand
    error: bool = False


def _fmt(v: float) -> str:
    if abs(v) < 1e15 and v == int(v):
        return str(int(v))
    return format(v, ".12g")


def _apply(op: str, a: float, b: float) -> float | None:
    if op == "+":
        r = a + b
    elif op == "-":
        r = a - b
    elif op == "*":
        r = a * b
    else:
        if b == 0:
            return None
        r = a / b
    return r if math.isfinite(r) else None


_ERROR = CalcState(display="Error", error=True)


def calc_press(state: CalcState, key: str) -> CalcState:
    """One keypress; 1/0 and sqrt of a negative show "Error" until 'C'."""
    if key not in LOGICAL_KEYS:
        raise ValueError(f"unknown logical key {key!r}")
    if key == "C":
        return CalcState()
    if state.error:
        return state
    if key in DIGITS:
        if state.typing:
            shown = key if state.display == "0" else state.display + key
            return replace(state, display=shown)
        return replace(state, display=key, typing=True, fresh=True)
    if key == ".":
        if state.typing:
            if "." in state.display:
                return state
            return replace(state, display=state.display + ".")
        return replace(state, display="0.", typing=True, fresh=True)
    if key in "+-*/":
        if state.fresh:
            v = float(state.display)
            acc = _apply(state.pending, state.accumulator, v) if state.pending else v
            if acc is None:
                return _ERROR
            return CalcState(display=_fmt(acc), accumulator=acc, pending=key)
        return replace(state, pending=key, typing=False, fresh=False)
    if key == "=":
        v = float(state.display)
        acc = _apply(state.pending, state.accumulator, v) if state.pending else v
        if acc is None:
            return _ERROR
        return CalcState(display=_fmt(acc), accumulator=acc)
    # unary keys act on the display value immediately
    v = float(state.display)
    if key == "sqrt":
        if v < 0:
            return _ERROR
        return replace(state, display=_fmt(math.sqrt(v)), typing=False, fresh=True)
    if key == "1/x":
        if v == 0:
            return _ERROR
        return replace(state, display=_fmt(1.0 / v), typing=False, fresh=True)
    # +/-
    shown = state.display
    if shown != "0":
        shown = shown[1:] if shown.startswith("-") else "-" + shown
    return replace(state, display=shown, fresh=True)


# --- shared app shell ----------------------------------------------------------


class DemoApp:
    name = ""

    def __init__(self, canvas: tuple[float, float]):
        self.scene = Scene(canvas=canvas)
        self.mover = Mover(self.scene)

    def _finish_build(self) -> None:
        self.mover.sync_registration()
        self.sync_views()
        self.scene.snapshot_default()

    def click(self, element_id: str) -> None:
        """A completed press+release inside a control's interior."""

    def app_state(self) -> dict:
        return {}

    def apply_app_state(self, state: dict) -> None:
        pass

    def sync_views(self) -> None:
        """Refresh captions that mirror app data (after restore/load)."""

    def restore_default(self) -> None:
        self.scene.restore_default_view()
        self.mover.sync_registration()
        self.sync_views()


# --- calculator -----------------------------------------------------------------


def _button(eid: str, caption: str, key: str, x: float, y: float, color: Color, tag: str | None):
    return SceneElement(
        id=eid,
        kind=Control("button", caption, key),
        params=VisibilityParams(RectBounds(x, y, 44, 44), color, Font(size=13)),
        size_range=BUTTON_RANGE,
        group_tag=tag,
    )


_NUM_COLOR: Color = (205, 220, 245, 255)
_OP_COLOR: Color = (250, 220, 180, 255)
_FN_COLOR: Color = (205, 235, 205, 255)

# (id, caption, key, column, row, group tag)
_CALC_BUTTONS = [
    ("btn-sqrt", "sqrt", "sqrt", 0, 0, "grp-functions"),
    ("btn-inv", "1/x", "1/x", 1, 0, "grp-functions"),
    ("btn-sign", "+/-", "+/-", 2, 0, "grp-functions"),
    ("btn-clear", "C", "C", 3, 0, None),
    ("btn-7", "7", "7", 0, 1, "grp-numbers"),
    ("btn-8", "8", "8", 1, 1, "grp-numbers"),
    ("btn-9", "9", "9", 2, 1, "grp-numbers"),
    ("btn-div", "/", "/", 3, 1, "grp-operations"),
    ("btn-4", "4", "4", 0, 2, "grp-numbers"),
    ("btn-5", "5", "5", 1, 2, "grp-numbers"),
    ("btn-6", "6", "6", 2, 2, "grp-numbers"),
    ("btn-times", "*", "*", 3, 2, "grp-operations"),
    ("btn-1", "1", "1", 0, 3, "grp-numbers"),
    ("btn-2", "2", "2", 1, 3, "grp-numbers"),
    ("btn-3", "3", "3", 2, 3, "grp-numbers"),
    ("btn-minus", "-", "-", 3, 3, "grp-operations"),
    ("btn-0", "0", "0", 0, 4, "grp-numbers"),
    ("btn-dot", ".", ".", 1, 4, "grp-numbers"),
    ("btn-eq", "=", "=", 2, 4, "grp-operations"),
    ("btn-plus", "+", "+", 3, 4, "grp-operations"),
]

_TAG_COLOR = {"grp-numbers": _NUM_COLOR, "grp-operations": _OP_COLOR, "grp-functions": _FN_COLOR}


class CalculatorApp(DemoApp):
    name = "calculator"

    def __init__(self):
        super().__init__(canvas=(320.0, 340.0))
        self.calc = CalcState()
        self.scene.add_element(
            SceneElement(
                id="display",
                kind=Control("text-field", "0"),
                params=VisibilityParams(
                    RectBounds(12, 12, 188, 32), (245, 245, 245, 255), Font(size=16, bold=True)
                ),
                size_range=SizeRange(80, 24, 400, 96),
            )
        )
        for eid, caption, key, col, row, tag in _CALC_BUTTONS:
            color = _TAG_COLOR.get(tag, (230, 210, 210, 255))
            self.scene.add_element(_button(eid, caption, key, 12 + 48 * col, 56 + 48 * row, color, tag))
        for gid, title, color in (
            ("grp-numbers", "Numbers", _NUM_COLOR),
            ("grp-operations", "Operations", _OP_COLOR),
            ("grp-functions", "Functions", _FN_COLOR),
        ):
            members = [eid for eid, *_, tag in _CALC_BUTTONS if tag == gid]
            self.scene.create_group(gid, title=title, members=members, margin=6.0, color=color)
        self._finish_build()

    def press(self, key: str) -> None:
        self.calc = calc_press(self.calc, key)
        self.sync_views()

    def click(self, element_id: str) -> None:
        el = self.scene.element(element_id)
        if isinstance(el.kind, Control) and el.kind.key:
            self.press(el.kind.key)

    def sync_views(self) -> None:
        el = self.scene.element("display")
        if el.kind.caption != self.calc.display:
            el.kind = replace(el.kind, caption=self.calc.display)

    def app_state(self) -> dict:
        return {
            "calc": {
                "display": self.calc.display,
                "accumulator": self.calc.accumulator,
                "pending": self.calc.pending,
                "typing": self.calc.typing,
                "fresh": self.calc.fresh,
                "error": self.calc.error,
            }
        }

    def apply_app_state(self, state: dict) -> None:
        c = state.get("calc", {})
        self.calc = CalcState(
            display=str(c.get("display", "0")),
            accumulator=float(c.get("accumulator", 0.0)),
            pending=c.get("pending"),
            typing=bool(c.get("typing", False)),
            fresh=bool(c.get("fresh", False)),
            error=bool(c.get("error", False)),
        )
        self.sync_views()


# --- personal data ----------------------------------------------------------------

# (group, field key, label text or None, default value)
_PD_FIELDS = [
    ("grp-name", "name", "Name", "Alex Doe"),
    ("grp-address", "street", "Street", "1 Main St"),
    ("grp-address", "city", "City", "Springfield"),
    ("grp-address", "zip", "ZIP", "12345"),
    ("grp-address", "country", "Country", "USA"),
    ("grp-phones", "home", "Home", "555-0100"),
    ("grp-phones", "mobile", "Mobile", "555-0101"),
    ("grp-employment", "employer", "Employer", "Acme Corp"),
    ("grp-employment", "position", "Position", "Engineer"),
    ("grp-notes", "notes", None, "Prefers email."),
]

_PD_TITLES = {
    "grp-name": "Name",
    "grp-address": "Address",
    "grp-phones": "Phones",
    "grp-employment": "Employment",
    "grp-notes": "Notes",
}


class PersonalDataApp(DemoApp):
    name = "personaldata"

    def __init__(self):
        super().__init__(canvas=(380.0, 500.0))
        self.record = {key: value for _, key, _, value in _PD_FIELDS}
        members: dict[str, list[str]] = {gid: [] for gid in _PD_TITLES}
        y = 40.0
        last_group = None
        for gid, key, label, value in _PD_FIELDS:
            if last_group is not None and gid != last_group:
                y += 22.0  # gap between groups
            last_group = gid
            if label is not None:
                lbl = SceneElement(
                    id=f"lbl-{key}",
                    kind=Graphical("label", text=label),
                    params=VisibilityParams(RectBounds(28, y, 78, 18), (60, 60, 60, 255), Font(size=12)),
                    size_range=LABEL_RANGE,
                    group_tag=gid,
                )
                self.scene.add_element(lbl)
                members[gid].append(lbl.id)
            height = 40.0 if key == "notes" else 20.0
            fld = SceneElement(
                id=f"fld-{key}",
                kind=Control("text-field", caption=value, key=key),
                params=VisibilityParams(RectBounds(114, y - 1, 182, height), (255, 255, 255, 255), Font(size=12)),
                size_range=FIELD_RANGE,
                group_tag=gid,
            )
            self.scene.add_element(fld)
            members[gid].append(fld.id)
            y += height + 8.0
        for gid, title in _PD_TITLES.items():
            self.scene.create_group(gid, title=title, members=members[gid], margin=6.0)
        self.scene.create_group(
            "grp-personal",
            title="Personal data",
            members=list(_PD_TITLES),
            margin=12.0,
            color=(90, 90, 130, 255),
        )
        self._finish_build()

    def sync_views(self) -> None:
        for key, value in self.record.items():
            el = self.scene.element(f"fld-{key}")
            if el.kind.caption != value:
                el.kind = replace(el.kind, caption=value)

    def app_state(self) -> dict:
        return {"record": dict(self.record)}

    def apply_app_state(self, state: dict) -> None:
        rec = state.get("record", {})
        for key in self.record:
            if key in rec:
                self.record[key] = str(rec[key])
        self.sync_views()


# --- functions analyser ---------------------------------------------------------------


class FunctionsApp(DemoApp):
    name = "functions"

    def __init__(self):
        super().__init__(canvas=(780.0, 560.0))
        two_pi = 2 * math.pi
        self._add_plot_element("plot-sin", "sin(x)", (-two_pi, two_pi), (-1.5, 1.5), RectBounds(50, 40, 320, 220))
        self._add_plot_element("plot-cos", "cos(x)", (-two_pi, two_pi), (-1.5, 1.5), RectBounds(410, 40, 320, 220))
        self.scene.add_element(
            SceneElement(
                id="fld-expr",
                kind=Control("text-field", caption="sin(x)*exp(-x/4)"),
                params=VisibilityParams(RectBounds(50, 310, 250, 26), (255, 255, 255, 255), Font(size=12)),
                size_range=FIELD_RANGE,
            )
        )
        self.scene.add_element(
            SceneElement(
                id="btn-add",
                kind=Control("button", caption="Add plot"),
                params=VisibilityParams(RectBounds(312, 310, 90, 26), (220, 230, 245, 255), Font(size=12)),
                size_range=BUTTON_RANGE,
            )
        )
        self._finish_build()

    def _plot_count(self) -> int:
        return sum(
            1
            for el in self.scene.elements.values()
            if isinstance(el.kind, Graphical) and el.kind.shape == "plot-area"
        )

    def _add_plot_element(self, pid, expr, x_range, y_range, bounds) -> str:
        parse_expression(expr)  # surface bad input before touching the scene
        spec = PlotSpec(
            x_range[0], x_range[1], y_range[0], y_range[1],
            curves=(Curve(expr, PLOT_PALETTE[self._plot_count() % len(PLOT_PALETTE)]),),
            comment=expr,
        )
        el = SceneElement(
            id=pid,
            kind=Graphical("plot-area", plot=spec),
            params=VisibilityParams(bounds, (252, 252, 252, 255)),
            size_range=PLOT_RANGE,
        )
        self.scene.add_element(el)
        self.mover.register(pid)
        return pid

    def add_plot(
        self,
        expr: str,
        x_range: tuple[float, float] = (-10.0, 10.0),
        y_range: tuple[float, float] = (-10.0, 10.0),
        bounds: RectBounds | None = None,
    ) -> str:
        """New topmost plot; parse problems surface with their position."""
        pid = f"plot-{self.scene.next_seq()}"
        if bounds is None:
            step = 24.0 * (self._plot_count() % 8)
            bounds = RectBounds(70 + step, 80 + step, 320, 220)
        return self._add_plot_element(pid, expr, x_range, y_range, bounds)

    def remove_plot(self, pid: str) -> None:
        el = self.scene.element(pid)
        if not (isinstance(el.kind, Graphical) and el.kind.shape == "plot-area"):
            raise UnknownIdError(f"{pid!r} is not a plot")
        self.mover.unregister(pid)
        self.scene.remove_element(pid)

    def click(self, element_id: str) -> None:
        if element_id == "btn-add":
            self.add_plot(self.scene.element("fld-expr").kind.caption)


# --- registry --------------------------------------------------------------------------


def build_calculator() -> CalculatorApp:
    return CalculatorApp()


def build_personaldata() -> PersonalDataApp:
    return PersonalDataApp()


def build_functions_analyser() -> FunctionsApp:
    return FunctionsApp()


DEMOS = {
    "calculator": CalculatorApp,
    "personaldata": PersonalDataApp,
    "functions": FunctionsApp,
}


def build_demo(name: str) -> DemoApp:
    cls = DEMOS.get(name)
    if cls is None:
        raise UnknownIdError(f"unknown demo {name!r}; pick one of {', '.join(sorted(DEMOS))}")
    return cls()
