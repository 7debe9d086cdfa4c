"""Plot areas: world<->screen mapping, tick generation, curve display.

A plot is an ordinary movable/resizable element; the display fragment is
re-derived from its current bounds, so moving or resizing the element
stretches the view transform while the data stays put.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import interpreter
from .display import Color, Command, Font, Polyline, StrokeRect, Text, check_color
from .errors import BadRangeError
from .geometry import Point, RectBounds

__all__ = [
    "Curve",
    "PlotSpec",
    "DEFAULT_SAMPLES",
    "world_to_screen",
    "screen_to_world",
    "nice_ticks",
    "plot_display",
]

DEFAULT_SAMPLES = 256

_AXIS_COLOR: Color = (80, 80, 80, 255)
_TICK_FONT = Font(size=10.0)
_COMMENT_FONT = Font(size=11.0, italic=True)


@dataclass(frozen=True)
class Curve:
    expr: str
    color: Color = (30, 90, 200, 255)
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        object.__setattr__(self, "color", check_color(self.color))
        if self.samples < 2:
            raise BadRangeError("curve needs at least 2 samples")


@dataclass(frozen=True)
class PlotSpec:
    """World window plus curves; world y grows upward, screen y downward."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    curves: tuple[Curve, ...] = ()
    comment: str = ""

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not all(map(math.isfinite, (self.x_min, self.x_max, self.y_min, self.y_max))):
            raise BadRangeError("world ranges must be finite")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise BadRangeError("world ranges must be non-empty")
        object.__setattr__(self, "curves", tuple(self.curves))


def world_to_screen(bounds: RectBounds, spec: PlotSpec, wp: tuple[float, float]) -> Point:
    wx, wy = wp
    sx = bounds.left + (wx - spec.x_min) / (spec.x_max - spec.x_min) * bounds.width
    sy = bounds.top + (spec.y_max - wy) / (spec.y_max - spec.y_min) * bounds.height
    return Point(sx, sy)


def screen_to_world(bounds: RectBounds, spec: PlotSpec, p: Point) -> tuple[float, float]:
    wx = spec.x_min + (p.x - bounds.left) / bounds.width * (spec.x_max - spec.x_min)
    wy = spec.y_max - (p.y - bounds.top) / bounds.height * (spec.y_max - spec.y_min)
    return wx, wy


def nice_ticks(lo: float, hi: float, target: int) -> list[float]:
    """Ticks at multiples of a step from the {1,2,5} x 10^k ladder.

    The step is the ladder entry whose tick count over [lo, hi] is closest
    to `target` (ties keep the smaller step); the first tick is the
    smallest multiple >= lo and the last is <= hi.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise BadRangeError(f"bad tick range [{lo}, {hi}]")
    if target < 2:
        raise BadRangeError("need a target of at least 2 ticks")
    span = hi - lo
    slack = span * 1e-12  # absorbs fp error at range endpoints
    exp0 = math.floor(math.log10(span))
    best_step = None
    best_dist = None
    for exp in range(exp0 - 3, exp0 + 2):
        for m in (1, 2, 5):
            step = m * 10.0**exp
            i0 = math.ceil((lo - slack) / step)
            i1 = math.floor((hi + slack) / step)
            count = i1 - i0 + 1
            if count < 1:
                continue
            dist = abs(count - target)
            if best_dist is None or dist < best_dist:
                best_step = step
                best_dist = dist
    if best_step is None:
        raise BadRangeError(f"no usable step for [{lo}, {hi}]")
    i0 = math.ceil((lo - slack) / best_step)
    i1 = math.floor((hi + slack) / best_step)
    return [i * best_step for i in range(i0, i1 + 1)]


def _q(v: float) -> float:
    # Dyadic 1/1024 px grid: keeps plot-local offsets exactly translatable.
    return round(v * 1024.0) / 1024.0


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    return format(v, "g")


def plot_display(bounds: RectBounds, spec: PlotSpec) -> list[Command]:
    """Frame, ticks with labels, comment, and one polyline per curve branch.

    All coordinates are plot-local offsets snapped to a 1/1024 px grid and
    then shifted by the plot origin, so translating the plot translates
    every emitted coordinate exactly.
    """
    ox, oy = bounds.left, bounds.top
    w, h = bounds.width, bounds.height
    cmds: list[Command] = [StrokeRect(bounds, _AXIS_COLOR)]

    x_target = max(2, min(12, int(w // 60) + 1))
    y_target = max(2, min(10, int(h // 40) + 1))
    x_span = spec.x_max - spec.x_min
    y_span = spec.y_max - spec.y_min

    for t in nice_ticks(spec.x_min, spec.x_max, x_target):
        u = _q((t - spec.x_min) / x_span * w)
        cmds.append(Polyline(((ox + u, oy + h), (ox + u, oy + h + 4.0)), _AXIS_COLOR))
        cmds.append(Text(ox + u + 2.0, oy + h + 13.0, _tick_label(t), _TICK_FONT, _AXIS_COLOR))
    for t in nice_ticks(spec.y_min, spec.y_max, y_target):
        v = _q((spec.y_max - t) / y_span * h)
        cmds.append(Polyline(((ox - 4.0, oy + v), (ox, oy + v)), _AXIS_COLOR))
        cmds.append(Text(ox - 34.0, oy + v + 3.0, _tick_label(t), _TICK_FONT, _AXIS_COLOR))

    if spec.comment:
        cmds.append(Text(ox, oy - 5.0, spec.comment, _COMMENT_FONT, _AXIS_COLOR))

    for curve in spec.curves:
        ast = interpreter.parse_expression(curve.expr)
        points, finite = interpreter.sample_curve(ast, spec.x_min, spec.x_max, curve.samples)
        run: list[tuple[float, float]] = []
        for (wx, wy), ok in zip(points, finite):
            # off-scale samples break the polyline just like non-finite ones
            if ok and spec.y_min <= wy <= spec.y_max:
                u = _q((wx - spec.x_min) / x_span * w)
                v = _q((spec.y_max - wy) / y_span * h)
                run.append((ox + u, oy + v))
            else:
                if len(run) >= 2:
                    cmds.append(Polyline(tuple(run), curve.color))
                run = []
        if len(run) >= 2:
            cmds.append(Polyline(tuple(run), curve.color))
    return cmds
