"""Plane geometry shared by covers, elastic frames, and plotting.

Coordinates are double-precision logical pixels with y growing downward
(screen convention).  Containment tests are boundary-inclusive so that the
visual edge of a shape is grabbable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import EmptyCollectionError


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not _finite(self.x, self.y):
            raise ValueError("point coordinates must be finite")


@dataclass(frozen=True)
class RectBounds:
    left: float
    top: float
    width: float
    height: float

    def __post_init__(self):
        for name in ("left", "top", "width", "height"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not _finite(self.left, self.top, self.width, self.height):
            raise ValueError("rect fields must be finite")
        if self.width < 0 or self.height < 0:
            raise ValueError("rect width/height must be non-negative")

    @property
    def right(self) -> float:
        return self.left + self.width

    @property
    def bottom(self) -> float:
        return self.top + self.height

    def contains(self, p: Point) -> bool:
        """Boundary-inclusive point containment."""
        return self.left <= p.x <= self.right and self.top <= p.y <= self.bottom

    def contains_rect(self, other: "RectBounds") -> bool:
        return (
            other.left >= self.left
            and other.top >= self.top
            and other.right <= self.right
            and other.bottom <= self.bottom
        )


@dataclass(frozen=True)
class SizeRange:
    """Per-element resizing range; 0 < min <= max on both axes."""

    min_w: float
    min_h: float
    max_w: float
    max_h: float

    def __post_init__(self):
        for name in ("min_w", "min_h", "max_w", "max_h"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not _finite(self.min_w, self.min_h, self.max_w, self.max_h):
            raise ValueError("size range must be finite")
        if not (0 < self.min_w <= self.max_w and 0 < self.min_h <= self.max_h):
            raise ValueError("size range requires 0 < min <= max")


class Side(Enum):
    """Edge or corner of a rectangle, named compass-style (y grows down)."""

    N = "n"
    NE = "ne"
    E = "e"
    SE = "se"
    S = "s"
    SW = "sw"
    W = "w"
    NW = "nw"


OPPOSITE = {
    Side.N: Side.S,
    Side.S: Side.N,
    Side.E: Side.W,
    Side.W: Side.E,
    Side.NE: Side.SW,
    Side.SW: Side.NE,
    Side.NW: Side.SE,
    Side.SE: Side.NW,
}

_PINS_LEFT = {Side.W, Side.NW, Side.SW}
_PINS_RIGHT = {Side.E, Side.NE, Side.SE}
_PINS_TOP = {Side.N, Side.NW, Side.NE}
_PINS_BOTTOM = {Side.S, Side.SW, Side.SE}


# --- cover node shapes -------------------------------------------------------


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError("circle radius must be finite and positive")


@dataclass(frozen=True)
class Strip:
    """Capsule: the set of points within `halfwidth` of segment a-b."""

    a: Point
    b: Point
    halfwidth: float

    def __post_init__(self):
        object.__setattr__(self, "halfwidth", float(self.halfwidth))
        if not (math.isfinite(self.halfwidth) and self.halfwidth > 0):
            raise ValueError("strip halfwidth must be finite and positive")


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if not _is_convex(self.vertices):
            raise ValueError("polygon must be convex")


def _is_convex(vs: Sequence[Point]) -> bool:
    sign = 0
    n = len(vs)
    for i in range(n):
        a, b, c = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
        cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
        if cross != 0:
            s = 1 if cross > 0 else -1
            if sign == 0:
                sign = s
            elif s != sign:
                return False
    return sign != 0


Shape = Circle | Strip | ConvexPolygon


def hit_node(p: Point, node) -> bool:
    """Boundary-inclusive containment of `p` in a cover node's shape.

    Accepts either a shape directly or anything carrying a `.shape` field
    (a cover node).
    """
    shape = getattr(node, "shape", node)
    if isinstance(shape, Circle):
        dx = p.x - shape.center.x
        dy = p.y - shape.center.y
        return dx * dx + dy * dy <= shape.radius * shape.radius
    if isinstance(shape, Strip):
        ax, ay = shape.a.x, shape.a.y
        vx, vy = shape.b.x - ax, shape.b.y - ay
        qx, qy = p.x - ax, p.y - ay
        denom = vx * vx + vy * vy
        t = 0.0 if denom == 0 else max(0.0, min(1.0, (qx * vx + qy * vy) / denom))
        dx = qx - t * vx
        dy = qy - t * vy
        return dx * dx + dy * dy <= shape.halfwidth * shape.halfwidth
    if isinstance(shape, ConvexPolygon):
        return _polygon_contains(shape.vertices, p)
    raise TypeError(f"not a cover shape: {shape!r}")


def _polygon_contains(vs: Sequence[Point], p: Point) -> bool:
    # Orientation-agnostic: p must sit on the interior side (or boundary)
    # of every edge.
    n = len(vs)
    area2 = sum(vs[i].x * vs[(i + 1) % n].y - vs[(i + 1) % n].x * vs[i].y for i in range(n))
    sign = 1.0 if area2 > 0 else -1.0
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
        if cross * sign < 0:
            return False
    return True


# --- rectangle operations ----------------------------------------------------


def bounding_box(rects: Iterable[RectBounds]) -> RectBounds:
    """Smallest rect containing every input rect."""
    rects = list(rects)
    if not rects:
        raise EmptyCollectionError("bounding_box of an empty collection")
    left = min(r.left for r in rects)
    top = min(r.top for r in rects)
    right = max(r.right for r in rects)
    bottom = max(r.bottom for r in rects)
    return RectBounds(left, top, right - left, bottom - top)


def translate(r: RectBounds, dx: float, dy: float) -> RectBounds:
    """Shift the origin by exactly (dx, dy); size is carried over bitwise."""
    if not _finite(dx, dy):
        raise ValueError("translation deltas must be finite")
    return RectBounds(r.left + dx, r.top + dy, r.width, r.height)


def expand(r: RectBounds, margin: float) -> RectBounds:
    """Grow the rect by `margin` on all four sides."""
    return RectBounds(r.left - margin, r.top - margin, r.width + 2 * margin, r.height + 2 * margin)


def clamp_resize(proposed: RectBounds, rng: SizeRange, anchor: Side) -> RectBounds:
    """Clip a proposed resize into `rng` without moving the anchored side.

    `anchor` names the edge or corner held fixed during the resize; the
    clamped rect keeps that side exactly where `proposed` put it.
    """
    w = min(max(proposed.width, rng.min_w), rng.max_w)
    h = min(max(proposed.height, rng.min_h), rng.max_h)
    left = proposed.right - w if anchor in _PINS_RIGHT else proposed.left
    top = proposed.bottom - h if anchor in _PINS_BOTTOM else proposed.top
    return RectBounds(left, top, w, h)
