"""Invisible covers: ordered hit areas that make elements movable/resizable.

A cover is a list of nodes laid over an element; each node is one invisible
shape bound to a single action.  Hit resolution takes the first node in
order that contains the point, so the order encodes priority: corners
before edges before interior.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .geometry import (
    Circle,
    ConvexPolygon,
    OPPOSITE,
    Point,
    RectBounds,
    Shape,
    Side,
    Strip,
    hit_node,
)

__all__ = [
    "ActionType",
    "NodeAction",
    "CursorHint",
    "CoverNode",
    "Cover",
    "EMPTY_COVER",
    "CORNER_RADIUS",
    "EDGE_HALFWIDTH",
    "graphical_cover",
    "control_cover",
    "group_cover",
    "hit_cover",
    "hit_node",
]

# Grabbable at typical desktop DPI; tune here, nowhere else.
CORNER_RADIUS = 6.0
EDGE_HALFWIDTH = 3.0


class ActionType(Enum):
    MOVE = "move"
    RESIZE = "resize"
    FRAME_MOVE = "frame-move"


class CursorHint(Enum):
    MOVE = "move"
    SIZE_EW = "size-ew"
    SIZE_NS = "size-ns"
    SIZE_NWSE = "size-nwse"
    SIZE_NESW = "size-nesw"
    DEFAULT = "default"


_RESIZE_CURSOR = {
    Side.N: CursorHint.SIZE_NS,
    Side.S: CursorHint.SIZE_NS,
    Side.E: CursorHint.SIZE_EW,
    Side.W: CursorHint.SIZE_EW,
    Side.NW: CursorHint.SIZE_NWSE,
    Side.SE: CursorHint.SIZE_NWSE,
    Side.NE: CursorHint.SIZE_NESW,
    Side.SW: CursorHint.SIZE_NESW,
}


@dataclass(frozen=True)
class NodeAction:
    type: ActionType
    handle: Side | None = None

    def __post_init__(self):
        if self.type is ActionType.RESIZE and self.handle is None:
            raise ValueError("resize action needs a handle")
        if self.type is not ActionType.RESIZE and self.handle is not None:
            raise ValueError("only resize actions carry a handle")

    @property
    def anchor(self) -> Side:
        """The side held fixed while this handle is dragged."""
        if self.handle is None:
            raise ValueError("no anchor without a handle")
        return OPPOSITE[self.handle]


MOVE = NodeAction(ActionType.MOVE)
FRAME_MOVE = NodeAction(ActionType.FRAME_MOVE)


def resize(handle: Side) -> NodeAction:
    return NodeAction(ActionType.RESIZE, handle)


@dataclass(frozen=True)
class CoverNode:
    shape: Shape
    action: NodeAction
    cursor: CursorHint


@dataclass(frozen=True)
class Cover:
    nodes: tuple[CoverNode, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))


EMPTY_COVER = Cover(())


def _rect_polygon(b: RectBounds) -> ConvexPolygon:
    return ConvexPolygon(
        (
            Point(b.left, b.top),
            Point(b.right, b.top),
            Point(b.right, b.bottom),
            Point(b.left, b.bottom),
        )
    )


def _corner_nodes(b: RectBounds) -> list[CoverNode]:
    corners = [
        (Point(b.left, b.top), Side.NW),
        (Point(b.right, b.top), Side.NE),
        (Point(b.right, b.bottom), Side.SE),
        (Point(b.left, b.bottom), Side.SW),
    ]
    return [
        CoverNode(Circle(c, CORNER_RADIUS), resize(side), _RESIZE_CURSOR[side])
        for c, side in corners
    ]


def _edge_strips(b: RectBounds) -> list[tuple[Strip, Side]]:
    tl = Point(b.left, b.top)
    tr = Point(b.right, b.top)
    br = Point(b.right, b.bottom)
    bl = Point(b.left, b.bottom)
    return [
        (Strip(tl, tr, EDGE_HALFWIDTH), Side.N),
        (Strip(tr, br, EDGE_HALFWIDTH), Side.E),
        (Strip(bl, br, EDGE_HALFWIDTH), Side.S),
        (Strip(tl, bl, EDGE_HALFWIDTH), Side.W),
    ]


def graphical_cover(bounds: RectBounds) -> Cover:
    """Cover for a graphical element: resized by borders, moved by any inner point."""
    nodes = _corner_nodes(bounds)
    nodes += [
        CoverNode(strip, resize(side), _RESIZE_CURSOR[side])
        for strip, side in _edge_strips(bounds)
    ]
    nodes.append(CoverNode(_rect_polygon(bounds), MOVE, CursorHint.MOVE))
    return Cover(tuple(nodes))


def control_cover(bounds: RectBounds) -> Cover:
    """Border-only cover for a control.

    Corners resize, edge strips move; the interior stays uncovered because
    it belongs to the control's own commands.
    """
    nodes = _corner_nodes(bounds)
    nodes += [CoverNode(strip, MOVE, CursorHint.MOVE) for strip, _ in _edge_strips(bounds)]
    return Cover(tuple(nodes))


def group_cover(frame: RectBounds | None) -> Cover:
    """Single interior node moving the whole group; no frame means no cover."""
    if frame is None:
        return EMPTY_COVER
    return Cover((CoverNode(_rect_polygon(frame), FRAME_MOVE, CursorHint.MOVE),))


def hit_cover(p: Point, cover: Cover) -> int | None:
    """Index of the first node containing `p`, or None."""
    for i, node in enumerate(cover.nodes):
        if hit_node(p, node):
            return i
    return None
