"""Shared fixtures and the independent hit-testing oracle.

The oracle code here deliberately re-derives cover geometry from element
bounds with its own math (hypot distances, half-plane tests) so the tests
never trust the code paths they are checking.
"""

from __future__ import annotations

import math
import random

from hypothesis import strategies as st

from udapp.geometry import Point, RectBounds, SizeRange
from udapp.scene import Control, Graphical, GroupRef, Scene, SceneElement, VisibilityParams

CORNER_R = 6.0
EDGE_HW = 3.0


# --- analytic containment, written independently of udapp.geometry ----------


def oracle_in_circle(px, py, cx, cy, r) -> bool:
    return math.hypot(px - cx, py - cy) <= r


def oracle_in_capsule(px, py, ax, ay, bx, by, hw) -> bool:
    vx, vy = bx - ax, by - ay
    length2 = vx * vx + vy * vy
    if length2 == 0:
        return math.hypot(px - ax, py - ay) <= hw
    t = ((px - ax) * vx + (py - ay) * vy) / length2
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy)) <= hw


def oracle_in_rect(px, py, left, top, w, h) -> bool:
    return left <= px <= left + w and top <= py <= top + h


def oracle_cover_nodes(bounds: RectBounds, style: str):
    """(hit predicate, verb, handle) per node, in cover priority order.

    style: 'graphical' | 'control' | 'group'
    """
    l, t = bounds.left, bounds.top
    r, b = bounds.right, bounds.bottom
    if style == "group":
        return [((lambda px, py: oracle_in_rect(px, py, l, t, bounds.width, bounds.height)), "move", None)]
    corners = [
        ((l, t), "nw"),
        ((r, t), "ne"),
        ((r, b), "se"),
        ((l, b), "sw"),
    ]
    edges = [((l, t, r, t), "n"), ((r, t, r, b), "e"), ((l, b, r, b), "s"), ((l, t, l, b), "w")]
    nodes = [
        (
            (lambda px, py, cx=cx, cy=cy: oracle_in_circle(px, py, cx, cy, CORNER_R)),
            "resize",
            handle,
        )
        for (cx, cy), handle in corners
    ]
    for (ax, ay, bx, by), handle in edges:
        verb = "resize" if style == "graphical" else "move"
        nodes.append(
            (
                (lambda px, py, ax=ax, ay=ay, bx=bx, by=by: oracle_in_capsule(px, py, ax, ay, bx, by, EDGE_HW)),
                verb,
                handle if verb == "resize" else None,
            )
        )
    if style == "graphical":
        nodes.append(
            ((lambda px, py: oracle_in_rect(px, py, l, t, bounds.width, bounds.height)), "move", None)
        )
    return nodes


def oracle_catch(scene: Scene, registered: set[str], p: Point):
    """Brute-force descending-z, in-order cover scan for a left press.

    Returns ("move"|"resize"|"no-catch", element id or None, handle or None).
    """
    for eid in reversed(scene.z_order):
        el = scene.elements[eid]
        if el.hidden:
            continue
        if eid in registered and el.movable:
            if isinstance(el.kind, GroupRef):
                style = "group"
            elif isinstance(el.kind, Control):
                style = "control"
            else:
                style = "graphical"
            for hit, verb, handle in oracle_cover_nodes(el.params.bounds, style):
                if hit(p.x, p.y):
                    return verb, eid, handle
        if isinstance(el.kind, Control) and oracle_in_rect(
            p.x, p.y, el.params.bounds.left, el.params.bounds.top,
            el.params.bounds.width, el.params.bounds.height,
        ):
            return "no-catch", None, None
    return "no-catch", None, None


# --- synthetic scene construction ----------------------------------------------


def make_rect_element(eid: str, left, top, w, h, **kwargs) -> SceneElement:
    return SceneElement(
        id=eid,
        kind=Graphical("rect"),
        params=VisibilityParams(RectBounds(left, top, w, h), (200, 200, 200, 255)),
        size_range=kwargs.pop("size_range", SizeRange(10, 10, 600, 600)),
        **kwargs,
    )


def make_control_element(eid: str, left, top, w, h, **kwargs) -> SceneElement:
    return SceneElement(
        id=eid,
        kind=Control("button", caption=eid, key=kwargs.pop("key", None)),
        params=VisibilityParams(RectBounds(left, top, w, h), (230, 230, 230, 255)),
        size_range=kwargs.pop("size_range", SizeRange(10, 10, 600, 600)),
        **kwargs,
    )


def random_scene(rng: random.Random, n_elements: int = 10) -> Scene:
    """A scene of mixed rects/controls with random flags and one group."""
    scene = Scene(canvas=(400.0, 300.0))
    for i in range(n_elements):
        maker = make_control_element if rng.random() < 0.4 else make_rect_element
        el = maker(
            f"e{i}",
            rng.randint(-20, 340),
            rng.randint(-20, 240),
            rng.randint(12, 120),
            rng.randint(12, 90),
        )
        el.movable = rng.random() > 0.2
        el.hidden = rng.random() < 0.1
        scene.add_element(el)
    if n_elements >= 4 and rng.random() < 0.7:
        members = [f"e{i}" for i in rng.sample(range(n_elements), 3)]
        scene.create_group("grp", title="g", members=members, margin=rng.choice((0.0, 6.0, 8.0)))
    rng.shuffle(scene.z_order)
    return scene


# --- hypothesis strategies --------------------------------------------------------

finite_coord = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
positive_size = st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False)

# Mouse-driven coordinates are integers (or halves under DPI scaling); the
# bitwise exactness properties are stated over this dyadic grid, where
# float adds never round.
dyadic_coord = st.integers(min_value=-(2**25), max_value=2**25).map(lambda k: k / 64.0)
dyadic_size = st.integers(min_value=0, max_value=2**25).map(lambda k: k / 64.0)


@st.composite
def rect_bounds(draw):
    return RectBounds(draw(dyadic_coord), draw(dyadic_coord), draw(dyadic_size), draw(dyadic_size))
