"""Save and restore of the full user-arranged state.

Format `udapp-layout/1`: UTF-8 JSON, keys sorted, shortest round-trip
number formatting, newline-terminated; byte-deterministic for equal
scenes.  Loading is all-or-nothing: the scene is untouched unless the
whole document validates.
"""

from __future__ import annotations

import json
import os
import tempfile

from . import interpreter
from .display import Font
from .errors import ParseError, ReferentialError, UdappError, VersionError
from .geometry import RectBounds, SizeRange
from .plotting import Curve, PlotSpec
from .scene import (
    Control,
    ElasticGroup,
    Graphical,
    GroupRef,
    Scene,
    SceneElement,
    SceneState,
    VisibilityParams,
)

FORMAT_TAG = "udapp-layout/1"

__all__ = ["FORMAT_TAG", "save_layout", "load_layout", "write_layout", "read_layout"]


# --- serialization -----------------------------------------------------------


def _rect_list(b: RectBounds) -> list[float]:
    return [b.left, b.top, b.width, b.height]


def _kind_dict(kind) -> dict:
    if isinstance(kind, Graphical):
        plot = None
        if kind.plot is not None:
            plot = {
                "x_min": kind.plot.x_min,
                "x_max": kind.plot.x_max,
                "y_min": kind.plot.y_min,
                "y_max": kind.plot.y_max,
                "comment": kind.plot.comment,
                "curves": [
                    {"expr": c.expr, "color": list(c.color), "samples": c.samples}
                    for c in kind.plot.curves
                ],
            }
        return {"type": "graphical", "shape": kind.shape, "text": kind.text, "plot": plot}
    if isinstance(kind, Control):
        return {"type": "control", "role": kind.role, "caption": kind.caption, "key": kind.key}
    return {"type": "group", "group": kind.group_id}


def _element_dict(el: SceneElement) -> dict:
    return {
        "id": el.id,
        "kind": _kind_dict(el.kind),
        "bounds": _rect_list(el.params.bounds),
        "color": list(el.params.color),
        "font": {
            "family": el.params.font.family,
            "size": el.params.font.size,
            "bold": el.params.font.bold,
            "italic": el.params.font.italic,
        },
        "size_range": [el.size_range.min_w, el.size_range.min_h, el.size_range.max_w, el.size_range.max_h],
        "movable": el.movable,
        "hidden": el.hidden,
        "group_tag": el.group_tag,
    }


def _state_dict(state: SceneState) -> dict:
    return {
        "canvas": list(state.canvas),
        "elements": [_element_dict(state.elements[eid]) for eid in sorted(state.elements)],
        "groups": [
            {
                "id": g.id,
                "title": g.title,
                "members": list(g.members),
                "margin": g.margin,
                "temporary": g.temporary,
            }
            for g in (state.groups[gid] for gid in sorted(state.groups))
        ],
        "seq": state.seq,
        "z_order": list(state.z_order),
    }


def save_layout(scene: Scene, app: dict | None = None) -> bytes:
    """Canonical document bytes for the scene plus optional app side channel."""
    doc = {
        "format": FORMAT_TAG,
        "scene": _state_dict(scene.capture_state()),
        "default": _state_dict(scene.default_snapshot) if scene.default_snapshot else None,
        "app": app or {},
    }
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return (text + "\n").encode("utf-8")


# --- validation and loading ---------------------------------------------------


def _bad(reason: str) -> ParseError:
    return ParseError(0, reason)


def _num(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _bad(f"{what} must be a number, got {v!r}")
    return float(v)


def _expect(cond: bool, reason: str) -> None:
    if not cond:
        raise _bad(reason)


def _rect_from(v, what: str) -> RectBounds:
    _expect(isinstance(v, list) and len(v) == 4, f"{what} must be [left, top, width, height]")
    try:
        return RectBounds(*(_num(x, what) for x in v))
    except ValueError as e:
        raise _bad(f"{what}: {e}") from e


def _color_from(v, what: str) -> tuple[int, int, int, int]:
    _expect(
        isinstance(v, list) and len(v) == 4 and all(isinstance(c, int) and 0 <= c <= 255 for c in v),
        f"{what} must be 4 ints in 0..255",
    )
    return tuple(v)


def _kind_from(v: dict, what: str):
    _expect(isinstance(v, dict), f"{what} kind must be an object")
    t = v.get("type")
    try:
        if t == "graphical":
            plot = v.get("plot")
            spec = None
            if plot is not None:
                _expect(isinstance(plot, dict), f"{what} plot must be an object")
                curves = []
                for c in plot.get("curves", []):
                    expr = c.get("expr")
                    _expect(isinstance(expr, str), f"{what} curve expr must be a string")
                    try:
                        interpreter.parse_expression(expr)
                    except UdappError as e:
                        raise _bad(f"{what} curve expression {expr!r}: {e}") from e
                    samples = c.get("samples", 256)
                    _expect(isinstance(samples, int), f"{what} curve samples must be an int")
                    curves.append(Curve(expr, _color_from(c.get("color"), f"{what} curve color"), samples))
                spec = PlotSpec(
                    _num(plot.get("x_min"), f"{what} x_min"),
                    _num(plot.get("x_max"), f"{what} x_max"),
                    _num(plot.get("y_min"), f"{what} y_min"),
                    _num(plot.get("y_max"), f"{what} y_max"),
                    tuple(curves),
                    str(plot.get("comment", "")),
                )
            return Graphical(str(v.get("shape", "")), str(v.get("text", "")), spec)
        if t == "control":
            key = v.get("key")
            _expect(key is None or isinstance(key, str), f"{what} key must be a string or null")
            return Control(str(v.get("role", "")), str(v.get("caption", "")), key)
        if t == "group":
            gid = v.get("group")
            _expect(isinstance(gid, str), f"{what} group id must be a string")
            return GroupRef(gid)
    except (ValueError, UdappError) as e:
        if isinstance(e, ParseError):
            raise
        raise _bad(f"{what}: {e}") from e
    raise _bad(f"{what}: unknown kind type {t!r}")


def _element_from(v: dict) -> SceneElement:
    _expect(isinstance(v, dict), "element record must be an object")
    eid = v.get("id")
    _expect(isinstance(eid, str) and eid, "element id must be a non-empty string")
    what = f"element {eid!r}"
    font = v.get("font", {})
    _expect(isinstance(font, dict), f"{what} font must be an object")
    sr = v.get("size_range")
    _expect(isinstance(sr, list) and len(sr) == 4, f"{what} size_range must be 4 numbers")
    tag = v.get("group_tag")
    _expect(tag is None or isinstance(tag, str), f"{what} group_tag must be a string or null")
    try:
        params = VisibilityParams(
            _rect_from(v.get("bounds"), f"{what} bounds"),
            _color_from(v.get("color"), f"{what} color"),
            Font(
                str(font.get("family", "sans-serif")),
                _num(font.get("size", 12.0), f"{what} font size"),
                bool(font.get("bold", False)),
                bool(font.get("italic", False)),
            ),
        )
        size_range = SizeRange(*(_num(x, f"{what} size_range") for x in sr))
    except ValueError as e:
        raise _bad(f"{what}: {e}") from e
    return SceneElement(
        id=eid,
        kind=_kind_from(v.get("kind"), what),
        params=params,
        size_range=size_range,
        movable=bool(v.get("movable", True)),
        hidden=bool(v.get("hidden", False)),
        group_tag=tag,
    )


def _state_from(v, what: str) -> SceneState:
    _expect(isinstance(v, dict), f"{what} must be an object")
    canvas = v.get("canvas")
    _expect(isinstance(canvas, list) and len(canvas) == 2, f"{what} canvas must be [w, h]")
    elements: dict[str, SceneElement] = {}
    for rec in v.get("elements", []):
        el = _element_from(rec)
        _expect(el.id not in elements, f"{what}: duplicate element id {el.id!r}")
        elements[el.id] = el
    groups: dict[str, ElasticGroup] = {}
    for rec in v.get("groups", []):
        _expect(isinstance(rec, dict), f"{what} group record must be an object")
        gid = rec.get("id")
        _expect(isinstance(gid, str) and gid, f"{what} group id must be a non-empty string")
        members = rec.get("members", [])
        _expect(
            isinstance(members, list) and all(isinstance(m, str) for m in members),
            f"group {gid!r} members must be strings",
        )
        try:
            groups[gid] = ElasticGroup(
                id=gid,
                title=str(rec.get("title", "")),
                members=list(members),
                margin=_num(rec.get("margin", 8.0), f"group {gid!r} margin"),
                temporary=bool(rec.get("temporary", False)),
            )
        except ValueError as e:
            raise _bad(f"group {gid!r}: {e}") from e
    z_order = v.get("z_order")
    _expect(
        isinstance(z_order, list) and all(isinstance(x, str) for x in z_order),
        f"{what} z_order must be a list of ids",
    )
    seq = v.get("seq", 0)
    _expect(isinstance(seq, int) and seq >= 0, f"{what} seq must be a non-negative int")

    _check_referential(elements, groups, z_order, what)
    return SceneState(
        elements=elements,
        z_order=list(z_order),
        groups=groups,
        canvas=(_num(canvas[0], "canvas"), _num(canvas[1], "canvas")),
        seq=seq,
    )


def _check_referential(elements, groups, z_order, what: str) -> None:
    if sorted(z_order) != sorted(elements):
        raise ReferentialError(f"{what}: z_order is not a permutation of element ids")
    for g in groups.values():
        for m in g.members:
            if m not in elements:
                raise ReferentialError(f"{what}: group {g.id!r} references unknown member {m!r}")
        el = elements.get(g.id)
        if el is None or not isinstance(el.kind, GroupRef) or el.kind.group_id != g.id:
            raise ReferentialError(f"{what}: group {g.id!r} has no matching frame element")
    for el in elements.values():
        if isinstance(el.kind, GroupRef) and el.kind.group_id not in groups:
            raise ReferentialError(f"{what}: frame element {el.id!r} references unknown group")
    # member graph must stay acyclic
    seen: set[str] = set()
    done: set[str] = set()

    def visit(gid: str) -> None:
        if gid in done:
            return
        if gid in seen:
            raise ReferentialError(f"{what}: group membership cycle at {gid!r}")
        seen.add(gid)
        for m in groups[gid].members:
            if m in groups:
                visit(m)
        done.add(gid)

    for gid in groups:
        visit(gid)


def load_layout(data: bytes, scene: Scene) -> dict:
    """Apply a saved document to the scene; returns the app side channel.

    Validation happens before any mutation: on error the scene is unchanged.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise ParseError(e.start, "document is not valid UTF-8") from e
    except json.JSONDecodeError as e:
        raise ParseError(e.pos, e.msg) from e
    _expect(isinstance(doc, dict), "document root must be an object")
    tag = doc.get("format")
    if tag != FORMAT_TAG:
        raise VersionError(f"unsupported format {tag!r}, expected {FORMAT_TAG!r}")
    state = _state_from(doc.get("scene"), "scene")
    default = doc.get("default")
    default_state = _state_from(default, "default") if default is not None else None
    app = doc.get("app", {})
    _expect(isinstance(app, dict), "app section must be an object")

    scene.apply_state(state)
    scene.default_snapshot = default_state
    return app


# --- file helpers --------------------------------------------------------------


def write_layout(path: str, scene: Scene, app: dict | None = None) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    data = save_layout(scene, app)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".udapp-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_layout(path: str, scene: Scene) -> dict:
    with open(path, "rb") as f:
        return load_layout(f.read(), scene)
