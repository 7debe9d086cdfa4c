"""The supervising mover: registration plus the Catch/Move/Release machine.

Three mouse events drive everything: press catches an element through its
cover, move drags or resizes it, release lets go.  One mover per scene,
one serialized event stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import groups
from .covers import ActionType, CursorHint, NodeAction, hit_cover
from .errors import StateError, UnknownIdError
from .geometry import Point, RectBounds, Side, clamp_resize
from .scene import Control, GroupRef, Scene


class CatchKind(Enum):
    NO_CATCH = "no-catch"
    MOVE = "move"
    RESIZE = "resize"
    CONTEXT = "context"  # right button only


@dataclass(frozen=True)
class CatchResult:
    kind: CatchKind
    element_id: str | None = None
    handle: Side | None = None


@dataclass(frozen=True)
class ReleaseInfo:
    was_caught: bool
    element_id: str | None = None
    forced: bool = False  # release triggered by unregistering mid-drag


NO_CATCH = CatchResult(CatchKind.NO_CATCH)

_DRAGS_LEFT = {Side.W, Side.NW, Side.SW}
_DRAGS_RIGHT = {Side.E, Side.NE, Side.SE}
_DRAGS_TOP = {Side.N, Side.NW, Side.NE}
_DRAGS_BOTTOM = {Side.S, Side.SW, Side.SE}


@dataclass
class Caught:
    """Mover state while an element is held; absent state means Idle."""

    element_id: str
    node_index: int
    action: NodeAction
    grab_offset: tuple[float, float]
    last_point: Point
    start_bounds: RectBounds


class Mover:
    def __init__(self, scene: Scene):
        self.scene = scene
        self.registered: set[str] = set()
        self.state: Caught | None = None

    # --- registration -------------------------------------------------------

    def register(self, eid: str) -> None:
        self.scene.element(eid)
        self.registered.add(eid)

    def unregister(self, eid: str) -> ReleaseInfo | None:
        """Drop an element; a drag in progress on it is force-released."""
        self.scene.element(eid)
        info = None
        if self.state is not None and self.state.element_id == eid:
            released = self.release()
            info = ReleaseInfo(True, released.element_id, forced=True)
        self.registered.discard(eid)
        return info

    def sync_registration(self) -> None:
        """Register every live element; drop stale ids (after load/restore)."""
        self.registered = set(self.scene.elements)

    # --- the three events ----------------------------------------------------

    def catch(self, p: Point, button: str = "left") -> CatchResult:
        if self.state is not None:
            raise StateError("catch while already caught")
        if button == "right":
            return self._context_scan(p)
        for eid in reversed(self.scene.z_order):
            el = self.scene.elements[eid]
            if el.hidden:
                continue
            if eid in self.registered and el.movable:
                cover = self.scene.cover_of(el)
                idx = hit_cover(p, cover)
                if idx is not None:
                    return self._grab(eid, idx, cover.nodes[idx].action, p)
            # control interiors swallow the press: the click belongs to the
            # control's own commands, never to elements beneath it
            if isinstance(el.kind, Control) and el.params.bounds.contains(p):
                return NO_CATCH
        return NO_CATCH

    def _context_scan(self, p: Point) -> CatchResult:
        # fixed elements stay reachable: the menu is how they get unfixed
        for eid in reversed(self.scene.z_order):
            el = self.scene.elements[eid]
            if el.hidden:
                continue
            if hit_cover(p, self.scene.cover_of(el)) is not None:
                return CatchResult(CatchKind.CONTEXT, eid)
            if isinstance(el.kind, Control) and el.params.bounds.contains(p):
                return CatchResult(CatchKind.CONTEXT, eid)
        return NO_CATCH

    def _grab(self, eid: str, idx: int, action: NodeAction, p: Point) -> CatchResult:
        el = self.scene.elements[eid]
        if action.type is ActionType.FRAME_MOVE:
            self.scene.raise_group(el.kind.group_id)
        else:
            self.scene.raise_to_top(eid)
        b = el.params.bounds
        self.state = Caught(
            element_id=eid,
            node_index=idx,
            action=action,
            grab_offset=(p.x - b.left, p.y - b.top),
            last_point=p,
            start_bounds=b,
        )
        if action.type is ActionType.RESIZE:
            return CatchResult(CatchKind.RESIZE, eid, action.handle)
        return CatchResult(CatchKind.MOVE, eid)

    def move_to(self, p: Point) -> bool:
        """Drag to `p`; returns True iff any geometry changed (redraw cue)."""
        st = self.state
        if st is None:
            return False
        el = self.scene.elements[st.element_id]
        changed = False
        if st.action.type is ActionType.MOVE:
            new = RectBounds(
                p.x - st.grab_offset[0],
                p.y - st.grab_offset[1],
                el.params.bounds.width,
                el.params.bounds.height,
            )
            changed = new != el.params.bounds
            if changed:
                self.scene.set_bounds(st.element_id, new)
        elif st.action.type is ActionType.FRAME_MOVE:
            dx = p.x - st.last_point.x
            dy = p.y - st.last_point.y
            changed = dx != 0 or dy != 0
            if changed:
                groups.move_group(self.scene, el.kind.group_id, dx, dy)
        else:
            new = self._resize_to(st, p)
            changed = new != el.params.bounds
            if changed:
                self.scene.set_bounds(st.element_id, new)
        st.last_point = p
        return changed

    def _resize_to(self, st: Caught, p: Point) -> RectBounds:
        handle = st.action.handle
        base = st.start_bounds
        left, right = base.left, base.right
        top, bottom = base.top, base.bottom
        if handle in _DRAGS_LEFT:
            left = p.x
        elif handle in _DRAGS_RIGHT:
            right = p.x
        if handle in _DRAGS_TOP:
            top = p.y
        elif handle in _DRAGS_BOTTOM:
            bottom = p.y
        # crossing the anchored side proposes zero size; clamp lifts it back
        if right < left:
            left = right = right if handle in _DRAGS_LEFT else left
        if bottom < top:
            top = bottom = bottom if handle in _DRAGS_TOP else top
        proposed = RectBounds(left, top, right - left, bottom - top)
        el = self.scene.elements[st.element_id]
        return clamp_resize(proposed, el.size_range, st.action.anchor)

    def release(self) -> ReleaseInfo:
        if self.state is None:
            return ReleaseInfo(False)
        eid = self.state.element_id
        self.state = None
        self.scene.sync_frames()
        return ReleaseInfo(True, eid)

    # --- affordances -----------------------------------------------------------

    def cursor_hint(self, p: Point) -> CursorHint:
        """Hint of the node a left catch would select at `p`; never mutates."""
        for eid in reversed(self.scene.z_order):
            el = self.scene.elements[eid]
            if el.hidden:
                continue
            if eid in self.registered and el.movable:
                cover = self.scene.cover_of(el)
                idx = hit_cover(p, cover)
                if idx is not None:
                    return cover.nodes[idx].cursor
            if isinstance(el.kind, Control) and el.params.bounds.contains(p):
                return CursorHint.DEFAULT
        return CursorHint.DEFAULT
