"""Element store: identity, z-order, visibility parameters, flags, groups,
rubber-band selection, and display-list production.

The scene is single-writer: serialize all mutations through one owner.
Group frames are derived state; every mutating operation re-syncs them so
the elastic-frame invariant holds after each public call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from . import plotting
from .covers import Cover, EMPTY_COVER, control_cover, graphical_cover, group_cover
from .display import (
    BLACK,
    Color,
    Command,
    FillRect,
    Font,
    Frame,
    OUTLINE,
    Polyline,
    StrokeRect,
    Text,
    check_color,
)
from .errors import (
    CycleError,
    DuplicateIdError,
    GroupMembershipError,
    NoSnapshotError,
    SizeRangeError,
    UnknownIdError,
)
from .geometry import Point, RectBounds, SizeRange, bounding_box, expand

GRAPHICAL_SHAPES = ("rect", "ellipse", "label", "plot-area")
CONTROL_ROLES = ("button", "text-field", "list")

WIDE_RANGE = SizeRange(1, 1, 1_000_000, 1_000_000)


@dataclass(frozen=True)
class VisibilityParams:
    """The per-element user-ownable state: position, size, color, font.

    Stored verbatim; the engine never reinterprets what the user set.
    """

    bounds: RectBounds
    color: Color = (0, 0, 0, 255)
    font: Font = Font()

    def __post_init__(self):
        object.__setattr__(self, "color", check_color(self.color))


@dataclass(frozen=True)
class Graphical:
    shape: str  # one of GRAPHICAL_SHAPES
    text: str = ""
    plot: plotting.PlotSpec | None = None

    def __post_init__(self):
        if self.shape not in GRAPHICAL_SHAPES:
            raise ValueError(f"unknown graphical shape {self.shape!r}")


@dataclass(frozen=True)
class Control:
    """Proxy for a real widget; the interior belongs to its own commands."""

    role: str
    caption: str = ""
    key: str | None = None  # logical key, independent of position/size/view

    def __post_init__(self):
        if self.role not in CONTROL_ROLES:
            raise ValueError(f"unknown control role {self.role!r}")


@dataclass(frozen=True)
class GroupRef:
    group_id: str


Kind = Graphical | Control | GroupRef


@dataclass
class SceneElement:
    id: str
    kind: Kind
    params: VisibilityParams
    size_range: SizeRange = WIDE_RANGE
    movable: bool = True  # everything starts movable
    hidden: bool = False
    group_tag: str | None = None


@dataclass
class ElasticGroup:
    """Member list plus margin; the frame is derived, never authoritative."""

    id: str
    title: str = ""
    members: list[str] = field(default_factory=list)
    margin: float = 8.0
    temporary: bool = False

    def __post_init__(self):
        self.margin = float(self.margin)
        if self.margin < 0:
            raise ValueError("margin must be >= 0")


@dataclass
class SceneState:
    """Deep-copied scene core; used for the default snapshot and persistence."""

    elements: dict[str, SceneElement]
    z_order: list[str]
    groups: dict[str, ElasticGroup]
    canvas: tuple[float, float]
    seq: int


def _copy_state(
    elements: dict[str, SceneElement],
    z_order: list[str],
    groups: dict[str, ElasticGroup],
    canvas: tuple[float, float],
    seq: int,
) -> SceneState:
    return SceneState(
        elements={eid: replace(el) for eid, el in elements.items()},
        z_order=list(z_order),
        groups={gid: replace(g, members=list(g.members)) for gid, g in groups.items()},
        canvas=canvas,
        seq=seq,
    )


class Scene:
    def __init__(self, canvas: tuple[float, float] = (800.0, 600.0)):
        self.elements: dict[str, SceneElement] = {}
        self.z_order: list[str] = []
        self.groups: dict[str, ElasticGroup] = {}
        self.canvas = (float(canvas[0]), float(canvas[1]))
        self.seq = 0
        self.default_snapshot: SceneState | None = None

    # --- element basics ---------------------------------------------------

    def element(self, eid: str) -> SceneElement:
        el = self.elements.get(eid)
        if el is None:
            raise UnknownIdError(f"no element {eid!r}")
        return el

    def next_seq(self) -> int:
        self.seq += 1
        return self.seq

    def add_element(self, el: SceneElement) -> str:
        if el.id in self.elements:
            raise DuplicateIdError(f"element {el.id!r} already exists")
        self.elements[el.id] = el
        self.z_order.append(el.id)
        return el.id

    def remove_element(self, eid: str) -> None:
        self.element(eid)
        if eid in self.groups:
            raise GroupMembershipError(f"{eid!r} is a group; dissolve it instead")
        for g in self.groups.values():
            if eid in g.members:
                raise GroupMembershipError(f"{eid!r} is a member of group {g.id!r}")
        del self.elements[eid]
        self.z_order.remove(eid)

    def set_bounds(self, eid: str, bounds: RectBounds) -> None:
        """Unchecked geometry write used by the mover; syncs frames."""
        el = self.element(eid)
        el.params = replace(el.params, bounds=bounds)
        self.sync_frames()

    # --- flags ------------------------------------------------------------

    def _resolve_unit(self, target: str) -> list[str]:
        """Element ids covered by a command target (group targets recurse)."""
        if target in self.groups:
            return sorted(self.group_unit_ids(target))
        self.element(target)
        return [target]

    def set_movable(self, target: str, flag: bool) -> None:
        for eid in self._resolve_unit(target):
            self.elements[eid].movable = flag

    def set_hidden(self, target: str, flag: bool) -> None:
        for eid in self._resolve_unit(target):
            self.elements[eid].hidden = flag
        self.sync_frames()

    # --- visibility parameters ---------------------------------------------

    def set_visibility_params(self, eid: str, params: VisibilityParams) -> None:
        el = self.element(eid)
        rng = el.size_range
        b = params.bounds
        if not (rng.min_w <= b.width <= rng.max_w and rng.min_h <= b.height <= rng.max_h):
            raise SizeRangeError(f"bounds {b} outside size range of {eid!r}")
        el.params = params  # verbatim, no reinterpretation
        self.sync_frames()

    def spread_sample(self, sample_id: str, target_ids: list[str]) -> None:
        """Copy the sample's size, color, and font; positions stay put."""
        sp = self.element(sample_id).params
        for tid in target_ids:
            el = self.element(tid)
            rng = el.size_range
            w = min(max(sp.bounds.width, rng.min_w), rng.max_w)
            h = min(max(sp.bounds.height, rng.min_h), rng.max_h)
            b = el.params.bounds
            el.params = VisibilityParams(RectBounds(b.left, b.top, w, h), sp.color, sp.font)
        self.sync_frames()

    # --- z-order -----------------------------------------------------------

    def raise_to_top(self, eid: str) -> None:
        self.element(eid)
        self.z_order.remove(eid)
        self.z_order.append(eid)

    def raise_group(self, gid: str) -> None:
        """Raise the whole unit, keeping members' relative order."""
        unit = self.group_unit_ids(gid)
        kept = [e for e in self.z_order if e not in unit]
        lifted = [e for e in self.z_order if e in unit]
        self.z_order = kept + lifted

    # --- groups ------------------------------------------------------------

    def group_unit_ids(self, gid: str) -> set[str]:
        """The group's frame id plus all member ids, recursively."""
        ids = {gid}
        for m in self.groups[gid].members:
            if m in self.groups:
                ids |= self.group_unit_ids(m)
            else:
                ids.add(m)
        return ids

    def create_group(
        self,
        gid: str,
        title: str = "",
        members: list[str] | None = None,
        margin: float = 8.0,
        temporary: bool = False,
        color: Color = (120, 120, 120, 255),
    ) -> str:
        members = list(members or [])
        if gid in self.elements or gid in self.groups:
            raise DuplicateIdError(f"id {gid!r} already exists")
        for m in members:
            self.element(m)
            if m == gid:
                raise CycleError("a group cannot contain itself")
        frame = SceneElement(
            id=gid,
            kind=GroupRef(gid),
            params=VisibilityParams(RectBounds(0, 0, 1, 1), color=color),
            size_range=WIDE_RANGE,
        )
        self.groups[gid] = ElasticGroup(
            id=gid, title=title, members=members, margin=margin, temporary=temporary
        )
        self.elements[gid] = frame
        # the frame sits just below its lowest member so members win catches
        indices = [self.z_order.index(m) for m in members]
        self.z_order.insert(min(indices) if indices else len(self.z_order), gid)
        self.sync_frames()
        return gid

    def dissolve_group(self, gid: str) -> None:
        """Drop the group record and frame; members keep their positions."""
        if gid not in self.groups:
            raise UnknownIdError(f"no group {gid!r}")
        for g in self.groups.values():
            if gid in g.members:
                g.members.remove(gid)
        del self.groups[gid]
        del self.elements[gid]
        self.z_order.remove(gid)
        self.sync_frames()

    def _group_topo(self) -> list[str]:
        order: list[str] = []
        seen: set[str] = set()

        def visit(gid: str) -> None:
            if gid in seen:
                return
            seen.add(gid)
            for m in self.groups[gid].members:
                if m in self.groups:
                    visit(m)
            order.append(gid)

        for gid in self.groups:
            visit(gid)
        return order

    def sync_frames(self) -> None:
        """Re-derive every frame, children first; empty groups go unhittable."""
        for gid in self._group_topo():
            g = self.groups[gid]
            frame = self.elements[gid]
            rects = [
                self.elements[m].params.bounds
                for m in g.members
                if not self.elements[m].hidden
            ]
            if rects:
                frame.hidden = False
                frame.params = replace(
                    frame.params, bounds=expand(bounding_box(rects), g.margin)
                )
            else:
                frame.hidden = True

    # --- rubber-band selection ----------------------------------------------

    def rubber_band_select(self, marquee: RectBounds) -> str | None:
        """Temporary group over every visible element fully inside the marquee.

        Frames are skipped (they follow their members elastically); an empty
        selection creates nothing.
        """
        members = [
            eid
            for eid in self.z_order
            if not self.elements[eid].hidden
            and not isinstance(self.elements[eid].kind, GroupRef)
            and marquee.contains_rect(self.elements[eid].params.bounds)
        ]
        if not members:
            return None
        gid = f"temp-{self.next_seq()}"
        return self.create_group(gid, members=members, temporary=True)

    # --- default snapshot -----------------------------------------------------

    def capture_state(self) -> SceneState:
        return _copy_state(self.elements, self.z_order, self.groups, self.canvas, self.seq)

    def apply_state(self, state: SceneState) -> None:
        copy = _copy_state(state.elements, state.z_order, state.groups, state.canvas, state.seq)
        self.elements = copy.elements
        self.z_order = copy.z_order
        self.groups = copy.groups
        self.canvas = copy.canvas
        self.seq = copy.seq
        self.sync_frames()

    def snapshot_default(self) -> None:
        self.default_snapshot = self.capture_state()

    def restore_default_view(self) -> None:
        if self.default_snapshot is None:
            raise NoSnapshotError("no default snapshot taken")
        self.apply_state(self.default_snapshot)

    # --- covers and display ---------------------------------------------------

    def cover_of(self, el: SceneElement) -> Cover:
        if el.hidden:
            return EMPTY_COVER
        if isinstance(el.kind, GroupRef):
            return group_cover(el.params.bounds)
        if isinstance(el.kind, Control):
            return control_cover(el.params.bounds)
        return graphical_cover(el.params.bounds)

    def build_display_list(self) -> list[Command]:
        cmds: list[Command] = []
        for eid in self.z_order:
            el = self.elements[eid]
            if el.hidden:
                continue
            cmds.extend(_element_commands(self, el))
        return cmds


def _ellipse_points(b: RectBounds, segments: int = 64) -> tuple[tuple[float, float], ...]:
    cx = b.left + b.width / 2
    cy = b.top + b.height / 2
    rx = b.width / 2
    ry = b.height / 2
    return tuple(
        (cx + rx * math.cos(2 * math.pi * i / segments), cy + ry * math.sin(2 * math.pi * i / segments))
        for i in range(segments + 1)
    )


def _element_commands(scene: Scene, el: SceneElement) -> list[Command]:
    b = el.params.bounds
    c = el.params.color
    f = el.params.font
    k = el.kind
    if isinstance(k, GroupRef):
        return [Frame(b, scene.groups[k.group_id].title, c)]
    if isinstance(k, Control):
        baseline = b.top + b.height / 2 + f.size * 0.35
        return [FillRect(b, c), StrokeRect(b, OUTLINE), Text(b.left + 6.0, baseline, k.caption, f, BLACK)]
    if k.shape == "rect":
        return [FillRect(b, c), StrokeRect(b, OUTLINE)]
    if k.shape == "ellipse":
        return [Polyline(_ellipse_points(b), c)]
    if k.shape == "label":
        return [Text(b.left, b.top + f.size, k.text, f, c)]
    # plot-area
    cmds: list[Command] = [FillRect(b, c)]
    if k.plot is not None:
        cmds.extend(plotting.plot_display(b, k.plot))
    else:
        cmds.append(StrokeRect(b, OUTLINE))
    return cmds
