"""Elastic groups: frames derived from member bounds plus a margin.

The frame always follows the members, never constrains them; groups nest
but never cycle.  Group records live on the scene; this module is the
public surface for manipulating them.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .errors import CycleError, UnknownGroupError, UnknownIdError
from .geometry import RectBounds, translate
from .scene import ElasticGroup

if TYPE_CHECKING:
    from .scene import Scene

__all__ = [
    "ElasticGroup",
    "create_group",
    "dissolve_group",
    "recompute_frame",
    "move_group",
    "add_member",
    "remove_member",
]


def _group(scene: "Scene", gid: str) -> ElasticGroup:
    g = scene.groups.get(gid)
    if g is None:
        raise UnknownGroupError(f"no group {gid!r}")
    return g


def create_group(scene: "Scene", gid: str, **kwargs) -> str:
    return scene.create_group(gid, **kwargs)


def dissolve_group(scene: "Scene", gid: str) -> None:
    _group(scene, gid)
    scene.dissolve_group(gid)


def recompute_frame(scene: "Scene", gid: str) -> RectBounds | None:
    """Padded bbox of visible members; None when all members are hidden."""
    _group(scene, gid)
    scene.sync_frames()
    frame = scene.elements[gid]
    return None if frame.hidden else frame.params.bounds


def move_group(scene: "Scene", gid: str, dx: float, dy: float) -> None:
    """Translate every member (recursively) and the frame by exactly (dx, dy).

    Callers must not move fixed groups; the mover refuses to catch them.
    """
    _group(scene, gid)
    for eid in scene.group_unit_ids(gid):
        el = scene.elements[eid]
        el.params = el.params.__class__(
            translate(el.params.bounds, dx, dy), el.params.color, el.params.font
        )
    scene.sync_frames()


def _reaches(scene: "Scene", start: str, needle: str) -> bool:
    if start == needle:
        return True
    if start not in scene.groups:
        return False
    return any(_reaches(scene, m, needle) for m in scene.groups[start].members)


def add_member(scene: "Scene", gid: str, member_id: str) -> None:
    g = _group(scene, gid)
    scene.element(member_id)
    if _reaches(scene, member_id, gid):
        raise CycleError(f"adding {member_id!r} to {gid!r} would create a cycle")
    if member_id not in g.members:
        g.members.append(member_id)
    scene.sync_frames()


def remove_member(scene: "Scene", gid: str, member_id: str) -> None:
    g = _group(scene, gid)
    if member_id not in g.members:
        raise UnknownIdError(f"{member_id!r} is not a member of {gid!r}")
    g.members.remove(member_id)
    scene.sync_frames()
