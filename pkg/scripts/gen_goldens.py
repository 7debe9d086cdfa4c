#!/usr/bin/env python3
"""Regenerate committed goldens: SVG snapshots, reference traces, and their
expected scene hashes.

The traces are applied to a live session while being written, so every
committed event is valid by construction.  Run from the repo root:

    python scripts/gen_goldens.py
"""

from __future__ import annotations

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from udapp.demos import build_demo
from udapp.groups import recompute_frame
from udapp.harness import (
    Session,
    TraceEvent,
    command,
    format_trace,
    mouse_down,
    mouse_move,
    mouse_up,
    render_svg,
)

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
GOLDEN = os.path.join(ROOT, "tests", "golden")
DATA = os.path.join(ROOT, "tests", "data")


def center(scene, eid):
    b = scene.element(eid).params.bounds
    return b.left + b.width / 2, b.top + b.height / 2


def drag(events, session, points):
    (x0, y0), *rest = points
    for ev in [mouse_down(x0, y0), *(mouse_move(x, y) for x, y in rest), mouse_up(*rest[-1])]:
        session.apply(ev)
        events.append(ev)


def emit(events, session, *evs: TraceEvent):
    for ev in evs:
        session.apply(ev)
        events.append(ev)


def calculator_trace() -> tuple[str, list[TraceEvent]]:
    app = build_demo("calculator")
    session = Session(app)
    events: list[TraceEvent] = []
    scene = app.scene

    # park the 7 somewhere else, grabbed by its top edge
    b = scene.element("btn-7").params.bounds
    drag(events, session, [(b.left + 22, b.top), (120, 160), (170, 300)])
    # type 2 + 3 = by clicking buttons where they currently are
    for eid in ("btn-2", "btn-plus", "btn-3", "btn-eq"):
        cx, cy = center(scene, eid)
        emit(events, session, mouse_down(cx, cy), mouse_up(cx, cy))
    emit(
        events,
        session,
        command("hide", target="grp-functions"),
        command("show", target="grp-functions"),
        command("fix", target="btn-1"),
        command("unfix", target="btn-1"),
        command("spread", sample="btn-5", group="grp-numbers"),
        command("rubber-band", bounds=[150, 100, 62, 200]),
    )
    # the marquee above catches the four operator-column buttons as temp-1
    frame = scene.element("temp-1").params.bounds
    drag(events, session, [(frame.left + 2, 170), (frame.left + 12, 180), (frame.left + 22, 190)])
    emit(
        events,
        session,
        command("dissolve", group="temp-1"),
        command(
            "set-params",
            id="display",
            bounds=[12, 12, 200, 40],
            color=[230, 240, 255, 255],
            font={"size": 18, "bold": True},
        ),
        command("restore-default"),
    )
    for key in ("C", "1", "0", "/", "4", "="):
        emit(events, session, command("press-key", key=key))
    return session.hash(), events


def personaldata_trace() -> tuple[str, list[TraceEvent]]:
    app = build_demo("personaldata")
    session = Session(app)
    events: list[TraceEvent] = []
    scene = app.scene

    emit(
        events,
        session,
        command("hide", target="grp-employment"),
        command("hide", target="grp-notes"),
        command("show", target="grp-employment"),
    )
    # move the whole Address block by a frame point in the label/field gap
    frame = recompute_frame(scene, "grp-address")
    gap_x, gap_y = 110.0, frame.top + frame.height / 2
    drag(events, session, [(gap_x, gap_y), (gap_x + 16, gap_y + 4), (gap_x + 30, gap_y + 12)])
    # swap ZIP below Country by dragging its top edge
    zb = scene.element("fld-zip").params.bounds
    drag(
        events,
        session,
        [(zb.left + 40, zb.top), (zb.left + 40, zb.top + 30), (zb.left + 40, zb.top + 57)],
    )
    emit(
        events,
        session,
        command("fix", target="grp-address"),
        command("unfix", target="grp-address"),
        command("rubber-band", bounds=[0, 0, 380, 500]),
        command("dissolve", group="temp-1"),
        command("restore-default"),
        command("hide", target="grp-notes"),
    )
    return session.hash(), events


def functions_trace() -> tuple[str, list[TraceEvent]]:
    app = build_demo("functions")
    session = Session(app)
    events: list[TraceEvent] = []
    scene = app.scene

    emit(
        events,
        session,
        command("add-plot", expr="x^2/10-2", x_range=[-6, 6], y_range=[-3, 3]),
    )
    # drag the sine plot by an inner point
    cx, cy = center(scene, "plot-sin")
    drag(events, session, [(cx, cy), (cx - 10, cy + 60), (cx - 20, cy + 130)])
    # pull the cosine plot's SE corner
    cb = scene.element("plot-cos").params.bounds
    drag(
        events,
        session,
        [(cb.right, cb.bottom), (cb.right + 30, cb.bottom + 20), (cb.right + 55, cb.bottom + 35)],
    )
    emit(
        events,
        session,
        command("remove-plot", id="plot-cos"),
        command("add-plot", expr="ln(x)", x_range=[0.1, 10], y_range=[-3, 3]),
    )
    return session.hash(), events


def main() -> None:
    os.makedirs(GOLDEN, exist_ok=True)
    os.makedirs(DATA, exist_ok=True)

    hashes = {}
    for name, make in (
        ("calculator", calculator_trace),
        ("personaldata", personaldata_trace),
        ("functions", functions_trace),
    ):
        digest, events = make()
        with open(os.path.join(DATA, f"{name}.jsonl"), "w", encoding="utf-8") as f:
            f.write(format_trace(events))
        hashes[name] = {"trace": digest, "baseline": Session(build_demo(name)).hash()}
        print(f"{name}: {len(events)} events, hash {digest}")

    with open(os.path.join(DATA, "expected_hashes.json"), "w", encoding="utf-8") as f:
        json.dump(hashes, f, indent=2, sort_keys=True)
        f.write("\n")

    for name in ("calculator", "functions"):
        with open(os.path.join(GOLDEN, f"{name}.svg"), "wb") as f:
            f.write(render_svg(build_demo(name).scene))
        print(f"golden {name}.svg written")


if __name__ == "__main__":
    main()
