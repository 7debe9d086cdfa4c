"""Randomized self-checks behind `udapp verify`.

Generates valid event streams against a live demo, checking the engine
invariants after every event, then cross-checks determinism and the
persistence round trip.  All randomness is seeded, so failures reproduce.
"""

from __future__ import annotations

import random

from . import persistence
from .demos import DemoApp, LOGICAL_KEYS, build_demo
from .errors import UdappError
from .geometry import Point, bounding_box, expand, hit_node
from .harness import Session, TraceEvent, command, mouse_down, mouse_move, mouse_up, replay
from .mover import CatchKind
from .scene import Control, GroupRef, Scene

_EXPRS = ("sin(x)", "x^2/10", "1/x", "exp(x/3)", "cos(2*x)+x/5")


def check_scene_invariants(scene: Scene) -> list[str]:
    """Structural invariants that must hold after every public operation."""
    problems: list[str] = []
    if sorted(scene.z_order) != sorted(scene.elements):
        problems.append("z-order is not a permutation of element ids")
    for el in scene.elements.values():
        if isinstance(el.kind, GroupRef) and el.kind.group_id not in scene.groups:
            problems.append(f"frame {el.id!r} references a missing group")
    for g in scene.groups.values():
        frame = scene.elements.get(g.id)
        if frame is None:
            problems.append(f"group {g.id!r} has no frame element")
            continue
        visible = [
            scene.elements[m].params.bounds
            for m in g.members
            if m in scene.elements and not scene.elements[m].hidden
        ]
        missing = [m for m in g.members if m not in scene.elements]
        if missing:
            problems.append(f"group {g.id!r} references missing members {missing}")
        if visible:
            expected = expand(bounding_box(visible), g.margin)
            if frame.hidden:
                problems.append(f"group {g.id!r} has visible members but a hidden frame")
            elif frame.params.bounds != expected:
                problems.append(
                    f"group {g.id!r} frame {frame.params.bounds} != padded bbox {expected}"
                )
        elif not frame.hidden:
            problems.append(f"group {g.id!r} has no visible members but a visible frame")
    return problems


def reference_catch(app: DemoApp, p: Point) -> tuple[str, str | None]:
    """Brute-force descending-z, in-order cover scan (left button)."""
    scene = app.scene
    for eid in reversed(scene.z_order):
        el = scene.elements[eid]
        if el.hidden:
            continue
        if eid in app.mover.registered and el.movable:
            for node in scene.cover_of(el).nodes:
                if hit_node(p, node):
                    kind = "resize" if node.action.handle is not None else "move"
                    return kind, eid
        if isinstance(el.kind, Control) and el.params.bounds.contains(p):
            return "no-catch", None
    return "no-catch", None


def _point_pool(scene: Scene, rng: random.Random) -> Point:
    """Half the points aim at element corners/edges/centers, half roam."""
    if scene.elements and rng.random() < 0.5:
        el = scene.elements[rng.choice(sorted(scene.elements))]
        b = el.params.bounds
        anchors = [
            (b.left, b.top),
            (b.right, b.bottom),
            (b.left + b.width / 2, b.top),
            (b.left + b.width / 2, b.top + b.height / 2),
            (b.right, b.top + b.height / 2),
        ]
        x, y = rng.choice(anchors)
        return Point(round(x + rng.randint(-4, 4)), round(y + rng.randint(-4, 4)))
    w, h = scene.canvas
    return Point(rng.randint(-40, int(w) + 40), rng.randint(-40, int(h) + 40))


def random_session_events(
    app: DemoApp,
    rng: random.Random,
    steps: int,
    session: Session | None = None,
    after_event=None,
) -> list[TraceEvent]:
    """Generate and apply a valid mixed event stream; returns what was applied."""
    if session is None:
        session = Session(app)
    events: list[TraceEvent] = []

    def emit(ev: TraceEvent) -> None:
        session.apply(ev)
        events.append(ev)
        if after_event is not None:
            after_event(ev)

    scene = app.scene
    for _ in range(steps):
        roll = rng.random()
        if roll < 0.45:  # a full drag
            p = _point_pool(scene, rng)
            emit(mouse_down(p.x, p.y))
            for _ in range(rng.randint(1, 3)):
                emit(mouse_move(p.x + rng.randint(-60, 60), p.y + rng.randint(-60, 60)))
            q = _point_pool(scene, rng)
            emit(mouse_up(q.x, q.y))
        elif roll < 0.60:
            target = rng.choice(sorted(set(scene.elements) | set(scene.groups)))
            emit(command(rng.choice(("hide", "show")), target=target))
        elif roll < 0.70:
            target = rng.choice(sorted(set(scene.elements) | set(scene.groups)))
            emit(command(rng.choice(("fix", "unfix")), target=target))
        elif roll < 0.78:
            plain = sorted(e for e in scene.elements if e not in scene.groups)
            if plain:
                sample = rng.choice(plain)
                targets = rng.sample(plain, k=min(len(plain), rng.randint(1, 3)))
                emit(command("spread", sample=sample, targets=targets))
        elif roll < 0.86:
            w, h = scene.canvas
            left, top = rng.randint(-20, int(w)), rng.randint(-20, int(h))
            emit(
                command(
                    "rubber-band",
                    bounds=[left, top, rng.randint(10, int(w)), rng.randint(10, int(h))],
                )
            )
        elif roll < 0.90:
            temps = sorted(g.id for g in scene.groups.values() if g.temporary)
            if temps:
                emit(command("dissolve", group=rng.choice(temps)))
        elif roll < 0.94:
            emit(command("restore-default"))
        else:
            if app.name == "calculator":
                emit(command("press-key", key=rng.choice(sorted(LOGICAL_KEYS))))
            elif app.name == "functions":
                plots = sorted(
                    e for e, el in scene.elements.items()
                    if getattr(el.kind, "shape", None) == "plot-area"
                )
                if rng.random() < 0.5 or not plots:
                    emit(command("add-plot", expr=rng.choice(_EXPRS)))
                else:
                    emit(command("remove-plot", id=rng.choice(plots)))
            else:
                plain = sorted(e for e in scene.elements if e not in scene.groups)
                eid = rng.choice(plain)
                el = scene.elements[eid]
                rngsz = el.size_range
                b = el.params.bounds
                w = rng.randint(int(rngsz.min_w), int(min(rngsz.max_w, rngsz.min_w + 200)))
                h = rng.randint(int(rngsz.min_h), int(min(rngsz.max_h, rngsz.min_h + 120)))
                emit(command("set-params", id=eid, bounds=[b.left, b.top, w, h]))
    return events


def verify_demo(name: str, seed: int = 20260810, steps: int = 120) -> list[str]:
    """Run the invariant fuzz suite for one demo; returns failure lines."""
    problems: list[str] = []
    rng = random.Random(seed)

    app = build_demo(name)
    session = Session(app)
    invariant_hits: list[str] = []

    def after_event(ev: TraceEvent) -> None:
        if not invariant_hits:
            invariant_hits.extend(check_scene_invariants(app.scene))

    events = random_session_events(
        app, random.Random(rng.randint(0, 2**31)), steps, session=session, after_event=after_event
    )
    problems.extend(invariant_hits)

    # determinism: replaying the same trace reproduces the hash
    final = session.hash()
    try:
        fresh = replay(build_demo(name), events)
    except UdappError as e:
        problems.append(f"replay of the generated trace failed: {e}")
    else:
        if fresh != final:
            problems.append(f"replay hash {fresh} != live session hash {final}")

    # catch agrees with the brute-force scan (mutates z, so hashes came first)
    probe = random.Random(rng.randint(0, 2**31))
    for _ in range(300):
        p = _point_pool(app.scene, probe)
        expected = reference_catch(app, p)
        got = app.mover.catch(p)
        app.mover.release()
        actual = (
            "no-catch" if got.kind is CatchKind.NO_CATCH
            else ("resize" if got.kind is CatchKind.RESIZE else "move"),
            got.element_id,
        )
        if actual != expected:
            problems.append(f"catch at ({p.x}, {p.y}) gave {actual}, oracle says {expected}")
            break

    # persistence round trip on the final state
    data = persistence.save_layout(app.scene, app.app_state())
    twin = build_demo(name)
    try:
        twin.apply_app_state(persistence.load_layout(data, twin.scene))
    except UdappError as e:
        problems.append(f"saved layout does not load back: {e}")
    else:
        again = persistence.save_layout(twin.scene, twin.app_state())
        if again != data:
            problems.append("save -> load -> save is not byte-identical")
        if twin.scene.capture_state() != app.scene.capture_state():
            problems.append("load -> save is not state-identical")
    return problems
