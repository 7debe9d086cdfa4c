"""Acceptance criteria, one test per criterion, at the stated sizes.

Each test prints a PASS line (visible with -s); a failing criterion fails
its test.  Oracles here are written independently of the engine paths they
check: analytic containment, hand-written reference lambdas, inline
min/max frame arithmetic.
"""

import json
import math
import os
import random
import time

from conftest import make_control_element, make_rect_element, oracle_catch, random_scene
from udapp import cli, fuzz, persistence
from udapp.demos import build_calculator, build_demo, calc_press, CalcState
from udapp.geometry import Point, RectBounds, SizeRange
from udapp.harness import Session, mouse_down, mouse_move, mouse_up, parse_trace, replay, scene_hash
from udapp.interpreter import evaluate, parse_expression
from udapp.mover import CatchKind, Mover
from udapp.plotting import PlotSpec, nice_ticks, screen_to_world, world_to_screen
from udapp.scene import Scene

DATA = os.path.join(os.path.dirname(__file__), "data")

_KIND_NAME = {
    CatchKind.NO_CATCH: "no-catch",
    CatchKind.MOVE: "move",
    CatchKind.RESIZE: "resize",
}


def _passed(name: str, detail: str) -> None:
    print(f"[ACCEPTANCE] {name}: PASS ({detail})")


def test_hit_model_oracle():
    """catch == brute-force descending-z in-order scan; 1e4 points, < 5 s."""
    rng = random.Random(1001)
    apps = []
    for _ in range(40):
        scene = random_scene(rng, n_elements=rng.randint(4, 14))
        mover = Mover(scene)
        mover.sync_registration()
        for eid in list(mover.registered):
            if rng.random() < 0.1:
                mover.unregister(eid)
        apps.append((scene, mover))
    for name in ("calculator", "personaldata", "functions"):
        for _ in range(4):
            app = build_demo(name)
            fuzz.random_session_events(app, rng, 8)
            apps.append((app.scene, app.mover))

    start = time.monotonic()
    trials = 0
    mismatches = 0
    per_scene = 10_000 // len(apps) + 1
    for scene, mover in apps:
        for _ in range(per_scene):
            if trials >= 10_000:
                break
            p = Point(rng.randint(-40, int(scene.canvas[0]) + 40), rng.randint(-40, int(scene.canvas[1]) + 40))
            want_verb, want_id, _ = oracle_catch(scene, mover.registered, p)
            got = mover.catch(p)
            mover.release()
            if (_KIND_NAME[got.kind], got.element_id) != (want_verb, want_id):
                mismatches += 1
            trials += 1
    elapsed = time.monotonic() - start
    assert trials >= 10_000
    assert mismatches == 0
    assert elapsed < 5.0
    _passed("hit-model-oracle", f"{trials} trials, 0 mismatches, {elapsed:.2f}s")


def _single_element_scene(rng):
    scene = Scene()
    maker = make_control_element if rng.random() < 0.4 else make_rect_element
    el = maker(
        "it",
        rng.randint(-50, 400),
        rng.randint(-50, 300),
        rng.randint(30, 160),
        rng.randint(30, 120),
        size_range=SizeRange(20, 20, 400, 400),
    )
    scene.add_element(el)
    mover = Mover(scene)
    mover.sync_registration()
    return scene, mover, el


_HANDLE_POINT = {
    "nw": lambda b: (b.left, b.top),
    "ne": lambda b: (b.right, b.top),
    "se": lambda b: (b.right, b.bottom),
    "sw": lambda b: (b.left, b.bottom),
    "n": lambda b: (b.left + b.width / 2, b.top),
    "e": lambda b: (b.right, b.top + b.height / 2),
    "s": lambda b: (b.left + b.width / 2, b.bottom),
    "w": lambda b: (b.left, b.top + b.height / 2),
}

_ANCHOR_SIDE = {
    "nw": ("right", "bottom"),
    "ne": ("left", "bottom"),
    "se": ("left", "top"),
    "sw": ("right", "top"),
    "n": (None, "bottom"),
    "s": (None, "top"),
    "e": ("left", None),
    "w": ("right", None),
}


def test_movement_exactness():
    """1e3 fuzzed press-move-release traces: moves exact, resizes anchored."""
    rng = random.Random(2002)
    for trial in range(1000):
        kind = rng.choice(("move", "move", "resize", "frame"))
        if kind == "frame":
            scene = Scene()
            scene.add_element(make_rect_element("a", 0, 0, 20, 20))
            scene.add_element(make_rect_element("b", 60, 0, 20, 20))
            scene.create_group("g", members=["a", "b"], margin=8.0)
            mover = Mover(scene)
            mover.sync_registration()
            starts = {e: scene.element(e).params.bounds for e in ("a", "b")}
            got = mover.catch(Point(40, -4))  # frame gap between the members
            assert got.element_id == "g", trial
            p, total = Point(40, -4), (0, 0)
            for _ in range(rng.randint(1, 5)):
                d = (rng.randint(-80, 80), rng.randint(-80, 80))
                total = (total[0] + d[0], total[1] + d[1])
                p = Point(p.x + d[0], p.y + d[1])
                mover.move_to(p)
            mover.release()
            for eid, b0 in starts.items():
                b1 = scene.element(eid).params.bounds
                assert (b1.left, b1.top) == (b0.left + total[0], b0.top + total[1])
                assert (b1.width, b1.height) == (b0.width, b0.height)
            continue

        scene, mover, el = _single_element_scene(rng)
        b0 = el.params.bounds
        if kind == "move":
            if el.kind.__class__.__name__ == "Control":
                gx, gy = b0.left + b0.width / 2, b0.top  # N strip moves a control
            else:
                gx, gy = b0.left + b0.width / 2, b0.top + b0.height / 2
            got = mover.catch(Point(gx, gy))
            assert got.kind is CatchKind.MOVE, trial
            p, total = Point(gx, gy), (0, 0)
            for _ in range(rng.randint(1, 6)):
                d = (rng.randint(-120, 120), rng.randint(-120, 120))
                total = (total[0] + d[0], total[1] + d[1])
                p = Point(p.x + d[0], p.y + d[1])
                mover.move_to(p)
            mover.release()
            b1 = el.params.bounds
            assert (b1.width, b1.height) == (b0.width, b0.height)  # size bit-unchanged
            assert (b1.left, b1.top) == (b0.left + total[0], b0.top + total[1])
        else:
            handle = rng.choice(list(_HANDLE_POINT))
            if el.kind.__class__.__name__ == "Control" and handle in ("n", "e", "s", "w"):
                handle = rng.choice(("nw", "ne", "se", "sw"))  # control edges move
            gx, gy = _HANDLE_POINT[handle](b0)
            got = mover.catch(Point(gx, gy))
            assert got.kind is CatchKind.RESIZE, (trial, handle)
            p = Point(gx, gy)
            for _ in range(rng.randint(1, 6)):
                p = Point(p.x + rng.randint(-250, 250), p.y + rng.randint(-250, 250))
                mover.move_to(p)
            mover.release()
            b1 = el.params.bounds
            ax, ay = _ANCHOR_SIDE[handle]
            if ax:
                assert getattr(b1, ax) == getattr(b0, ax)  # anchored side never moves
            else:
                assert (b1.left, b1.width) == (b0.left, b0.width)
            if ay:
                assert getattr(b1, ay) == getattr(b0, ay)
            else:
                assert (b1.top, b1.height) == (b0.top, b0.height)
            rng_sz = el.size_range
            assert rng_sz.min_w <= b1.width <= rng_sz.max_w
            assert rng_sz.min_h <= b1.height <= rng_sz.max_h
    _passed("movement-exactness", "1000 traces: moves exact, anchors pinned, ranges held")


def _frame_violations(scene) -> list[str]:
    # independent re-derivation: plain min/max plus margin on each side
    out = []
    for g in scene.groups.values():
        frame = scene.elements[g.id]
        vis = [scene.elements[m].params.bounds for m in g.members if not scene.elements[m].hidden]
        if not vis:
            if not frame.hidden:
                out.append(f"{g.id}: empty group with visible frame")
            continue
        left = min(b.left for b in vis) - g.margin
        top = min(b.top for b in vis) - g.margin
        right = max(b.left + b.width for b in vis) + g.margin
        bottom = max(b.top + b.height for b in vis) + g.margin
        fb = frame.params.bounds
        if frame.hidden:
            out.append(f"{g.id}: visible members but hidden frame")
        elif (fb.left, fb.top, fb.left + fb.width, fb.top + fb.height) != (left, top, right, bottom):
            out.append(f"{g.id}: frame {fb} != derived ({left},{top},{right},{bottom})")
    return out


def test_elastic_frame_invariant():
    """Frame == padded bbox of visible members after every op; 1e3 sequences."""
    rng = random.Random(3003)
    violations = []
    sequences = 0
    checks = 0
    while sequences < 1000:
        name = ("calculator", "personaldata", "functions")[sequences % 3]
        app = build_demo(name)
        session = Session(app)

        def check(_ev):
            nonlocal checks
            checks += 1
            violations.extend(_frame_violations(app.scene))

        fuzz.random_session_events(app, rng, 3, session=session, after_event=check)
        sequences += 1
        if violations:
            break
    assert not violations, violations[:5]
    _passed("elastic-frame-invariant", f"{sequences} sequences, {checks} checks, 0 violations")


def test_persistence_round_trip():
    """save -> load -> save byte-identical; load o save state-identical; 100 scenes."""
    rng = random.Random(4004)
    for i in range(100):
        name = ("calculator", "personaldata", "functions")[i % 3]
        app = build_demo(name)
        fuzz.random_session_events(app, rng, 15)
        data = persistence.save_layout(app.scene, app.app_state())
        twin = build_demo(name)
        twin.apply_app_state(persistence.load_layout(data, twin.scene))
        assert persistence.save_layout(twin.scene, twin.app_state()) == data
        assert twin.scene.capture_state() == app.scene.capture_state()
        assert twin.scene.default_snapshot == app.scene.default_snapshot
    _passed("persistence-round-trip", "100 fuzzed scenes byte- and state-identical")


def _press_via_click(session: Session, key: str) -> None:
    # find the button by its logical key, surface it, click its center:
    # the full hit path resolves the press wherever the button sits
    app = session.app
    eid = next(
        e for e, el in app.scene.elements.items() if getattr(el.kind, "key", None) == key
    )
    app.scene.set_hidden(eid, False)
    app.scene.raise_to_top(eid)
    b = app.scene.element(eid).params.bounds
    cx, cy = b.left + b.width / 2, b.top + b.height / 2
    session.mouse_down(Point(cx, cy))
    session.mouse_up(Point(cx, cy))


def test_calculator_layout_independence():
    """Same 50-key script, identical display on 100 mutated layouts."""
    rng = random.Random(5005)
    keys = sorted(fuzz.LOGICAL_KEYS)
    script = ["C"] + [rng.choice(keys) for _ in range(49)]

    reference = build_calculator()
    ref_session = Session(reference)
    for key in script:
        _press_via_click(ref_session, key)
    want = reference.calc.display
    # cross-check the script against the pure state machine
    state = CalcState()
    for key in script:
        state = calc_press(state, key)
    assert state.display == want

    for trial in range(100):
        app = build_calculator()
        fuzz.random_session_events(app, random.Random(rng.randint(0, 2**31)), 12)
        session = Session(app)
        for key in script:
            _press_via_click(session, key)
        assert app.calc.display == want, trial
    _passed("calculator-layout-independence", f"100 layouts, display always {want!r}")


_REFERENCE_SUITE = [
    ("x", lambda x: x),
    ("x^2-3*x+2", lambda x: x * x - 3 * x + 2),
    ("sin(x)", math.sin),
    ("cos(2*x)+sin(x/2)", lambda x: math.cos(2 * x) + math.sin(x / 2)),
    ("exp(-x^2/2)", lambda x: math.exp(-(x * x) / 2)),
    ("ln(abs(x)+1)", lambda x: math.log(abs(x) + 1)),
    ("sqrt(abs(x))", lambda x: math.sqrt(abs(x))),
    ("1/(1+x^2)", lambda x: 1 / (1 + x * x)),
    ("tan(x/4)", lambda x: math.tan(x / 4)),
    ("log10(x^2+1)", lambda x: math.log10(x * x + 1)),
    ("-x^3/7+2^x", lambda x: -(x**3) / 7 + 2**x),
    ("(x+1)*(x-2)/(x^2+1)", lambda x: (x + 1) * (x - 2) / (x * x + 1)),
    ("e^(-x)*sin(3*x)", lambda x: math.e ** (-x) * math.sin(3 * x)),
    ("pi*x^2", lambda x: math.pi * x * x),
    ("abs(x-3)+abs(x+3)", lambda x: abs(x - 3) + abs(x + 3)),
    ("2^(-x)", lambda x: 2.0 ** (-x)),
    ("sqrt(x^2+1)-x", lambda x: math.sqrt(x * x + 1) - x),
    ("sin(x)^2+cos(x)^2", lambda x: math.sin(x) ** 2 + math.cos(x) ** 2),
    ("x/3-5", lambda x: x / 3 - 5),
    ("exp(sin(x))", lambda x: math.exp(math.sin(x))),
]


def test_interpreter_accuracy():
    """20 expressions x 100 points vs reference lambdas, rel err <= 1e-12."""
    assert len(_REFERENCE_SUITE) == 20
    worst = 0.0
    for text, ref in _REFERENCE_SUITE:
        ast = parse_expression(text)
        for i in range(100):
            x = -6.0 + 12.0 * i / 99.0
            got = evaluate(ast, x)
            want = ref(x)
            err = abs(got - want) / max(1.0, abs(want))
            worst = max(worst, err)
            assert err <= 1e-12, (text, x, got, want)
    # precedence pins, exact
    assert evaluate(parse_expression("(1+2)^3"), 0.0) == 27.0
    assert evaluate(parse_expression("-2^2"), 0.0) == -4.0
    assert evaluate(parse_expression("2^3^2"), 0.0) == 512.0
    _passed("interpreter-accuracy", f"2000 points, worst rel err {worst:.2e}")


def test_plot_mapping():
    """World<->screen round trip <= 1e-9 rel on 1e4 points; 1-2-5 ladder only."""
    rng = random.Random(7007)
    worst = 0.0
    for _ in range(10_000):
        b = RectBounds(
            rng.uniform(-1000, 1000), rng.uniform(-1000, 1000), rng.uniform(10, 1200), rng.uniform(10, 900)
        )
        x0, y0 = rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)
        spec = PlotSpec(x0, x0 + 10 ** rng.uniform(-2, 4), y0, y0 + 10 ** rng.uniform(-2, 4))
        w = (rng.uniform(spec.x_min, spec.x_max), rng.uniform(spec.y_min, spec.y_max))
        gx, gy = screen_to_world(b, spec, world_to_screen(b, spec, w))
        ex = abs(gx - w[0]) / max(1e-9, abs(w[0]))
        ey = abs(gy - w[1]) / max(1e-9, abs(w[1]))
        worst = max(worst, ex, ey)
        assert ex <= 1e-9 and ey <= 1e-9

    for _ in range(500):
        lo = rng.uniform(-1e5, 1e5)
        hi = lo + 10 ** rng.uniform(-3, 6)
        ticks = nice_ticks(lo, hi, rng.randint(2, 12))
        assert all(a < b for a, b in zip(ticks, ticks[1:]))
        if len(ticks) >= 2:
            # snap the mean spacing to the nearest ladder step, then demand
            # every tick be that step's exact multiple (same float product)
            step_est = (ticks[-1] - ticks[0]) / (len(ticks) - 1)
            m, k = min(
                ((m, round(math.log10(step_est / m))) for m in (1.0, 2.0, 5.0)),
                key=lambda mk: abs(step_est - mk[0] * 10.0 ** mk[1]),
            )
            step = m * 10.0**k
            assert math.isclose(step_est, step, rel_tol=1e-6)
            for t in ticks:
                assert t == round(t / step) * step
    _passed("plot-mapping", f"1e4 round trips, worst rel err {worst:.2e}; ladder clean")


def test_determinism():
    """Committed traces replay to their frozen hashes; verify exits 0."""
    with open(os.path.join(DATA, "expected_hashes.json"), encoding="utf-8") as f:
        expected = json.load(f)
    for name in ("calculator", "personaldata", "functions"):
        assert scene_hash(build_demo(name)) == expected[name]["baseline"]
        with open(os.path.join(DATA, f"{name}.jsonl"), encoding="utf-8") as f:
            events = parse_trace(f.read())
        first = replay(build_demo(name), events)
        second = replay(build_demo(name), events)
        assert first == second == expected[name]["trace"], name
    for name in ("calculator", "personaldata", "functions"):
        assert cli.main(["verify", name, "--steps", "60"]) == 0
    _passed("determinism", "3 committed traces byte-stable; udapp verify exits 0")
