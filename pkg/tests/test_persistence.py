import json
import random

import pytest

from conftest import make_control_element, make_rect_element
from udapp import fuzz
from udapp.demos import build_calculator, build_demo, build_personaldata
from udapp.errors import ParseError, ReferentialError, VersionError
from udapp.geometry import RectBounds
from udapp.persistence import (
    FORMAT_TAG,
    load_layout,
    read_layout,
    save_layout,
    write_layout,
)
from udapp.scene import Scene


def small_scene():
    scene = Scene()
    scene.add_element(make_rect_element("a", 0, 0, 20, 20))
    scene.add_element(make_control_element("b", 40, 0, 30, 20, key="7"))
    scene.create_group("g", title="pair", members=["a", "b"], margin=6.0)
    scene.snapshot_default()
    return scene


class TestSaveDeterminism:
    def test_same_scene_same_bytes(self):
        scene = small_scene()
        assert save_layout(scene) == save_layout(scene)

    def test_save_after_restore_matches_fresh_build(self):
        app = build_calculator()
        baseline = save_layout(app.scene)
        app.scene.set_hidden("btn-7", True)
        app.scene.raise_to_top("btn-2")
        app.restore_default()
        assert save_layout(app.scene) == baseline

    def test_empty_scene_document(self):
        data = save_layout(Scene())
        doc = json.loads(data)
        assert doc["format"] == FORMAT_TAG
        assert doc["scene"]["elements"] == [] and doc["scene"]["groups"] == []
        assert data.endswith(b"\n")


class TestRoundTrip:
    def test_bytes_fixpoint(self):
        scene = small_scene()
        data = save_layout(scene, {"note": "x"})
        target = Scene()
        app = load_layout(data, target)
        assert app == {"note": "x"}
        assert save_layout(target, app) == data

    def test_state_identical(self):
        scene = small_scene()
        scene.set_hidden("a", True)
        scene.set_movable("b", False)
        target = Scene()
        load_layout(save_layout(scene), target)
        assert target.capture_state() == scene.capture_state()
        assert target.default_snapshot == scene.default_snapshot

    def test_fuzzed_demo_round_trips(self):
        rng = random.Random(5)
        for name in ("calculator", "personaldata", "functions"):
            app = build_demo(name)
            fuzz.random_session_events(app, rng, 25)
            data = save_layout(app.scene, app.app_state())
            twin = build_demo(name)
            twin.apply_app_state(load_layout(data, twin.scene))
            assert save_layout(twin.scene, twin.app_state()) == data
            assert twin.scene.capture_state() == app.scene.capture_state()


class TestLoadValidation:
    def test_truncated_file_leaves_scene_untouched(self):
        scene = small_scene()
        data = save_layout(scene)[:-30]
        target = build_personaldata().scene
        before = target.capture_state()
        with pytest.raises(ParseError):
            load_layout(data, target)
        assert target.capture_state() == before

    def test_unknown_member_is_referential_error(self):
        doc = json.loads(save_layout(small_scene()))
        doc["scene"]["groups"][0]["members"].append("ghost")
        with pytest.raises(ReferentialError):
            load_layout(json.dumps(doc).encode(), Scene())

    def test_z_order_must_be_a_permutation(self):
        doc = json.loads(save_layout(small_scene()))
        doc["scene"]["z_order"] = doc["scene"]["z_order"][:-1]
        with pytest.raises(ReferentialError):
            load_layout(json.dumps(doc).encode(), Scene())

    def test_wrong_version(self):
        doc = json.loads(save_layout(small_scene()))
        doc["format"] = "udapp-layout/99"
        with pytest.raises(VersionError):
            load_layout(json.dumps(doc).encode(), Scene())

    def test_bad_curve_expression_is_rejected(self):
        from udapp.demos import build_functions_analyser

        doc = json.loads(save_layout(build_functions_analyser().scene))
        for el in doc["scene"]["elements"]:
            if el["kind"].get("plot"):
                el["kind"]["plot"]["curves"][0]["expr"] = "2x"
        with pytest.raises(ParseError):
            load_layout(json.dumps(doc).encode(), Scene())

    def test_error_on_mutated_scene_is_all_or_nothing(self):
        scene = small_scene()
        doc = json.loads(save_layout(scene))
        doc["scene"]["elements"][0]["bounds"] = [0, 0, -5, 5]
        target = small_scene()
        before = target.capture_state()
        with pytest.raises(ParseError):
            load_layout(json.dumps(doc).encode(), target)
        assert target.capture_state() == before


class TestFiles:
    def test_write_and_read(self, tmp_path):
        scene = small_scene()
        path = tmp_path / "layout.json"
        write_layout(str(path), scene, {"k": 1})
        target = Scene()
        app = read_layout(str(path), target)
        assert app == {"k": 1}
        assert target.capture_state() == scene.capture_state()

    def test_write_leaves_no_temp_files(self, tmp_path):
        path = tmp_path / "layout.json"
        write_layout(str(path), small_scene())
        assert [p.name for p in tmp_path.iterdir()] == ["layout.json"]

    def test_positions_persist_unclamped(self, tmp_path):
        # parked half-offscreen stays parked: no reinterpretation on load
        scene = small_scene()
        scene.set_bounds("a", RectBounds(-500, -500, 20, 20))
        path = tmp_path / "layout.json"
        write_layout(str(path), scene)
        target = Scene()
        read_layout(str(path), target)
        assert target.element("a").params.bounds == RectBounds(-500, -500, 20, 20)
