import json
from pathlib import Path

import numpy as np
import pytest

from scenesem import cli

from synth import room_corridor_cloud

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRecognize:
    def test_sandwich_fixture(self, tmp_path, capsys):
        code, out, err = run(capsys, "recognize", str(DATA / "sandwich_scene.jsonl"),
                             "--out", str(tmp_path), "--format", "json")
        assert code == 0
        payload = json.loads((tmp_path / "events.json").read_text())
        names = [e["name"] for e in payload["events"]]
        assert names == ["reach_for", "pick_up", "put_down"]
        assert payload["config"]["patterns"]["d_touch"] == 0.05
        report = (tmp_path / "report.txt").read_text()
        assert "reach_for" in report and "grasp" in report

    def test_empty_scene(self, tmp_path, capsys):
        scene = tmp_path / "empty.jsonl"
        scene.write_text("")
        code, out, err = run(capsys, "recognize", str(scene), "--out", str(tmp_path))
        assert code == 0
        payload = json.loads((tmp_path / "events.json").read_text())
        assert payload["events"] == []

    def test_malformed_frame_cites_line(self, tmp_path, capsys):
        scene = tmp_path / "bad.jsonl"
        scene.write_text('{"t": 0, "persons": [], "objects": []}\nnot json\n')
        code, out, err = run(capsys, "recognize", str(scene), "--out", str(tmp_path))
        assert code == 2
        assert "line 2" in err

    def test_config_error_exit_3(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"patterns": {"no_such_knob": 1}}')
        code, out, err = run(capsys, "recognize", str(DATA / "sandwich_scene.jsonl"),
                             "--config", str(cfg), "--out", str(tmp_path))
        assert code == 3
        assert "no_such_knob" in err

    def test_round_trip_byte_identical(self, tmp_path, capsys):
        run(capsys, "recognize", str(DATA / "sandwich_scene.jsonl"),
            "--out", str(tmp_path))
        raw = (tmp_path / "events.json").read_bytes()
        reparsed = json.loads(raw)
        from scenesem.sceneio import canonical_json
        assert canonical_json(reparsed).encode() == raw


@pytest.fixture(scope="module")
def cloud_file(tmp_path_factory):
    pts, _ = room_corridor_cloud(density=300.0)
    path = tmp_path_factory.mktemp("cloud") / "world.xyz"
    np.savetxt(path, pts, fmt="%.6f")
    return path


@pytest.fixture(scope="module")
def low_density_cfg(tmp_path_factory):
    path = tmp_path_factory.mktemp("cfg") / "cfg.json"
    path.write_text('{"floorplan": {"min_inliers": 300}}')
    return path


class TestFloorplanCmd:
    def test_plan_written(self, cloud_file, low_density_cfg, tmp_path, capsys):
        code, out, err = run(capsys, "floorplan", str(cloud_file),
                             "--out", str(tmp_path), "--config", str(low_density_cfg),
                             "--debug-svg", str(tmp_path / "plan.svg"))
        assert code == 0
        payload = json.loads((tmp_path / "plan.json").read_text())
        assert len(payload["structures"]) == 2
        assert {s["type"] for s in payload["structures"]} == {"room", "corridor"}
        assert "config" in payload
        assert (tmp_path / "plan.svg").read_text().startswith("<svg")
        assert "2 wall" not in out  # summary mentions counts
        assert "room" in out or "1 room(s)" in out

    def test_noise_cloud_warns_empty(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        path = tmp_path / "noise.xyz"
        np.savetxt(path, rng.uniform(0, 5, (3000, 3)), fmt="%.4f")
        code, out, err = run(capsys, "floorplan", str(path), "--out", str(tmp_path))
        assert code == 0
        payload = json.loads((tmp_path / "plan.json").read_text())
        assert payload["structures"] == []
        assert "warning" in err

    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.xyz"
        path.write_text("1 2 3\n4 five 6\n")
        code, out, err = run(capsys, "floorplan", str(path), "--out", str(tmp_path))
        assert code == 2
        assert "line 2" in err


class TestNavcheckCmd:
    def nav(self, capsys, scene, tmp_path, fmt="text"):
        return run(capsys, "navcheck", str(DATA / "nav_plan.json"),
                   str(DATA / scene), str(DATA / "nav_path.json"),
                   "--time", "6.0", "--out", str(tmp_path / "verdict.json"),
                   "--format", fmt)

    def test_empty_corridor(self, tmp_path, capsys):
        code, out, err = self.nav(capsys, "nav_scene_empty.jsonl", tmp_path)
        assert code == 0
        assert "possible" in out

    def test_same_direction(self, tmp_path, capsys):
        code, out, err = self.nav(capsys, "nav_scene_same_dir.jsonl", tmp_path)
        assert code == 0

    def test_opposing_blocks(self, tmp_path, capsys):
        code, out, err = self.nav(capsys, "nav_scene_opposing.jsonl", tmp_path)
        assert code == 1
        verdicts = json.loads((tmp_path / "verdict.json").read_text())
        blocked = [r for r in verdicts["results"] if not r["possible"]]
        assert [r["structure"] for r in blocked] == ["corridor2"]
        assert blocked[0]["blocking"] == ["p1"]

    def test_loiterer_blocks(self, tmp_path, capsys):
        code, out, err = self.nav(capsys, "nav_scene_loiter.jsonl", tmp_path)
        assert code == 1


class TestValidateCmd:
    def test_valid_scene(self, capsys):
        code, out, err = run(capsys, "validate", str(DATA / "sandwich_scene.jsonl"))
        assert code == 0
        assert out.strip() == "OK"

    def test_decreasing_timestamp(self, tmp_path, capsys):
        scene = tmp_path / "scene.jsonl"
        scene.write_text('{"t": 1.0, "persons": [], "objects": []}\n'
                         '{"t": 0.5, "persons": [], "objects": []}\n')
        code, out, err = run(capsys, "validate", str(scene), "--kind", "scene")
        assert code == 2
        assert "line 2" in out and "decreas" in out

    def test_bad_joint_arity(self, tmp_path, capsys):
        scene = tmp_path / "scene.jsonl"
        scene.write_text(json.dumps(
            {"t": 0.0, "persons": [{"id": "p1", "joints": {"head": [1, 2]}}],
             "objects": []}) + "\n")
        code, out, err = run(capsys, "validate", str(scene), "--kind", "scene")
        assert code == 2
        assert "head" in out

    def test_valid_plan_and_path(self, capsys):
        code, out, _ = run(capsys, "validate", str(DATA / "nav_plan.json"))
        assert code == 0
        code, out, _ = run(capsys, "validate", str(DATA / "nav_path.json"))
        assert code == 0

    def test_unreadable_file(self, capsys):
        code, out, err = run(capsys, "validate", "/no/such/file.jsonl")
        assert code == 2


class TestDeterminism:
    def test_recognize_byte_identical(self, tmp_path, capsys):
        run(capsys, "recognize", str(DATA / "sandwich_scene.jsonl"),
            "--out", str(tmp_path / "a"))
        run(capsys, "recognize", str(DATA / "sandwich_scene.jsonl"),
            "--out", str(tmp_path / "b"))
        assert (tmp_path / "a/events.json").read_bytes() == \
            (tmp_path / "b/events.json").read_bytes()
        assert (tmp_path / "a/report.txt").read_bytes() == \
            (tmp_path / "b/report.txt").read_bytes()

    def test_navcheck_byte_identical(self, tmp_path, capsys):
        for sub in ("a", "b"):
            (tmp_path / sub).mkdir()
            run(capsys, "navcheck", str(DATA / "nav_plan.json"),
                str(DATA / "nav_scene_opposing.jsonl"), str(DATA / "nav_path.json"),
                "--time", "6.0", "--out", str(tmp_path / sub / "verdict.json"))
        assert (tmp_path / "a/verdict.json").read_bytes() == \
            (tmp_path / "b/verdict.json").read_bytes()
