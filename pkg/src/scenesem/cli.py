"""Command-line entry points.

    scenesem recognize SCENE.jsonl      -> events.json + report.txt
    scenesem floorplan CLOUD.(ply|xyz)  -> plan.json (+ optional debug SVG)
    scenesem navcheck PLAN SCENE PATH --time T -> verdicts (exit 1 if blocked)
    scenesem validate FILE              -> schema diagnostics

Exit codes: 0 success, 1 navcheck found an impossible action, 2 malformed
input (message cites the line), 3 configuration error.  Every JSON artifact
embeds the effective configuration under "config" and is byte-reproducible
for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import floorplan as fplan
from . import interactions, navrules, sceneio
from .config import Config, load_config
from .errors import ConfigError, SceneFormatError, SceneSemError
from .geometry import Point2
from .sceneio import canonical_json

EXIT_OK = 0
EXIT_BLOCKED = 1
EXIT_BAD_INPUT = 2
EXIT_BAD_CONFIG = 3


def _load_cfg(args) -> Config:
    return load_config(getattr(args, "config", None))


def _out_dir(args) -> Path:
    out = Path(getattr(args, "out", None) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_recognize(args) -> int:
    cfg = _load_cfg(args)
    scene = sceneio.parse_scene_file(args.scene, cfg)
    events = interactions.recognize(scene, cfg=cfg)
    payload = {
        "config": cfg.to_dict(),
        "scene": str(args.scene),
        "events": [e.to_dict() for e in events],
    }
    out = _out_dir(args)
    (out / "events.json").write_text(canonical_json(payload), encoding="utf-8")
    report = "".join(interactions.grounding_report(e) + "\n" for e in events)
    (out / "report.txt").write_text(report, encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(canonical_json(payload))
    else:
        sys.stdout.write(report or "no interactions recognized\n")
    print(f"recognized {len(events)} interaction(s) -> {out / 'events.json'}",
          file=sys.stderr)
    return EXIT_OK


def cmd_floorplan(args) -> int:
    cfg = _load_cfg(args)
    cloud = fplan.load_cloud(args.cloud)
    t0 = time.perf_counter()
    plan, stats = fplan.build_floorplan(cloud, cfg)
    elapsed = time.perf_counter() - t0
    payload = {
        "config": cfg.to_dict(),
        "cloud": str(args.cloud),
        **plan.to_dict(),
    }
    out = _out_dir(args)
    (out / "plan.json").write_text(canonical_json(payload), encoding="utf-8")
    if args.debug_svg:
        Path(args.debug_svg).write_text(fplan.render_svg(plan), encoding="utf-8")
    print(f"{stats.points} points: {stats.planes} planes, {stats.walls} wall "
          f"segments, {stats.lines} wall lines, {stats.rooms} room(s), "
          f"{stats.corridors} corridor(s) [{elapsed:.2f} s]")
    for warning in stats.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_navcheck(args) -> int:
    cfg = _load_cfg(args)
    try:
        plan_data = json.loads(Path(args.plan).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"invalid JSON in plan file ({exc.msg})",
                               line=exc.lineno) from exc
    plan = fplan.plan_from_dict(plan_data)
    scene = sceneio.parse_scene_file(args.scene, cfg)
    waypoints = [Point2(x, y) for x, y in sceneio.load_path_file(args.path)]
    path = navrules.PlannedPath("robot", tuple(waypoints))
    world = navrules.WorldState(plan, scene, path)
    results = navrules.plan_check(path, world, args.time, cfg)
    payload = {
        "config": cfg.to_dict(),
        "time": args.time,
        "results": [dict(structure=sid, **v.to_dict()) for sid, v in results],
        "possible": all(v.possible for _, v in results),
    }
    text = canonical_json(payload)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(text)
    else:
        for sid, v in results:
            state = "possible" if v.possible else "IMPOSSIBLE"
            print(f"{sid}: {state} - {v.explanation}")
    return EXIT_OK if payload["possible"] else EXIT_BLOCKED


def _sniff_kind(path: Path) -> str:
    name = path.name.lower()
    if name.endswith((".ply", ".xyz")):
        return "cloud"
    if name.endswith((".jsonl", ".ndjson")):
        return "scene"
    try:
        head = path.read_text(encoding="utf-8", errors="replace").lstrip()
    except OSError:
        return "scene"
    if head.startswith("["):
        return "path"
    if head.startswith("{"):
        first = head.splitlines()[0] if head.splitlines() else ""
        try:
            obj = json.loads(first)
            if isinstance(obj, dict) and "t" in obj:
                return "scene"
        except json.JSONDecodeError:
            pass
        return "plan"
    return "cloud"


def cmd_validate(args) -> int:
    path = Path(args.file)
    try:
        path.stat()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    kind = args.kind or _sniff_kind(path)
    violations: list[str] = []
    try:
        if kind == "scene":
            violations = sceneio.validate_scene_file(path)
        elif kind == "plan":
            fplan.plan_from_dict(json.loads(path.read_text(encoding="utf-8")))
        elif kind == "path":
            sceneio.load_path_file(path)
        else:
            fplan.load_cloud(path)
    except (SceneFormatError, json.JSONDecodeError, ValueError) as exc:
        violations = [str(exc)]
    if violations:
        for v in violations[:20]:
            print(v)
        return EXIT_BAD_INPUT
    print("OK")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scenesem",
        description="Qualitative spatio-temporal semantics for embodied "
                    "activity recordings and indoor maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", "-c", default=None,
                       help="config file (JSON or TOML); defaults to "
                            "$SCENESEM_CONFIG or built-ins")
        p.add_argument("--format", choices=("json", "text"), default="text",
                       help="stdout format (files are always JSON)")

    p = sub.add_parser("recognize", help="detect interactions in a scene recording")
    p.add_argument("scene", help="scene file (JSON lines)")
    p.add_argument("--out", "-o", default=None, help="output directory")
    common(p)
    p.set_defaults(fn=cmd_recognize)

    p = sub.add_parser("floorplan", help="extract a floor plan from a point cloud")
    p.add_argument("cloud", help="ASCII PLY or XYZ point cloud")
    p.add_argument("--out", "-o", default=None, help="output directory")
    p.add_argument("--debug-svg", default=None, help="write an SVG sketch here")
    common(p)
    p.set_defaults(fn=cmd_floorplan)

    p = sub.add_parser("navcheck", help="check navigation feasibility")
    p.add_argument("plan", help="floor-plan JSON")
    p.add_argument("scene", help="people tracks (JSON lines, map frame)")
    p.add_argument("path", help="planned path JSON [[x, y], ...]")
    p.add_argument("--time", "-t", type=float, required=True,
                   help="query time, seconds")
    p.add_argument("--out", "-o", default=None, help="verdict JSON file")
    common(p)
    p.set_defaults(fn=cmd_navcheck)

    p = sub.add_parser("validate", help="schema-check an input file")
    p.add_argument("file")
    p.add_argument("--kind", choices=("scene", "plan", "path", "cloud"),
                   default=None, help="override input-type sniffing")
    p.set_defaults(fn=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except SceneFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SceneSemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
