"""Scene wire format: JSON-lines, one frame per line.

    {"t": 1.23,
     "persons": [{"id": "p1", "joints": {"hand_right": [x, y, z], ...},
                  "confidences": {"hand_right": 0.9, ...}}],
     "objects": [{"id": "bread", "class": "bread",
                  "aabb": [[x0, y0, z0], [x1, y1, z1]]}
                 | {"id": "cup", "position": [x, y, z]}]}

Timestamps must be strictly increasing, ids stable across frames, joint names
drawn from the 25-joint skeleton schema.  Joints below the configured
confidence threshold are dropped for that frame (the fluent layer treats them
as unknown).  A person's own track is the spine_base joint when present,
otherwise the centroid of the visible joints.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from . import geometry as g
from .config import Config
from .errors import SceneFormatError
from .sth import (
    BODY_JOINTS,
    DomainObject,
    ObjectKind,
    SceneRecording,
    SpaceTimeHistory,
)


def _num(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _xyz(v) -> bool:
    return isinstance(v, list) and len(v) == 3 and all(_num(c) for c in v)


def iter_frames(path):
    """Yield (line number, frame dict), raising SceneFormatError on bad JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.strip()
            if not body:
                continue
            try:
                frame = json.loads(body)
            except json.JSONDecodeError as exc:
                raise SceneFormatError(f"invalid JSON ({exc.msg})", line=lineno) from exc
            if not isinstance(frame, dict):
                raise SceneFormatError("frame must be a JSON object", line=lineno)
            yield lineno, frame


def _frame_violations(lineno: int, frame: dict, prev_t, classes: dict) -> list[str]:
    out = []

    def bad(msg):
        out.append(f"line {lineno}: {msg}")

    t = frame.get("t")
    if not _num(t):
        bad("missing or non-numeric 't'")
        t = None
    elif prev_t is not None and t < prev_t:
        bad(f"timestamp decreases ({t} after {prev_t})")
    elif prev_t is not None and t == prev_t:
        bad(f"duplicate timestamp {t}")
    for key in frame:
        if key not in ("t", "persons", "objects", "frame"):
            bad(f"unknown frame key {key!r}")
    for p in frame.get("persons", []) or []:
        if not isinstance(p, dict) or "id" not in p:
            bad("person without id")
            continue
        pid = str(p["id"])
        joints = p.get("joints", {})
        if not isinstance(joints, dict):
            bad(f"person {pid}: joints must be an object")
            continue
        for name, coords in joints.items():
            if name not in BODY_JOINTS:
                bad(f"person {pid}: unknown joint {name!r}")
            if not _xyz(coords):
                bad(f"person {pid}: joint {name} needs 3 finite coordinates")
        for name, conf in (p.get("confidences") or {}).items():
            if not _num(conf) or not (0.0 <= conf <= 1.0):
                bad(f"person {pid}: confidence for {name} outside [0, 1]")
    for o in frame.get("objects", []) or []:
        if not isinstance(o, dict) or "id" not in o:
            bad("object without id")
            continue
        oid = str(o["id"])
        cls = str(o.get("class", oid))
        if oid in classes and classes[oid] != cls:
            bad(f"object {oid}: class changed from {classes[oid]!r} to {cls!r}")
        classes[oid] = cls
        if "aabb" in o:
            box = o["aabb"]
            if (not isinstance(box, list) or len(box) != 2
                    or not _xyz(box[0]) or not _xyz(box[1])
                    or any(a >= b for a, b in zip(box[0], box[1]))):
                bad(f"object {oid}: aabb must be [[lo3], [hi3]] with lo < hi")
        elif "position" in o:
            if not _xyz(o["position"]):
                bad(f"object {oid}: position needs 3 finite coordinates")
        else:
            bad(f"object {oid}: needs 'aabb' or 'position'")
    return out


def validate_scene_file(path, limit: int = 20) -> list[str]:
    """First `limit` schema violations (empty list = valid)."""
    violations: list[str] = []
    prev_t = None
    classes: dict[str, str] = {}
    try:
        for lineno, frame in iter_frames(path):
            violations.extend(_frame_violations(lineno, frame, prev_t, classes))
            t = frame.get("t")
            if _num(t):
                prev_t = t
            if len(violations) >= limit:
                return violations[:limit]
    except SceneFormatError as exc:
        violations.append(str(exc))
    return violations[:limit]


def parse_scene_file(path, cfg: Config | None = None) -> SceneRecording:
    """Build an immutable recording from a scene file; malformed frames raise
    SceneFormatError with their line number."""
    cfg = cfg or Config()
    conf_min = cfg.patterns.joint_conf_min
    samples: dict[str, list] = {}
    meta: dict[str, DomainObject] = {}
    prev_t = None
    frame_tag = None
    for lineno, frame in iter_frames(path):
        problems = _frame_violations(lineno, frame, prev_t, {})
        if problems:
            raise SceneFormatError(problems[0].split(": ", 1)[1], line=lineno)
        t = float(frame["t"])
        prev_t = t
        tag = frame.get("frame")
        if tag is not None:
            if frame_tag is not None and tag != frame_tag:
                raise SceneFormatError(
                    f"coordinate frame changed from {frame_tag!r} to {tag!r}", line=lineno)
            frame_tag = str(tag)
        for p in frame.get("persons", []) or []:
            pid = str(p["id"])
            joints = p.get("joints", {})
            confs = p.get("confidences") or {}
            visible = {}
            for name, coords in joints.items():
                if confs.get(name, 1.0) < conf_min:
                    continue
                visible[name] = g.Point3(*coords)
            if not visible:
                continue
            if pid not in meta:
                meta[pid] = DomainObject(pid, ObjectKind.PERSON, class_label="person")
                samples[pid] = []
            if "spine_base" in visible:
                anchor = visible["spine_base"]
            else:
                anchor = g.Point3(
                    sum(q.x for q in visible.values()) / len(visible),
                    sum(q.y for q in visible.values()) / len(visible),
                    sum(q.z for q in visible.values()) / len(visible))
            samples[pid].append((t, anchor))
            for name, point in visible.items():
                jid = f"{pid}/{name}"
                if jid not in meta:
                    meta[jid] = DomainObject(jid, ObjectKind.BODY_PART,
                                             class_label=name, parent=pid)
                    samples[jid] = []
                samples[jid].append((t, point))
        for o in frame.get("objects", []) or []:
            oid = str(o["id"])
            if oid not in meta:
                meta[oid] = DomainObject(oid, ObjectKind.OBJECT,
                                         class_label=str(o.get("class", oid)))
                samples[oid] = []
            if "aabb" in o:
                lo, hi = o["aabb"]
                entity = g.AABox(tuple(float(v) for v in lo),
                                 tuple(float(v) for v in hi))
            else:
                entity = g.Point3(*o["position"])
            samples[oid].append((t, entity))
    histories = {}
    for oid, obj in meta.items():
        rows = samples[oid]
        histories[oid] = SpaceTimeHistory(obj, tuple(r[0] for r in rows),
                                          tuple(r[1] for r in rows))
    rate = None
    all_times = sorted({t for rows in samples.values() for t, _ in rows})
    if len(all_times) >= 2:
        steps = sorted(b - a for a, b in zip(all_times, all_times[1:]))
        median_dt = steps[len(steps) // 2]
        if median_dt > 0:
            rate = 1.0 / median_dt
    return SceneRecording(histories, frame_rate=rate, frame=frame_tag or "sensor")


def write_scene_file(path, frames: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for frame in frames:
            fh.write(json.dumps(frame, sort_keys=True) + "\n")


def canonical_json(payload) -> str:
    """The one serialization used for every JSON artifact, so identical inputs
    produce byte-identical outputs."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def load_path_file(path) -> list[tuple[float, float]]:
    """Planned-path JSON: [[x, y], ...]."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"invalid JSON in path file ({exc.msg})",
                               line=exc.lineno) from exc
    if not isinstance(data, list) or len(data) < 2:
        raise SceneFormatError("path must be a JSON list of at least 2 [x, y] pairs")
    out = []
    for i, wp in enumerate(data):
        if not (isinstance(wp, list) and len(wp) == 2 and all(_num(v) for v in wp)):
            raise SceneFormatError(f"waypoint #{i} must be [x, y]")
        out.append((float(wp[0]), float(wp[1])))
    return out
