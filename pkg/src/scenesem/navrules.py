"""Rule-based checks of whether a navigation action is currently possible.

The entry rule for corridors: the robot may enter iff no person is inside the
corridor at query time, or every person inside is recognized as passing
through it in the same direction as the robot's planned path.  People are
located by the floor projection of their tracked position (point in
rectangle); transit directions are signed projections onto the corridor's
major axis, computed identically for pedestrian tracks and the planned path.

Anything that is not a corridor imposes no constraint.  There is no path
planning here, only feasibility checks of a given plan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import floorplan as fplan
from . import interactions, sth
from .config import Config
from .errors import TrackOutsideStructureError, UnknownStructureError
from .floorplan import FloorPlan, FloorPlanStructure
from .geometry import Point2, point_in_polygon
from .sth import ObjectKind, SceneRecording


@dataclass(frozen=True)
class ControlAction:
    name: str
    target: str            # floor-plan structure id
    agent: str = "robot"


@dataclass(frozen=True)
class PlannedPath:
    robot_id: str
    waypoints: tuple[Point2, ...]
    times: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(self.waypoints))
        if len(self.waypoints) < 2:
            raise ValueError("a planned path needs at least 2 waypoints")
        if self.times is not None:
            object.__setattr__(self, "times", tuple(self.times))
            if len(self.times) != len(self.waypoints):
                raise ValueError("times must align with waypoints")


@dataclass(frozen=True)
class WorldState:
    plan: FloorPlan
    scene: SceneRecording      # people tracks in the map frame
    path: PlannedPath


@dataclass(frozen=True)
class Verdict:
    possible: bool
    rule: int                  # 0: unconstrained, 1: empty, 2: same-direction
    blocking: tuple[str, ...]
    explanation: str

    def to_dict(self) -> dict:
        return {
            "possible": self.possible,
            "rule": self.rule,
            "blocking": list(self.blocking),
            "explanation": self.explanation,
        }


def _inside_structure(p: Point2, s: FloorPlanStructure) -> bool:
    return point_in_polygon((p.x, p.y), [(c.x, c.y) for c in s.corners])


def transit_direction(points: list[Point2], structure: FloorPlanStructure,
                      min_dim: float = 1.0) -> int | None:
    """Sign of the net displacement of the track's inside portion along the
    structure's major axis; None when the traversal is shorter than
    min_dim / 4 (loitering)."""
    inside = [p for p in points if _inside_structure(p, structure)]
    if not inside:
        raise TrackOutsideStructureError(
            f"track never enters structure {structure.id}")
    cx, cy = structure.center()
    ax, ay = structure.major_axis
    s0 = (inside[0].x - cx) * ax + (inside[0].y - cy) * ay
    s1 = (inside[-1].x - cx) * ax + (inside[-1].y - cy) * ay
    net = s1 - s0
    if abs(net) < min_dim / 4.0:
        return None
    return 1 if net > 0 else -1


def _densify(waypoints, step: float = 0.1) -> list[Point2]:
    out: list[Point2] = []
    for a, b in zip(waypoints, waypoints[1:]):
        n = max(1, int(math.ceil(math.hypot(b.x - a.x, b.y - a.y) / step)))
        for i in range(n):
            u = i / n
            out.append(Point2(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)))
    out.append(waypoints[-1])
    return out


def _person_points(scene: SceneRecording, pid: str,
                   t1: float | None = None, t2: float | None = None) -> list[Point2]:
    h = scene.history(pid)
    out = []
    for t, e in zip(h.times, h.entities):
        if t1 is not None and t < t1 - sth.T_EXACT:
            continue
        if t2 is not None and t > t2 + sth.T_EXACT:
            continue
        from . import geometry
        c = geometry.centroid(e)
        out.append(Point2(c.x, c.y))
    return out


def _passes_events(world: WorldState, cfg: Config):
    scene = fplan.scene_with_structures(world.scene, world.plan)
    defs = [d for d in interactions.builtin_defs() if d.name == "passes"]
    return interactions.recognize(scene, defs, cfg)


def poss_at(action: ControlAction, t: float, world: WorldState,
            cfg: Config | None = None, events=None) -> Verdict:
    """Decide whether the control action can execute at time t.

    Corridor entry is possible when the corridor is empty (rule 1) or when
    every person inside is passing through in the robot's direction (rule 2);
    any other structure type imposes no constraint (rule 0).  Precomputed
    passes events may be supplied to avoid re-recognition.
    """
    cfg = cfg or Config()
    try:
        structure = world.plan.structure(action.target)
    except KeyError:
        raise UnknownStructureError(f"no structure with id {action.target!r}") from None
    if structure.type != "corridor":
        return Verdict(True, 0, (),
                       f"{structure.id} is a {structure.type}; entry is unconstrained")

    persons = []
    for obj in world.scene.objects_of_kind(ObjectKind.PERSON):
        h = world.scene.history(obj.id)
        if not h.covers(t):
            continue
        from . import geometry
        pos = geometry.centroid(sth.entity_at(h, t))
        if fplan.locate(Point2(pos.x, pos.y), world.plan) == structure.id:
            persons.append(obj.id)
    persons.sort()

    if not persons:
        return Verdict(True, 1, (),
                       f"rule 1: no person in {structure.id} at t={t:g}")

    if events is None:
        events = _passes_events(world, cfg)
    try:
        robot_dir = transit_direction(_densify(list(world.path.waypoints)),
                                      structure, cfg.floorplan.min_dim)
    except TrackOutsideStructureError:
        robot_dir = None

    blocking: list[str] = []
    reasons: list[str] = []
    for pid in persons:
        ev = next((e for e in events
                   if e.participant("P") == pid and e.participant("FS") == structure.id
                   and e.interval.contains(t, sth.T_EXACT)), None)
        if ev is None:
            blocking.append(pid)
            reasons.append(f"{pid} is not passing through")
            continue
        pts = _person_points(world.scene, pid, ev.interval.t1, ev.interval.t2)
        try:
            p_dir = transit_direction(pts, structure, cfg.floorplan.min_dim)
        except TrackOutsideStructureError:
            p_dir = None
        if p_dir is None or robot_dir is None or p_dir != robot_dir:
            blocking.append(pid)
            reasons.append(f"{pid} is moving against the planned direction")
    if blocking:
        return Verdict(False, 2, tuple(blocking),
                       f"rule 2 violated in {structure.id}: " + "; ".join(reasons))
    names = ", ".join(persons)
    return Verdict(True, 2, (),
                   f"rule 2: {names} passing {structure.id} in the same direction")


def plan_check(path: PlannedPath, world: WorldState, t: float,
               cfg: Config | None = None) -> list[tuple[str, Verdict]]:
    """Apply poss_at to every structure the path crosses, in path order."""
    cfg = cfg or Config()
    seen: list[str] = []
    for p in _densify(list(path.waypoints)):
        sid = fplan.locate(p, world.plan)
        if sid is not None and sid not in seen:
            seen.append(sid)
    events = _passes_events(world, cfg)
    out = []
    for sid in seen:
        verdict = poss_at(ControlAction("enter", sid), t, world, cfg, events=events)
        out.append((sid, verdict))
    return out
