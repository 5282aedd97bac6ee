"""Space-time histories: objects traced through time as sampled entity
sequences, plus the static and dynamic property functions over them
(position, size, distance, angle, velocity, direction, rotation).

Histories interpolate linearly between samples; true 4D region geometry is
not modelled.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from enum import Enum

from . import geometry
from .errors import (
    BadIntervalError,
    NoSignificantMotionError,
    OrientationUndefinedError,
    OutOfRangeError,
)
from .geometry import (
    AABox,
    OrientedPoint,
    Point2,
    Point3,
    Polygon2,
    Segment,
    Segment2,
    SpatialEntity,
    TimeInterval,
)

T_EXACT = 1e-9  # sample-time equality tolerance, seconds


class ObjectKind(str, Enum):
    PERSON = "person"
    OBJECT = "object"
    ROBOT = "robot"
    BODY_PART = "body_part"
    FLOORPLAN_STRUCTURE = "floorplan_structure"


# Kinect v2 skeleton joint names.
BODY_JOINTS = (
    "spine_base", "spine_mid", "neck", "head",
    "shoulder_left", "elbow_left", "wrist_left", "hand_left",
    "shoulder_right", "elbow_right", "wrist_right", "hand_right",
    "hip_left", "knee_left", "ankle_left", "foot_left",
    "hip_right", "knee_right", "ankle_right", "foot_right",
    "spine_shoulder", "hand_tip_left", "thumb_left",
    "hand_tip_right", "thumb_right",
)


@dataclass(frozen=True)
class DomainObject:
    id: str
    kind: ObjectKind
    class_label: str = ""
    parent: str | None = None


@dataclass(frozen=True)
class BodyPose:
    """One person's joints at a single instant."""

    person_id: str
    joints: dict[str, Point3]
    confidence: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name in self.joints:
            if name not in BODY_JOINTS:
                raise ValueError(f"unknown joint name: {name}")
        for name, c in self.confidence.items():
            if not (0.0 <= c <= 1.0):
                raise ValueError(f"confidence for {name} outside [0, 1]")


@dataclass(frozen=True)
class SpaceTimeHistory:
    """Time-ordered samples of one object's spatial extent."""

    obj: DomainObject
    times: tuple[float, ...]
    entities: tuple[SpatialEntity, ...]

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        ents = tuple(self.entities)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "entities", ents)
        if len(times) != len(ents) or not times:
            raise ValueError("times and entities must align and be non-empty")
        if any(b - a <= 0 for a, b in zip(times, times[1:])):
            raise ValueError("timestamps must be strictly increasing")
        kind = type(ents[0])
        if any(type(e) is not kind for e in ents):
            raise ValueError("all samples must share one entity kind")

    @property
    def start(self) -> float:
        return self.times[0]

    @property
    def end(self) -> float:
        return self.times[-1]

    def covers(self, t: float) -> bool:
        return self.start - T_EXACT <= t <= self.end + T_EXACT

    def sample_index_at(self, t: float) -> int | None:
        i = bisect.bisect_left(self.times, t - T_EXACT)
        if i < len(self.times) and abs(self.times[i] - t) <= T_EXACT:
            return i
        return None


@dataclass(frozen=True)
class SceneRecording:
    """Immutable set of histories sharing one coordinate frame."""

    histories: dict[str, SpaceTimeHistory]
    frame_rate: float | None = None
    frame: str = "sensor"

    def __post_init__(self):
        for oid, h in self.histories.items():
            if oid != h.obj.id:
                raise ValueError(f"history key {oid!r} != object id {h.obj.id!r}")
        for h in self.histories.values():
            if h.obj.kind == ObjectKind.BODY_PART:
                if h.obj.parent is None or h.obj.parent not in self.histories:
                    raise ValueError(f"body part {h.obj.id} references no known person")
        object.__setattr__(self, "_frame_times", None)

    @property
    def frame_times(self) -> tuple[float, ...]:
        cached = object.__getattribute__(self, "_frame_times")
        if cached is None:
            seen: list[float] = sorted({t for h in self.histories.values() for t in h.times})
            cached = tuple(seen)
            object.__setattr__(self, "_frame_times", cached)
        return cached

    def history(self, oid: str) -> SpaceTimeHistory:
        try:
            return self.histories[oid]
        except KeyError:
            raise OutOfRangeError(f"no history for object {oid!r}") from None

    def objects_of_kind(self, kind: ObjectKind) -> list[DomainObject]:
        return [h.obj for h in self.histories.values() if h.obj.kind == kind]

    def is_frame_time(self, t: float) -> bool:
        ts = self.frame_times
        i = bisect.bisect_left(ts, t - T_EXACT)
        return i < len(ts) and abs(ts[i] - t) <= T_EXACT

    def span(self) -> TimeInterval | None:
        ts = self.frame_times
        if len(ts) < 2:
            return None
        return TimeInterval(ts[0], ts[-1])


def entity_at(h: SpaceTimeHistory, t: float) -> SpatialEntity:
    """Entity value at time t: the stored sample at sample times, otherwise a
    vertexwise linear interpolation of the bracketing samples."""
    if not h.covers(t):
        raise OutOfRangeError(
            f"{h.obj.id}: t={t} outside sampled span [{h.start}, {h.end}]")
    i = h.sample_index_at(t)
    if i is not None:
        return h.entities[i]
    j = bisect.bisect_right(h.times, t)
    t0, t1 = h.times[j - 1], h.times[j]
    u = (t - t0) / (t1 - t0)
    return geometry.lerp_entity(h.entities[j - 1], h.entities[j], u)


def position(h: SpaceTimeHistory, t: float) -> Point3:
    """Centroid of the entity at t (3D; planar entities get z = 0)."""
    return geometry.centroid(entity_at(h, t))


def size_at(h: SpaceTimeHistory, t: float) -> float:
    return geometry.size(entity_at(h, t))


def distance_at(h1: SpaceTimeHistory, h2: SpaceTimeHistory, t: float) -> float:
    e1, e2 = entity_at(h1, t), entity_at(h2, t)
    d1, d2 = geometry.entity_dim(e1), geometry.entity_dim(e2)
    if d1 != d2:
        # histories of mixed dimensionality compare through the floor plane
        e1 = geometry.project_to_floor(e1).entity
        e2 = geometry.project_to_floor(e2).entity
    return geometry.distance(e1, e2)


def angle_at(h1: SpaceTimeHistory, h2: SpaceTimeHistory, t: float) -> float:
    return geometry.angle_between(entity_at(h1, t), entity_at(h2, t))


def movement_velocity(h: SpaceTimeHistory, t1: float, t2: float) -> float:
    """Net displacement of the centroid between t1 and t2, divided by the
    elapsed time (m/s). A closed loop therefore reports 0."""
    if not t2 > t1:
        raise BadIntervalError("movement_velocity requires t1 < t2")
    p1, p2 = position(h, t1), position(h, t2)
    return _dist3(p1, p2) / (t2 - t1)


def movement_direction(h: SpaceTimeHistory, t1: float, t2: float,
                       eps_move: float = 0.02) -> tuple[float, float, float]:
    """Unit vector of net displacement between t1 and t2."""
    if not t2 > t1:
        raise BadIntervalError("movement_direction requires t1 < t2")
    p1, p2 = position(h, t1), position(h, t2)
    d = (p2.x - p1.x, p2.y - p1.y, p2.z - p1.z)
    n = math.sqrt(sum(c * c for c in d))
    if n <= eps_move:
        raise NoSignificantMotionError(
            f"displacement {n:.4f} m below eps_move={eps_move}")
    return (d[0] / n, d[1] / n, d[2] / n)


def _dist3(a: Point3, b: Point3) -> float:
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def _axis_angle(e: SpatialEntity) -> tuple[float, bool]:
    """Planar orientation angle of an entity's axis; second value marks the
    axis as directed (False = principal axis, defined only mod pi)."""
    if isinstance(e, OrientedPoint):
        vx, vy = e.v[0], e.v[1]
        if math.hypot(vx, vy) < geometry.EPS_GEOM:
            raise OrientationUndefinedError("direction is vertical; no planar angle")
        return math.atan2(vy, vx), True
    if isinstance(e, (Segment, Segment2)):
        v = geometry.direction_of(e)
        if math.hypot(v[0], v[1]) < geometry.EPS_GEOM:
            raise OrientationUndefinedError("segment is vertical; no planar angle")
        return math.atan2(v[1], v[0]), True
    if isinstance(e, Polygon2):
        # principal axis of the vertex scatter (undirected)
        pts = [(p.x, p.y) for p in e.vertices]
        mx = sum(p[0] for p in pts) / len(pts)
        my = sum(p[1] for p in pts) / len(pts)
        sxx = sum((p[0] - mx) ** 2 for p in pts)
        syy = sum((p[1] - my) ** 2 for p in pts)
        sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
        if abs(sxy) < 1e-15 and abs(sxx - syy) < 1e-15:
            raise OrientationUndefinedError("isotropic polygon has no principal axis")
        theta = 0.5 * math.atan2(2 * sxy, sxx - syy)
        return theta % math.pi, False
    raise OrientationUndefinedError(
        f"{type(e).__name__} carries no orientation axis")


def rotation(h: SpaceTimeHistory, t1: float, t2: float) -> float:
    """Signed planar rotation of the orientation axis between t1 and t2,
    wrapped to (-pi, pi] (a half turn reports +pi).  Principal-axis entities
    (polygons) are defined only mod pi, so their result lies in (-pi/2, pi/2].
    """
    a1, directed1 = _axis_angle(entity_at(h, t1))
    a2, _ = _axis_angle(entity_at(h, t2))
    d = a2 - a1
    if directed1:
        d = math.fmod(d + math.pi, 2 * math.pi)
        if d < 0:
            d += 2 * math.pi
        d -= math.pi
        return math.pi if d == -math.pi else d
    d = math.fmod(d + math.pi / 2, math.pi)
    if d < 0:
        d += math.pi
    d -= math.pi / 2
    return math.pi / 2 if d == -math.pi / 2 else d
