"""Scripted skeleton-and-object clips used by the interaction, CLI, and
acceptance tests.

The sandwich clip replays, at 10 Hz: the right hand closes on a bread slice
(distance falls 1 m/s, making contact at t=2), holds still while grasping
(2..3), lifts it 0.4 m (3..4), lowers it back to the board (4..5), and lets
go (hand retreats from t=5).  All expected event boundaries below are derived
by hand from the pattern definitions and these kinematics:

  approaching(hand, bread) = [0, 2]        (progress stops at contact)
  touching(hand, bread)    = [2, 5]        (contact until release)
  stationary(hand)         = [2.2, 2.8]    (half-window blur at both ends)
  ascending(bread)         = [3, 4]
  descending(bread)        = [4, 5]
  reach_for                = [0, 5]
  pick_up                  = [2.2, 4]      (grasp start .. lift end)
  put_down                 = [4, 5]        (lower start .. touch end)
"""

from __future__ import annotations

from scenesem import geometry as g
from scenesem import sth

DT = 0.1
LIFT_SPEED = 0.4  # m/s vertical, over one second


def _hand_xyz(t: float) -> tuple[float, float, float]:
    if t <= 2.0:
        return (0.56 + (2.0 - t), 0.0, 0.75)
    if t <= 3.0:
        return (0.56, 0.0, 0.75)
    if t <= 4.0:
        return (0.56, 0.0, 0.75 + LIFT_SPEED * (t - 3.0))
    if t <= 5.0:
        return (0.56, 0.0, 0.75 + LIFT_SPEED * (5.0 - t))
    return (0.56 + (t - 5.0), 0.0, 0.75)


def _bread_dz(t: float) -> float:
    if t <= 3.0 or t >= 5.0:
        return 0.0
    if t <= 4.0:
        return LIFT_SPEED * (t - 3.0)
    return LIFT_SPEED * (5.0 - t)


def _bread_box(t: float) -> g.AABox:
    dz = _bread_dz(t)
    return g.AABox((0.45, -0.05, 0.70 + dz), (0.55, 0.05, 0.80 + dz))


def _times(t_end: float) -> list[float]:
    return [round(i * DT, 6) for i in range(int(round(t_end / DT)) + 1)]


def _scene(t_end: float) -> sth.SceneRecording:
    times = _times(t_end)
    person = sth.DomainObject("p1", sth.ObjectKind.PERSON, class_label="person")
    hand_r = sth.DomainObject("p1/hand_right", sth.ObjectKind.BODY_PART,
                              class_label="hand_right", parent="p1")
    hand_l = sth.DomainObject("p1/hand_left", sth.ObjectKind.BODY_PART,
                              class_label="hand_left", parent="p1")
    bread = sth.DomainObject("bread", sth.ObjectKind.OBJECT, class_label="bread")
    histories = {
        "p1": sth.SpaceTimeHistory(
            person, tuple(times), tuple(g.Point3(0.0, 0.0, 1.0) for _ in times)),
        "p1/hand_right": sth.SpaceTimeHistory(
            hand_r, tuple(times), tuple(g.Point3(*_hand_xyz(t)) for t in times)),
        "p1/hand_left": sth.SpaceTimeHistory(
            hand_l, tuple(times), tuple(g.Point3(-0.3, 0.2, 1.0) for _ in times)),
        "bread": sth.SpaceTimeHistory(
            bread, tuple(times), tuple(_bread_box(t) for t in times)),
    }
    return sth.SceneRecording(histories, frame_rate=1.0 / DT)


def reach_touch_scene() -> sth.SceneRecording:
    """Approach [0,2] then sustained contact [2,3]; the recording ends there,
    so reach_for spans exactly [0, 3]."""
    return _scene(3.0)


def sandwich_scene() -> sth.SceneRecording:
    """The full reach / pick up / move back clip described in the module
    docstring; the recording runs to t=5.5."""
    return _scene(5.5)


def sandwich_frames() -> list[dict]:
    """The sandwich clip in the scene wire format (one dict per frame)."""
    frames = []
    for t in _times(5.5):
        hx, hy, hz = _hand_xyz(t)
        box = _bread_box(t)
        frames.append({
            "t": t,
            "persons": [{
                "id": "p1",
                "joints": {
                    "spine_base": [0.0, 0.0, 1.0],
                    "hand_right": [hx, hy, hz],
                    "hand_left": [-0.3, 0.2, 1.0],
                },
                "confidences": {"spine_base": 1.0, "hand_right": 1.0, "hand_left": 1.0},
            }],
            "objects": [{
                "id": "bread",
                "class": "bread",
                "aabb": [list(box.lo), list(box.hi)],
            }],
        })
    return frames


# expected boundaries, derived in the module docstring
EXPECTED_SANDWICH_EVENTS = [
    ("reach_for", 0.0, 5.0),
    ("pick_up", 2.2, 4.0),
    ("put_down", 4.0, 5.0),
]
