"""Synthetic scene builders shared by the fluent/interaction/navigation tests."""

from __future__ import annotations

from scenesem import geometry as g
from scenesem import sth


def scene_from_tracks(tracks: dict[str, list[tuple[float, object]]],
                      kinds: dict[str, sth.ObjectKind] | None = None,
                      parents: dict[str, str] | None = None,
                      classes: dict[str, str] | None = None,
                      frame: str = "sensor") -> sth.SceneRecording:
    """tracks: id -> [(t, entity-or-xyz-tuple), ...]."""
    kinds = kinds or {}
    parents = parents or {}
    classes = classes or {}
    histories = {}
    for oid, samples in tracks.items():
        ents = tuple(e if not isinstance(e, tuple) else g.Point3(*e)
                     for _, e in samples)
        times = tuple(t for t, _ in samples)
        obj = sth.DomainObject(oid, kinds.get(oid, sth.ObjectKind.OBJECT),
                               class_label=classes.get(oid, ""),
                               parent=parents.get(oid))
        histories[oid] = sth.SpaceTimeHistory(obj, times, ents)
    return sth.SceneRecording(histories, frame=frame)


def linear_track(p0, p1, t0: float, t1: float, dt: float):
    """Uniformly sampled straight-line point track from p0 to p1."""
    out = []
    n = round((t1 - t0) / dt)
    for i in range(n + 1):
        u = i / n
        t = t0 + i * dt
        out.append((t, tuple(a + u * (b - a) for a, b in zip(p0, p1))))
    return out


def hold_track(p, t0: float, t1: float, dt: float):
    out = []
    n = round((t1 - t0) / dt)
    for i in range(n + 1):
        out.append((t0 + i * dt, tuple(p)))
    return out


def concat_tracks(*parts):
    """Concatenate track segments, dropping duplicated junction samples."""
    out = list(parts[0])
    for part in parts[1:]:
        for t, p in part:
            if out and abs(t - out[-1][0]) < 1e-9:
                continue
            out.append((t, p))
    return out


def reversed_track(samples):
    """Time-mirror: sample at t becomes a sample at (t_first + t_last - t)."""
    t0, t1 = samples[0][0], samples[-1][0]
    return [(t0 + t1 - t, p) for t, p in reversed(samples)]


def reversed_scene(scene: sth.SceneRecording) -> sth.SceneRecording:
    """Time-mirror every history in the scene around the global span."""
    ts = scene.frame_times
    t0, t1 = ts[0], ts[-1]
    histories = {}
    for oid, h in scene.histories.items():
        times = tuple(t0 + t1 - t for t in reversed(h.times))
        ents = tuple(reversed(h.entities))
        histories[oid] = sth.SpaceTimeHistory(h.obj, times, ents)
    return sth.SceneRecording(histories, frame_rate=scene.frame_rate, frame=scene.frame)
