"""Spatio-temporal fluents over space-time histories.

A fluent is a named qualitative predicate over one or two tracked objects
(touching, inside, approaching, ...).  holds_at evaluates it at an instant,
holds_in over an interval, and detect_intervals returns all maximal intervals
in a recording.  Four pattern families share the machinery:

* instantaneous   - per-sample predicates (touching, inside, moving, ...)
                    merged into runs;
* monotone        - a scalar series must change monotonically within a
                    per-step tolerance and achieve a net change, with real
                    progress at both ends (approaching, growing, ascending, ...);
* staged crossing - the relation to a region must pass outside -> boundary ->
                    inside in order (moving_into, merging, and their mirrors);
* whole-window    - predicates of the entire track shape (curved, cyclic).

Detection evaluates at recorded sample times only; events are never invented
between frames.  A participant is known at time t when it has a sample there,
or when t falls inside its track between samples no more than gap_max apart
(linear interpolation).  Anything else - dropped low-confidence joints,
occlusions longer than gap_max - makes the fluent unknown at t, and unknown
stretches longer than gap_max break holding intervals.

The staged and monotone definitions for merging/splitting and
growing/shrinking interpret pictorial sketches; all thresholds live in
PatternConfig and are echoed into outputs.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from . import geometry, sth
from .calculi import Rcc8Relation, rcc8
from .config import CalculiConfig, Config
from .errors import (
    ArityMismatchError,
    UnknownFluentNameError,
    UnsupportedEntityKindError,
)
from .geometry import (
    AABox,
    Point2,
    Polygon2,
    Sphere,
    SpatialEntity,
    TimeInterval,
    point_in_polygon,
    polygon_boundary_dist,
)
from .sth import SceneRecording, SpaceTimeHistory


@dataclass(frozen=True)
class Fluent:
    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class FluentInterval:
    """A maximal interval over which a fluent holds; support records the
    contributing (known) sample times."""

    fluent: Fluent
    interval: TimeInterval
    support: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "name": self.fluent.name,
            "args": list(self.fluent.args),
            "t1": self.interval.t1,
            "t2": self.interval.t2,
        }


_INSTANT = "instant"
_MONOTONE = "monotone"
_STAGE = "stage"
_WINDOW = "window"

# pattern name -> (arity, family)
PATTERNS: dict[str, tuple[int, str]] = {
    "touching": (2, _INSTANT),
    "discrete": (2, _INSTANT),
    "overlapping": (2, _INSTANT),
    "inside": (2, _INSTANT),
    "moving": (1, _INSTANT),
    "stationary": (1, _INSTANT),
    "parallel": (2, _INSTANT),
    "attached": (2, _INSTANT),
    "approaching": (2, _MONOTONE),
    "moving_away": (2, _MONOTONE),
    "growing": (1, _MONOTONE),
    "shrinking": (1, _MONOTONE),
    "ascending": (1, _MONOTONE),
    "descending": (1, _MONOTONE),
    "moving_into": (2, _STAGE),
    "moving_out": (2, _STAGE),
    "merging": (2, _STAGE),
    "splitting": (2, _STAGE),
    "curved": (1, _WINDOW),
    "cyclic": (1, _WINDOW),
}


def _pattern_family(name: str) -> tuple[int, str]:
    try:
        return PATTERNS[name]
    except KeyError:
        raise UnknownFluentNameError(f"unknown fluent pattern: {name}") from None


# pair relation summary used by the region patterns
_OUT, _TOUCH, _OVER, _IN, _CONT, _EQ = range(6)

_RCC_TO_PAIR = {
    Rcc8Relation.DC: _OUT,
    Rcc8Relation.EC: _TOUCH,
    Rcc8Relation.PO: _OVER,
    Rcc8Relation.TPP: _IN,
    Rcc8Relation.NTPP: _IN,
    Rcc8Relation.TPPI: _CONT,
    Rcc8Relation.NTPPI: _CONT,
    Rcc8Relation.EQ: _EQ,
}

# crossing stage for moving_into: outside -> boundary contact -> inside
_PAIR_STAGE = {_OUT: 0, _TOUCH: 1, _OVER: 1, _CONT: 1, _IN: 2, _EQ: 2}


def _is_region(e: SpatialEntity) -> bool:
    return isinstance(e, (Polygon2, AABox, Sphere))


def _point_in_region(p: tuple[float, float], region) -> tuple[bool, float]:
    """(closed containment, distance to the region's boundary)."""
    if isinstance(region, Polygon2):
        chain = [(v.x, v.y) for v in region.vertices]
        return point_in_polygon(p, chain), polygon_boundary_dist(p, chain)
    if isinstance(region, AABox):
        chain = geometry._box_chain(region)
        return point_in_polygon(p, chain), polygon_boundary_dist(p, chain)
    if isinstance(region, Sphere):
        d = math.hypot(p[0] - region.center[0], p[1] - region.center[1])
        return d <= region.radius, abs(d - region.radius)
    raise UnsupportedEntityKindError(f"not a region: {type(region).__name__}")


def classify_pair(e1: SpatialEntity, e2: SpatialEntity, calc: CalculiConfig) -> int:
    """Summary relation of two floor-projected entities; point-like operands
    fall back to containment/contact predicates instead of RCC-8."""
    eps = calc.eps_rcc
    p1 = e1 if isinstance(e1, Point2) else None
    p2 = e2 if isinstance(e2, Point2) else None
    if _is_region(e1) and _is_region(e2):
        return _RCC_TO_PAIR[rcc8(e1, e2, calc)]
    if p1 is not None and _is_region(e2):
        contained, bd = _point_in_region((p1.x, p1.y), e2)
        if contained:
            return _IN
        return _TOUCH if bd <= eps else _OUT
    if p2 is not None and _is_region(e1):
        contained, bd = _point_in_region((p2.x, p2.y), e1)
        if contained:
            return _CONT
        return _TOUCH if bd <= eps else _OUT
    if p1 is not None and p2 is not None:
        d = math.hypot(p1.x - p2.x, p1.y - p2.y)
        return _EQ if d <= eps else _OUT
    # chains (segments/polylines) vs regions: contact-distance fallback
    d = geometry.distance(e1, e2)
    return _TOUCH if d <= eps else _OUT


def _pair_distance(e1: SpatialEntity, e2: SpatialEntity) -> float:
    if geometry.entity_dim(e1) != geometry.entity_dim(e2):
        e1 = geometry.project_to_floor(e1).entity
        e2 = geometry.project_to_floor(e2).entity
    return geometry.distance(e1, e2)


class PatternEvaluator:
    """Caches per-history lookups for one (scene, config) pair; all queries
    are pure, so one evaluator may serve any number of them."""

    def __init__(self, scene: SceneRecording, cfg: Config | None = None):
        self.scene = scene
        self.cfg = cfg or Config()
        self.pat = self.cfg.patterns
        self.calc = self.cfg.calculi
        self._window_cache: dict[tuple[str, float], tuple] = {}
        self._detected: dict[tuple, list[FluentInterval]] = {}

    # -- sample access --------------------------------------------------------

    def _known_entity(self, h: SpaceTimeHistory, t: float) -> SpatialEntity | None:
        """Entity at t, or None when the value is unrecoverable: outside the
        track, or inside a sampling hole longer than gap_max.  Floor-plan
        structures are static environment and exempt from the gap rule."""
        i = h.sample_index_at(t)
        if i is not None:
            return h.entities[i]
        if not h.covers(t):
            return None
        if h.obj.kind is not sth.ObjectKind.FLOORPLAN_STRUCTURE:
            j = bisect.bisect_right(h.times, t)
            if h.times[j] - h.times[j - 1] > self.pat.gap_max + sth.T_EXACT:
                return None
        return sth.entity_at(h, t)

    def _position(self, h: SpaceTimeHistory, t: float):
        return geometry.centroid(sth.entity_at(h, t))

    def _window_at(self, h: SpaceTimeHistory, t: float) -> tuple[float, float, tuple | None]:
        """(displacement, time span, direction) of the centroid over the
        sliding window [t - w/2, t + w/2] clipped to the track."""
        key = (h.obj.id, t)
        cached = self._window_cache.get(key)
        if cached is not None:
            return cached
        half = self.pat.window / 2.0
        lo = max(h.start, t - half)
        hi = min(h.end, t + half)
        if hi <= lo:
            out = (0.0, 0.0, None)
        else:
            a = self._position(h, lo)
            b = self._position(h, hi)
            d = (b.x - a.x, b.y - a.y, b.z - a.z)
            n = math.sqrt(d[0] ** 2 + d[1] ** 2 + d[2] ** 2)
            direction = None if n <= self.pat.eps_move else (d[0] / n, d[1] / n, d[2] / n)
            out = (n, hi - lo, direction)
        self._window_cache[key] = out
        return out

    def _is_moving(self, h: SpaceTimeHistory, t: float) -> bool:
        disp, span, _ = self._window_at(h, t)
        return disp > self.pat.v_still * span

    # -- grids ------------------------------------------------------------------

    def _grid(self, hists: list[SpaceTimeHistory],
              within: TimeInterval | None) -> list[float]:
        lo = max(h.start for h in hists)
        hi = min(h.end for h in hists)
        if within is not None:
            lo, hi = max(lo, within.t1), min(hi, within.t2)
        raw = sorted(t for h in hists for t in h.times
                     if lo - sth.T_EXACT <= t <= hi + sth.T_EXACT)
        # collapse times that only differ by float accumulation noise
        grid: list[float] = []
        for t in raw:
            if not grid or t - grid[-1] > sth.T_EXACT:
                grid.append(t)
        return grid

    def _resolve(self, fluent: Fluent) -> list[SpaceTimeHistory]:
        arity, _ = _pattern_family(fluent.name)
        if len(fluent.args) != arity:
            raise ArityMismatchError(
                f"{fluent.name} takes {arity} argument(s), got {len(fluent.args)}")
        return [self.scene.history(a) for a in fluent.args]

    # -- per-sample instantaneous predicates ----------------------------------

    def _instant_value(self, name: str, hists: list[SpaceTimeHistory],
                       t: float, entities: list[SpatialEntity]) -> bool:
        pat = self.pat
        if name == "touching":
            return _pair_distance(entities[0], entities[1]) <= pat.d_touch
        if name in ("discrete", "overlapping", "inside"):
            projected = [geometry.project_to_floor(e).entity for e in entities]
            rel = classify_pair(projected[0], projected[1], self.calc)
            if name == "discrete":
                return rel in (_OUT, _TOUCH)
            if name == "overlapping":
                return rel == _OVER
            return rel in (_IN, _EQ)
        if name in ("moving", "stationary"):
            moving = self._is_moving(hists[0], t)
            return moving if name == "moving" else not moving
        if name in ("parallel", "attached"):
            d1, s1, dir1 = self._window_at(hists[0], t)
            d2, s2, dir2 = self._window_at(hists[1], t)
            sp1 = d1 / s1 if s1 > 0 else 0.0
            sp2 = d2 / s2 if s2 > 0 else 0.0
            if name == "parallel":
                if not (self._is_moving(hists[0], t) and self._is_moving(hists[1], t)):
                    return False
                if dir1 is None or dir2 is None:
                    return False
                return geometry.vec_angle(dir1, dir2) <= pat.angle_parallel
            # attached: contact + co-moving; a sub-noise direction cannot
            # witness a heading disagreement, so the angle test needs both
            if _pair_distance(entities[0], entities[1]) > pat.d_touch:
                return False
            if abs(sp1 - sp2) >= pat.v_attach:
                return False
            if dir1 is not None and dir2 is not None:
                return geometry.vec_angle(dir1, dir2) <= pat.angle_parallel
            return True
        raise UnknownFluentNameError(name)

    def _instant_states(self, fluent: Fluent, within: TimeInterval | None):
        """(times, values) with values in {True, False, None=unknown}."""
        hists = self._resolve(fluent)
        grid = self._grid(hists, within)
        values: list[bool | None] = []
        for t in grid:
            ents = [self._known_entity(h, t) for h in hists]
            if any(e is None for e in ents):
                values.append(None)
                continue
            values.append(self._instant_value(fluent.name, hists, t, ents))
        return grid, values

    # -- scalar series for monotone patterns ----------------------------------

    def _series(self, fluent: Fluent, within: TimeInterval | None):
        """(times, values) scalar series; None marks unknown samples.  Values
        are oriented so that the pattern corresponds to a DECREASE."""
        hists = self._resolve(fluent)
        grid = self._grid(hists, within)
        name = fluent.name
        out: list[float | None] = []
        for t in grid:
            ents = [self._known_entity(h, t) for h in hists]
            if any(e is None for e in ents):
                out.append(None)
                continue
            if name in ("approaching", "moving_away"):
                v = _pair_distance(ents[0], ents[1])
                out.append(v if name == "approaching" else -v)
            elif name in ("growing", "shrinking"):
                s = geometry.size(ents[0])
                if s <= 0:
                    out.append(None)  # size-free entities cannot grow
                else:
                    v = math.log(s)
                    out.append(-v if name == "growing" else v)
            elif name in ("ascending", "descending"):
                z = geometry.centroid(ents[0]).z
                out.append(-z if name == "ascending" else z)
            else:
                raise UnknownFluentNameError(name)
        return grid, out

    def _monotone_params(self, name: str) -> tuple[float, float, float]:
        """(per-step tolerance, boundary progress threshold, minimum net change)."""
        pat = self.pat
        if name in ("approaching", "moving_away"):
            return pat.eps_d, pat.eps_d, pat.delta_min
        if name in ("growing", "shrinking"):
            return pat.size_step_tol, pat.size_step_tol, math.log1p(pat.size_change_min)
        if name in ("ascending", "descending"):
            return pat.eps_d, pat.eps_d, pat.z_lift
        raise UnknownFluentNameError(name)

    # -- stages for crossing patterns ------------------------------------------

    def _stages(self, fluent: Fluent, within: TimeInterval | None):
        """(times, stages, pair distances); stages are oriented so the pattern
        corresponds to a non-decreasing run from its first to its last stage."""
        hists = self._resolve(fluent)
        grid = self._grid(hists, within)
        name = fluent.name
        stages: list[int | None] = []
        dists: list[float | None] = []
        for t in grid:
            ents = [self._known_entity(h, t) for h in hists]
            if any(e is None for e in ents):
                stages.append(None)
                dists.append(None)
                continue
            proj = [geometry.project_to_floor(e).entity for e in ents]
            rel = classify_pair(proj[0], proj[1], self.calc)
            dists.append(geometry.distance(proj[0], proj[1]))
            if name in ("moving_into", "moving_out"):
                s = _PAIR_STAGE[rel]
                stages.append(s if name == "moving_into" else 2 - s)
            else:  # merging / splitting: separate (0/1) vs joined (1/0)
                s = 0 if rel in (_OUT, _TOUCH) else 1
                stages.append(s if name == "merging" else 1 - s)
        return grid, stages, dists

    def _stage_targets(self, name: str) -> tuple[int, int]:
        if name in ("moving_into", "moving_out"):
            return 0, 2
        return 0, 1

    def _stage_run_ok(self, name: str, stages, dists, i: int, j: int) -> bool:
        """Full staged condition on known samples i..j (inclusive, local)."""
        first, last = self._stage_targets(name)
        if stages[i] != first or stages[j] != last:
            return False
        prev = stages[i]
        for k in range(i + 1, j + 1):
            if stages[k] < prev:
                return False
            prev = stages[k]
        if name in ("merging", "splitting"):
            # while separate, the footprint gap may not widen (merging) /
            # narrow (splitting) beyond the step tolerance; separate samples
            # sit at stage 0 for merging and stage 1 for splitting
            sep_stage = 0 if name == "merging" else 1
            run = [dists[k] for k in range(i, j + 1) if stages[k] == sep_stage]
            steps = list(zip(run, run[1:]))
            if name == "merging":
                return all(b - a <= self.pat.eps_d for a, b in steps)
            return all(a - b <= self.pat.eps_d for a, b in steps)
        return True

    # -- whole-window predicates -------------------------------------------------

    def _window_pred(self, name: str, pos: list, i: int, j: int,
                     plen: list[float]) -> bool:
        """Track-shape predicate over history sample indices i..j."""
        if j - i < 2:
            return False
        a, b = pos[i], pos[j]
        if name == "cyclic":
            closure = math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))
            return closure <= self.pat.eps_cyclic and \
                plen[j] - plen[i] > 4 * self.pat.eps_cyclic
        # curved: max deviation from the start-end chord
        chord = math.dist((a.x, a.y, a.z), (b.x, b.y, b.z))
        if chord < geometry.EPS_GEOM:
            dev = max(math.dist((p.x, p.y, p.z), (a.x, a.y, a.z))
                      for p in pos[i + 1:j])
            return dev > self.pat.curvature_min
        ux, uy, uz = (b.x - a.x) / chord, (b.y - a.y) / chord, (b.z - a.z) / chord
        dev = 0.0
        for p in pos[i + 1:j]:
            wx, wy, wz = p.x - a.x, p.y - a.y, p.z - a.z
            along = wx * ux + wy * uy + wz * uz
            d2 = wx * wx + wy * wy + wz * wz - along * along
            dev = max(dev, math.sqrt(max(0.0, d2)))
        return dev > self.pat.curvature_min

    # -- shared run machinery -----------------------------------------------------

    def _known_segments(self, grid, values):
        """Split known samples into segments at unknown gaps > gap_max.
        Yields lists of (time, value)."""
        known = [(grid[k], values[k]) for k in range(len(grid)) if values[k] is not None]
        seg: list = []
        for item in known:
            if seg and item[0] - seg[-1][0] > self.pat.gap_max + sth.T_EXACT:
                yield seg
                seg = []
            seg.append(item)
        if seg:
            yield seg

    def _emit(self, fluent: Fluent, seg, i: int, j: int) -> FluentInterval | None:
        t1, t2 = seg[i][0], seg[j][0]
        if j <= i or t2 - t1 < self.pat.dur_min:
            return None
        support = tuple(seg[k][0] for k in range(i, j + 1))
        return FluentInterval(fluent, TimeInterval(t1, t2), support)

    # -- public evaluation ---------------------------------------------------------

    def holds_at(self, fluent: Fluent, t: float) -> bool | None:
        """Instantaneous truth at t; None when required data is missing.

        Trajectory-level patterns (approaching, moving_into, ...) hold at t
        when t lies inside one of their detected maximal intervals.
        """
        _, family = _pattern_family(fluent.name)
        hists = self._resolve(fluent)
        if family != _INSTANT:
            return any(fi.interval.contains(t, sth.T_EXACT)
                       for fi in self.detect(fluent))
        entities = [self._known_entity(h, t) for h in hists]
        if any(e is None for e in entities):
            return None
        return self._instant_value(fluent.name, hists, t, entities)

    def holds_in(self, fluent: Fluent, interval: TimeInterval) -> bool:
        _, family = _pattern_family(fluent.name)
        if family == _INSTANT:
            grid, values = self._instant_states(fluent, interval)
            known = [(t, v) for t, v in zip(grid, values) if v is not None]
            if not known or any(v is False for _, v in known):
                return False
            gaps = [b[0] - a[0] for a, b in zip(known, known[1:])]
            gaps.append(known[0][0] - interval.t1)
            gaps.append(interval.t2 - known[-1][0])
            return all(g <= self.pat.gap_max + sth.T_EXACT for g in gaps)
        if family == _MONOTONE:
            seg = self._single_segment(interval, *self._series(fluent, interval)[:2])
            if seg is None:
                return False
            vals = [v for _, v in seg]
            if len(vals) < 2:
                return False
            tol, prog, net = self._monotone_params(fluent.name)
            if any(b - a > tol for a, b in zip(vals, vals[1:])):
                return False
            if not (vals[1] - vals[0] <= -prog and vals[-1] - vals[-2] <= -prog):
                return False
            return vals[0] - vals[-1] >= net
        if family == _STAGE:
            grid, stages, dists = self._stages(fluent, interval)
            seg = self._single_segment(interval, grid, stages)
            if seg is None or len(seg) < 2:
                return False
            sts = [v for _, v in seg]
            dist_by_t = dict(zip(grid, dists))
            ds = [dist_by_t[t] for t, _ in seg]
            return self._stage_run_ok(fluent.name, sts, ds, 0, len(sts) - 1)
        # window family
        hists = self._resolve(fluent)
        h = hists[0]
        grid = self._grid(hists, interval)
        idxs = [i for i in (h.sample_index_at(t) for t in grid) if i is not None]
        if len(idxs) < 3:
            return False
        pos = [geometry.centroid(e) for e in h.entities]
        plen = _prefix_lengths(pos)
        return self._window_pred(fluent.name, pos, idxs[0], idxs[-1], plen)

    def _single_segment(self, interval, grid, values):
        """The unique known segment covering the interval within gap_max,
        or None when the data fragments."""
        segs = list(self._known_segments(grid, values))
        if len(segs) != 1:
            return None
        seg = segs[0]
        if seg[0][0] - interval.t1 > self.pat.gap_max + sth.T_EXACT or \
           interval.t2 - seg[-1][0] > self.pat.gap_max + sth.T_EXACT:
            return None
        return seg

    # -- detection ---------------------------------------------------------------

    def detect(self, fluent: Fluent, within: TimeInterval | None = None) -> list[FluentInterval]:
        key = (fluent.name, fluent.args,
               None if within is None else (within.t1, within.t2))
        cached = self._detected.get(key)
        if cached is not None:
            return cached
        _, family = _pattern_family(fluent.name)
        if family == _INSTANT:
            out = self._detect_instant(fluent, within)
        elif family == _MONOTONE:
            out = self._detect_monotone(fluent, within)
        elif family == _STAGE:
            out = self._detect_stage(fluent, within)
        else:
            out = self._detect_window(fluent, within)
        out.sort(key=lambda fi: (fi.interval.t1, fi.fluent.name, fi.fluent.args))
        self._detected[key] = out
        return out

    def _detect_instant(self, fluent, within):
        grid, values = self._instant_states(fluent, within)
        out = []
        for seg in self._known_segments(grid, values):
            start = last_true = None
            for k, (_, v) in enumerate(seg):
                if v:
                    if start is None:
                        start = k
                    last_true = k
                else:
                    if start is not None:
                        fi = self._emit(fluent, seg, start, last_true)
                        if fi:
                            out.append(fi)
                    start = last_true = None
            if start is not None:
                fi = self._emit(fluent, seg, start, last_true)
                if fi:
                    out.append(fi)
        return out

    def _detect_monotone(self, fluent, within):
        tol, prog, net = self._monotone_params(fluent.name)
        grid, series = self._series(fluent, within)
        out = []
        for seg in self._known_segments(grid, series):
            vals = [v for _, v in seg]
            n = len(vals)
            i = 0
            while i < n - 1:
                j = i
                while j + 1 < n and vals[j + 1] - vals[j] <= tol:
                    j += 1
                if j > i:
                    # trim both ends to steps showing real progress
                    a, b = i, j
                    while a < b and not vals[a + 1] - vals[a] <= -prog:
                        a += 1
                    while b > a and not vals[b] - vals[b - 1] <= -prog:
                        b -= 1
                    if b > a and vals[a] - vals[b] >= net:
                        fi = self._emit(fluent, seg, a, b)
                        if fi:
                            out.append(fi)
                i = j + 1 if j > i else i + 1
        return out

    def _detect_stage(self, fluent, within):
        grid, stages, dists = self._stages(fluent, within)
        dist_by_t = dict(zip(grid, dists))
        out = []
        for seg in self._known_segments(grid, stages):
            sts = [v for _, v in seg]
            ds = [dist_by_t[t] for t, _ in seg]
            n = len(sts)
            i = 0
            while i < n - 1:
                j = i
                while j + 1 < n and sts[j + 1] >= sts[j]:
                    j += 1
                if j > i and self._stage_run_ok(fluent.name, sts, ds, i, j):
                    fi = self._emit(fluent, seg, i, j)
                    if fi:
                        out.append(fi)
                i = j + 1 if j > i else i + 1
        return out

    def _detect_window(self, fluent, within):
        hists = self._resolve(fluent)
        h = hists[0]
        grid = self._grid(hists, within)
        idxs = [i for i in (h.sample_index_at(t) for t in grid) if i is not None]
        pos = [geometry.centroid(e) for e in h.entities]
        plen = _prefix_lengths(pos)
        n = len(idxs)
        memo: dict[tuple[int, int], bool] = {}

        def pred(i: int, j: int) -> bool:
            if not (0 <= i < j < n):
                return False
            key = (i, j)
            if key not in memo:
                memo[key] = self._window_pred(fluent.name, pos, idxs[i], idxs[j], plen)
            return memo[key]

        seg = [(h.times[k], None) for k in idxs]
        out = []
        for i in range(n):
            for j in range(i + 2, n):
                if pred(i, j) and not pred(i - 1, j) and not pred(i, j + 1):
                    fi = self._emit(fluent, seg, i, j)
                    if fi:
                        out.append(fi)
        return out


def _prefix_lengths(pos) -> list[float]:
    plen = [0.0]
    for a, b in zip(pos, pos[1:]):
        plen.append(plen[-1] + math.dist((a.x, a.y, a.z), (b.x, b.y, b.z)))
    return plen


# ---------------------------------------------------------------------------
# module-level convenience API
# ---------------------------------------------------------------------------

def holds_at(fluent: Fluent, t: float, scene: SceneRecording,
             cfg: Config | None = None) -> bool | None:
    return PatternEvaluator(scene, cfg).holds_at(fluent, t)


def holds_in(fluent: Fluent, interval: TimeInterval, scene: SceneRecording,
             cfg: Config | None = None) -> bool:
    return PatternEvaluator(scene, cfg).holds_in(fluent, interval)


def eval_approaching(o1: str, o2: str, interval: TimeInterval,
                     scene: SceneRecording, cfg: Config | None = None) -> bool:
    """True when the sampled distance between o1 and o2 falls monotonically
    (within the per-step tolerance) by at least delta_min over the interval."""
    return holds_in(Fluent("approaching", (o1, o2)), interval, scene, cfg)


def motion_pattern(name: str, args: tuple[str, ...], interval: TimeInterval,
                   scene: SceneRecording, cfg: Config | None = None) -> bool:
    return holds_in(Fluent(name, tuple(args)), interval, scene, cfg)


def detect_intervals(fluent: Fluent, scene: SceneRecording,
                     cfg: Config | None = None,
                     within: TimeInterval | None = None) -> list[FluentInterval]:
    return PatternEvaluator(scene, cfg).detect(fluent, within)
