"""Spatial and temporal primitives with exact metric operations.

Entities are immutable values: points, oriented points, segments, polylines,
simple polygons, axis-aligned boxes (2D rectangles / 3D cuboids), and spheres
(circles in 2D).  All regions are treated as closed point sets, so touching
boundaries yield distance 0.  Units are meters and seconds throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import (
    DegenerateAreaError,
    DimensionMismatchError,
    InterpolationError,
    SelfIntersectingError,
    ZeroVectorError,
)

EPS_GEOM = 1e-9  # module-wide geometric predicate tolerance, meters


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


# ---------------------------------------------------------------------------
# entity types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not _finite(self.x, self.y, self.z):
            raise ValueError("point coordinates must be finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not _finite(self.x, self.y):
            raise ValueError("point coordinates must be finite")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class OrientedPoint:
    """A position plus a unit direction vector."""

    p: Point3
    v: tuple[float, float, float]

    def __post_init__(self):
        if not _finite(*self.v):
            raise ValueError("direction must be finite")
        n = math.sqrt(sum(c * c for c in self.v))
        if abs(n - 1.0) > 1e-9:
            raise ValueError("direction must be unit length (within 1e-9)")


@dataclass(frozen=True)
class Segment:
    p1: Point3
    p2: Point3

    def __post_init__(self):
        if self.p1 == self.p2:
            raise ValueError("segment endpoints must differ")


@dataclass(frozen=True)
class Segment2:
    p1: Point2
    p2: Point2

    def __post_init__(self):
        if self.p1 == self.p2:
            raise ValueError("segment endpoints must differ")


@dataclass(frozen=True)
class Polyline:
    """Open 3D chain whose floor projection must not self-intersect."""

    vertices: tuple[Point3, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise ValueError("polyline needs at least 2 vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("consecutive polyline vertices must differ")
        chain = [(p.x, p.y) for p in vs]
        _check_chain_simple(chain, closed=False)


@dataclass(frozen=True)
class Polyline2:
    vertices: tuple[Point2, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise ValueError("polyline needs at least 2 vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("consecutive polyline vertices must differ")
        _check_chain_simple([(p.x, p.y) for p in vs], closed=False)


@dataclass(frozen=True)
class Polygon2:
    """Simple polygon, counter-clockwise, positive area. Use validate_polygon
    to normalize arbitrary vertex input."""

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        chain = [(p.x, p.y) for p in vs]
        _check_chain_simple(chain, closed=True, adjacent_checks=False)
        area2 = _signed_area2(chain)
        if abs(area2) / 2.0 < 1e-12:
            raise DegenerateAreaError("polygon area below 1e-12 m^2")
        if area2 < 0:
            raise ValueError("polygon vertices must be counter-clockwise")
        _check_chain_simple(chain, closed=True)

    @property
    def area(self) -> float:
        return _signed_area2([(p.x, p.y) for p in self.vertices]) / 2.0


@dataclass(frozen=True)
class AABox:
    """Axis-aligned box; 2D rectangle or 3D cuboid depending on corner length."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo, hi = tuple(self.lo), tuple(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if len(lo) != len(hi) or len(lo) not in (2, 3):
            raise ValueError("box corners must both be 2D or both 3D")
        if not _finite(*lo, *hi):
            raise ValueError("box corners must be finite")
        if any(a >= b for a, b in zip(lo, hi)):
            raise ValueError("box requires lo < hi on every axis")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def center(self) -> tuple[float, ...]:
        return tuple((a + b) / 2.0 for a, b in zip(self.lo, self.hi))


@dataclass(frozen=True)
class Sphere:
    """Sphere (3D center) or circle (2D center)."""

    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        c = tuple(self.center)
        object.__setattr__(self, "center", c)
        if len(c) not in (2, 3) or not _finite(*c):
            raise ValueError("sphere center must be a finite 2D or 3D point")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError("sphere radius must be positive")

    @property
    def dim(self) -> int:
        return len(self.center)


TimePoint = float


@dataclass(frozen=True)
class TimeInterval:
    t1: float
    t2: float

    def __post_init__(self):
        if not _finite(self.t1, self.t2):
            raise ValueError("interval endpoints must be finite")
        if not self.t1 < self.t2:
            raise ValueError("interval requires t1 < t2")

    @property
    def duration(self) -> float:
        return self.t2 - self.t1

    def contains(self, t: float, eps: float = 0.0) -> bool:
        return self.t1 - eps <= t <= self.t2 + eps


SpatialEntity = Union[
    Point3, Point2, OrientedPoint, Segment, Segment2,
    Polyline, Polyline2, Polygon2, AABox, Sphere,
]


class FloorProjection(NamedTuple):
    """Result of projecting onto the floor plane; degenerate means the
    projection collapsed to a lower-dimensional entity (e.g. vertical limb)."""

    entity: SpatialEntity
    degenerate: bool


# ---------------------------------------------------------------------------
# low-level planar helpers (tuple-based to stay allocation-light)
# ---------------------------------------------------------------------------

def _signed_area2(chain: list[tuple[float, float]]) -> float:
    s = 0.0
    n = len(chain)
    for i in range(n):
        x1, y1 = chain[i]
        x2, y2 = chain[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def _cross(ox, oy, ax, ay, bx, by) -> float:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _seg_intersect_2d(p1, p2, q1, q2) -> bool:
    """Closed-segment intersection test (includes endpoint and collinear touch)."""
    d1 = _cross(q1[0], q1[1], q2[0], q2[1], p1[0], p1[1])
    d2 = _cross(q1[0], q1[1], q2[0], q2[1], p2[0], p2[1])
    d3 = _cross(p1[0], p1[1], p2[0], p2[1], q1[0], q1[1])
    d4 = _cross(p1[0], p1[1], p2[0], p2[1], q2[0], q2[1])
    if ((d1 > 0) != (d2 > 0) or d1 == 0 or d2 == 0) and \
       ((d3 > 0) != (d4 > 0) or d3 == 0 or d4 == 0):
        if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
            return True
        # collinear / endpoint cases: fall through to bounding checks
        def on(a, b, c):
            return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and
                    min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))
        if d1 == 0 and on(q1, q2, p1):
            return True
        if d2 == 0 and on(q1, q2, p2):
            return True
        if d3 == 0 and on(p1, p2, q1):
            return True
        if d4 == 0 and on(p1, p2, q2):
            return True
    return False


def _chain_edges(chain, closed):
    n = len(chain)
    last = n if closed else n - 1
    for i in range(last):
        yield i, chain[i], chain[(i + 1) % n]


def _check_chain_simple(chain: list[tuple[float, float]], closed: bool,
                        adjacent_checks: bool = True) -> None:
    """Reject chains whose non-adjacent edges touch, or whose adjacent edges
    overlap beyond the shared vertex. Degenerate (zero-length) projected edges
    are skipped so vertical 3D chains stay valid."""
    edges = [(i, a, b) for i, a, b in _chain_edges(chain, closed)
             if (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 > 0.0]
    n_all = len(chain) if closed else len(chain) - 1
    for ii in range(len(edges)):
        i, p1, p2 = edges[ii]
        for jj in range(ii + 1, len(edges)):
            j, q1, q2 = edges[jj]
            adjacent = (j - i) % n_all in (1, n_all - 1) if closed else j - i == 1
            if adjacent:
                if not adjacent_checks:
                    continue
                # shared vertex allowed; collinear overlap is not
                shared = p2 if j == (i + 1) % n_all else p1
                other_p = p1 if shared == p2 else p2
                other_q = q2 if shared == q1 else q1
                d = _cross(q1[0], q1[1], q2[0], q2[1], other_p[0], other_p[1])
                if d == 0.0:
                    # collinear: self-intersects when the edges point the same way
                    vx1, vy1 = other_p[0] - shared[0], other_p[1] - shared[1]
                    vx2, vy2 = other_q[0] - shared[0], other_q[1] - shared[1]
                    if vx1 * vx2 + vy1 * vy2 > 0:
                        raise SelfIntersectingError("adjacent edges fold back")
            elif _seg_intersect_2d(p1, p2, q1, q2):
                raise SelfIntersectingError(
                    f"edges {i} and {j} intersect")


def _point_seg_dist2d(px, py, ax, ay, bx, by) -> float:
    vx, vy = bx - ax, by - ay
    wx, wy = px - ax, py - ay
    vv = vx * vx + vy * vy
    t = 0.0 if vv == 0 else max(0.0, min(1.0, (wx * vx + wy * vy) / vv))
    dx, dy = px - (ax + t * vx), py - (ay + t * vy)
    return math.hypot(dx, dy)


def _seg_seg_dist2d(p1, p2, q1, q2) -> float:
    if _seg_intersect_2d(p1, p2, q1, q2):
        return 0.0
    return min(
        _point_seg_dist2d(p1[0], p1[1], q1[0], q1[1], q2[0], q2[1]),
        _point_seg_dist2d(p2[0], p2[1], q1[0], q1[1], q2[0], q2[1]),
        _point_seg_dist2d(q1[0], q1[1], p1[0], p1[1], p2[0], p2[1]),
        _point_seg_dist2d(q2[0], q2[1], p1[0], p1[1], p2[0], p2[1]),
    )


def point_in_polygon(p: tuple[float, float], chain: list[tuple[float, float]]) -> bool:
    """Closed containment: boundary points count as inside."""
    x, y = p
    n = len(chain)
    inside = False
    for i in range(n):
        x1, y1 = chain[i]
        x2, y2 = chain[(i + 1) % n]
        # boundary hit
        if _point_seg_dist2d(x, y, x1, y1, x2, y2) == 0.0:
            return True
        if (y1 > y) != (y2 > y):
            xs = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xs > x:
                inside = not inside
    return inside


def polygon_boundary_dist(p: tuple[float, float], chain) -> float:
    n = len(chain)
    return min(
        _point_seg_dist2d(p[0], p[1], chain[i][0], chain[i][1],
                          chain[(i + 1) % n][0], chain[(i + 1) % n][1])
        for i in range(n)
    )


def _point_polygon_dist(p, chain) -> float:
    if point_in_polygon(p, chain):
        return 0.0
    return polygon_boundary_dist(p, chain)


# 3D primitives ---------------------------------------------------------------

def _p3_dist(a: tuple, b: tuple) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def _point_seg_dist3d(p, a, b) -> float:
    v = tuple(bb - aa for aa, bb in zip(a, b))
    w = tuple(pp - aa for aa, pp in zip(a, p))
    vv = sum(c * c for c in v)
    t = 0.0 if vv == 0 else max(0.0, min(1.0, sum(x * y for x, y in zip(w, v)) / vv))
    c = tuple(aa + t * cc for aa, cc in zip(a, v))
    return _p3_dist(p, c)


def _seg_seg_dist3d(p1, p2, q1, q2) -> float:
    # closest points between two 3D segments (Eberly's clamped quadratic)
    u = tuple(b - a for a, b in zip(p1, p2))
    v = tuple(b - a for a, b in zip(q1, q2))
    w0 = tuple(a - b for a, b in zip(p1, q1))
    a = sum(c * c for c in u)
    b = sum(x * y for x, y in zip(u, v))
    c = sum(cc * cc for cc in v)
    d = sum(x * y for x, y in zip(u, w0))
    e = sum(x * y for x, y in zip(v, w0))
    den = a * c - b * b
    if den > 1e-15:
        s = max(0.0, min(1.0, (b * e - c * d) / den))
    else:
        s = 0.0
    t = (b * s + e) / c if c > 1e-15 else 0.0
    t = max(0.0, min(1.0, t))
    # re-clamp s for the clamped t
    if a > 1e-15:
        s = max(0.0, min(1.0, (b * t - d) / a))
    ps = tuple(aa + s * uu for aa, uu in zip(p1, u))
    qt = tuple(aa + t * vv for aa, vv in zip(q1, v))
    return _p3_dist(ps, qt)


def _point_box_dist(p: tuple, lo: tuple, hi: tuple) -> float:
    return math.sqrt(sum(max(l - x, 0.0, x - h) ** 2 for x, l, h in zip(p, lo, hi)))


def _seg_box_dist(a: tuple, b: tuple, lo: tuple, hi: tuple) -> float:
    # distance(t) = dist(a + t*(b-a), box) is convex in t: ternary search is exact
    f = lambda t: _point_box_dist(tuple(aa + t * (bb - aa) for aa, bb in zip(a, b)), lo, hi)
    left, right = 0.0, 1.0
    for _ in range(200):
        m1 = left + (right - left) / 3.0
        m2 = right - (right - left) / 3.0
        if f(m1) <= f(m2):
            right = m2
        else:
            left = m1
    return f((left + right) / 2.0)


# ---------------------------------------------------------------------------
# normalized geometric views
# ---------------------------------------------------------------------------

def entity_dim(e: SpatialEntity) -> int:
    if isinstance(e, (Point3, OrientedPoint, Segment, Polyline)):
        return 3
    if isinstance(e, (Point2, Segment2, Polyline2, Polygon2)):
        return 2
    if isinstance(e, (AABox, Sphere)):
        return e.dim
    raise TypeError(f"not a spatial entity: {type(e).__name__}")


def _box_chain(b: AABox) -> list[tuple[float, float]]:
    (x1, y1), (x2, y2) = b.lo[:2], b.hi[:2]
    return [(x1, y1), (x2, y1), (x2, y2), (x1, y2)]


def _poly_chain(p: Polygon2) -> list[tuple[float, float]]:
    return [(v.x, v.y) for v in p.vertices]


def _as_segments2(e) -> list[tuple[tuple, tuple]]:
    if isinstance(e, Segment2):
        return [((e.p1.x, e.p1.y), (e.p2.x, e.p2.y))]
    if isinstance(e, Polyline2):
        c = [(v.x, v.y) for v in e.vertices]
        return list(zip(c, c[1:]))
    raise TypeError


def _as_segments3(e) -> list[tuple[tuple, tuple]]:
    if isinstance(e, Segment):
        return [(e.p1.as_tuple(), e.p2.as_tuple())]
    if isinstance(e, Polyline):
        c = [v.as_tuple() for v in e.vertices]
        return list(zip(c, c[1:]))
    raise TypeError


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def validate_polygon(vertices) -> Polygon2:
    """Normalize raw vertex input into a CCW simple polygon.

    Accepts (x, y) pairs or Point2 values; reverses clockwise rings; raises
    SelfIntersectingError / DegenerateAreaError for invalid chains.
    """
    pts = [v if isinstance(v, Point2) else Point2(float(v[0]), float(v[1])) for v in vertices]
    if len(pts) < 3:
        raise ValueError("polygon needs at least 3 vertices")
    # drop exact consecutive duplicates (including the closing wrap)
    dedup: list[Point2] = []
    for p in pts:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        raise DegenerateAreaError("fewer than 3 distinct vertices")
    chain = [(p.x, p.y) for p in dedup]
    # transversal crossings first: a bow-tie has zero signed area by lobe
    # cancellation, but must still report as self-intersecting
    _check_chain_simple(chain, closed=True, adjacent_checks=False)
    area2 = _signed_area2(chain)
    if abs(area2) / 2.0 < 1e-12:
        raise DegenerateAreaError("polygon area below 1e-12 m^2")
    _check_chain_simple(chain, closed=True)
    if area2 < 0:
        dedup.reverse()
    return Polygon2(tuple(dedup))


def size(e: SpatialEntity) -> float:
    """Length for 1D entities, area for 2D regions, volume for 3D regions;
    points and oriented points have size 0."""
    if isinstance(e, (Point3, Point2, OrientedPoint)):
        return 0.0
    if isinstance(e, Segment):
        return _p3_dist(e.p1.as_tuple(), e.p2.as_tuple())
    if isinstance(e, Segment2):
        return math.hypot(e.p2.x - e.p1.x, e.p2.y - e.p1.y)
    if isinstance(e, Polyline):
        return sum(_p3_dist(a.as_tuple(), b.as_tuple())
                   for a, b in zip(e.vertices, e.vertices[1:]))
    if isinstance(e, Polyline2):
        return sum(math.hypot(b.x - a.x, b.y - a.y)
                   for a, b in zip(e.vertices, e.vertices[1:]))
    if isinstance(e, Polygon2):
        return e.area
    if isinstance(e, AABox):
        out = 1.0
        for a, b in zip(e.lo, e.hi):
            out *= (b - a)
        return out
    if isinstance(e, Sphere):
        if e.dim == 2:
            return math.pi * e.radius ** 2
        return 4.0 / 3.0 * math.pi * e.radius ** 3
    raise TypeError(f"not a spatial entity: {type(e).__name__}")


def _entity_points(e) -> list[tuple]:
    """Representative defining points (used for centroid and interpolation)."""
    if isinstance(e, Point3):
        return [e.as_tuple()]
    if isinstance(e, Point2):
        return [(e.x, e.y)]
    if isinstance(e, OrientedPoint):
        return [e.p.as_tuple()]
    if isinstance(e, Segment):
        return [e.p1.as_tuple(), e.p2.as_tuple()]
    if isinstance(e, Segment2):
        return [(e.p1.x, e.p1.y), (e.p2.x, e.p2.y)]
    if isinstance(e, (Polyline, Polyline2)):
        return [_pt_tuple(v) for v in e.vertices]
    if isinstance(e, Polygon2):
        return [(v.x, v.y) for v in e.vertices]
    if isinstance(e, AABox):
        return [e.lo, e.hi]
    if isinstance(e, Sphere):
        return [e.center]
    raise TypeError


def _pt_tuple(p):
    return p.as_tuple() if isinstance(p, (Point2, Point3)) else tuple(p)


def centroid(e: SpatialEntity) -> Point3:
    """Geometric center, promoted to 3D (z = 0 for planar entities)."""
    if isinstance(e, Polygon2):
        chain = _poly_chain(e)
        a2 = _signed_area2(chain)
        cx = cy = 0.0
        n = len(chain)
        for i in range(n):
            x1, y1 = chain[i]
            x2, y2 = chain[(i + 1) % n]
            w = x1 * y2 - x2 * y1
            cx += (x1 + x2) * w
            cy += (y1 + y2) * w
        return Point3(cx / (3 * a2), cy / (3 * a2), 0.0)
    if isinstance(e, AABox):
        c = e.center()
        return Point3(c[0], c[1], c[2] if e.dim == 3 else 0.0)
    if isinstance(e, Sphere):
        c = e.center
        return Point3(c[0], c[1], c[2] if e.dim == 3 else 0.0)
    if isinstance(e, (Polyline, Polyline2)):
        # length-weighted midpoint of the chain
        pts = _entity_points(e)
        total = 0.0
        acc = [0.0, 0.0, 0.0]
        for a, b in zip(pts, pts[1:]):
            a3 = a + (0.0,) * (3 - len(a))
            b3 = b + (0.0,) * (3 - len(b))
            ln = _p3_dist(a3, b3)
            total += ln
            for i in range(3):
                acc[i] += ln * (a3[i] + b3[i]) / 2.0
        if total == 0.0:
            a3 = pts[0] + (0.0,) * (3 - len(pts[0]))
            return Point3(*a3)
        return Point3(acc[0] / total, acc[1] / total, acc[2] / total)
    pts = _entity_points(e)
    sums = [0.0, 0.0, 0.0]
    for p in pts:
        p3 = p + (0.0,) * (3 - len(p))
        for i in range(3):
            sums[i] += p3[i]
    n = len(pts)
    return Point3(sums[0] / n, sums[1] / n, sums[2] / n)


def distance(a: SpatialEntity, b: SpatialEntity) -> float:
    """Minimum Euclidean distance between two closed point sets.

    Mixed entity kinds are supported; both operands must share the same
    dimension (2D with 2D, 3D with 3D).
    """
    da, db = entity_dim(a), entity_dim(b)
    if da != db:
        raise DimensionMismatchError(f"cannot mix {da}D and {db}D entities")
    # sphere reduces against anything: d(S, X) = max(0, d(center, X) - r)
    if isinstance(a, Sphere) and not isinstance(b, Sphere):
        return max(0.0, distance(_center_point(a), b) - a.radius)
    if isinstance(b, Sphere):
        return max(0.0, distance(a, _center_point(b)) - b.radius)
    if da == 2:
        return _distance2d(a, b)
    return _distance3d(a, b)


def _center_point(s: Sphere):
    return Point2(*s.center) if s.dim == 2 else Point3(*s.center)


def _distance2d(a, b) -> float:
    # canonicalize: Point2 | segments | polygon chain (boxes become chains)
    def view(e):
        if isinstance(e, Point2):
            return ("point", (e.x, e.y))
        if isinstance(e, (Segment2, Polyline2)):
            return ("segs", _as_segments2(e))
        if isinstance(e, Polygon2):
            return ("poly", _poly_chain(e))
        if isinstance(e, AABox):
            return ("poly", _box_chain(e))
        raise TypeError(f"unsupported 2D entity: {type(e).__name__}")

    ka, va = view(a)
    kb, vb = view(b)
    if ka == "point" and kb == "point":
        return math.hypot(va[0] - vb[0], va[1] - vb[1])
    if ka == "point" and kb == "segs":
        return min(_point_seg_dist2d(va[0], va[1], s[0][0], s[0][1], s[1][0], s[1][1]) for s in vb)
    if ka == "segs" and kb == "point":
        return _distance2d(b, a)
    if ka == "point" and kb == "poly":
        return _point_polygon_dist(va, vb)
    if ka == "poly" and kb == "point":
        return _distance2d(b, a)
    if ka == "segs" and kb == "segs":
        return min(_seg_seg_dist2d(s[0], s[1], t[0], t[1]) for s in va for t in vb)
    if ka == "segs" and kb == "poly":
        if any(point_in_polygon(s[0], vb) for s in va):
            return 0.0
        edges = list(zip(vb, vb[1:] + vb[:1]))
        return min(_seg_seg_dist2d(s[0], s[1], e[0], e[1]) for s in va for e in edges)
    if ka == "poly" and kb == "segs":
        return _distance2d(b, a)
    # polygon vs polygon: 0 on any containment or crossing, else boundary min
    if any(point_in_polygon(p, vb) for p in va) or any(point_in_polygon(p, va) for p in vb):
        return 0.0
    ea = list(zip(va, va[1:] + va[:1]))
    eb = list(zip(vb, vb[1:] + vb[:1]))
    return min(_seg_seg_dist2d(s[0], s[1], t[0], t[1]) for s in ea for t in eb)


def _distance3d(a, b) -> float:
    def view(e):
        if isinstance(e, Point3):
            return ("point", e.as_tuple())
        if isinstance(e, OrientedPoint):
            return ("point", e.p.as_tuple())
        if isinstance(e, (Segment, Polyline)):
            return ("segs", _as_segments3(e))
        if isinstance(e, AABox):
            return ("box", (e.lo, e.hi))
        raise TypeError(f"unsupported 3D entity: {type(e).__name__}")

    ka, va = view(a)
    kb, vb = view(b)
    if ka == "point" and kb == "point":
        return _p3_dist(va, vb)
    if ka == "point" and kb == "segs":
        return min(_point_seg_dist3d(va, s[0], s[1]) for s in vb)
    if ka == "point" and kb == "box":
        return _point_box_dist(va, vb[0], vb[1])
    if ka == "segs" and kb == "segs":
        return min(_seg_seg_dist3d(s[0], s[1], t[0], t[1]) for s in va for t in vb)
    if ka == "segs" and kb == "box":
        return min(_seg_box_dist(s[0], s[1], vb[0], vb[1]) for s in va)
    if ka == "box" and kb == "box":
        gaps = [max(al - bh, bl - ah, 0.0)
                for al, ah, bl, bh in zip(va[0], va[1], vb[0], vb[1])]
        return math.sqrt(sum(g * g for g in gaps))
    return _distance3d(b, a)


def direction_of(e: SpatialEntity) -> tuple[float, float, float]:
    """Unit direction vector of an oriented point or segment."""
    if isinstance(e, OrientedPoint):
        return e.v
    if isinstance(e, Segment):
        v = tuple(b - a for a, b in zip(e.p1.as_tuple(), e.p2.as_tuple()))
    elif isinstance(e, Segment2):
        v = (e.p2.x - e.p1.x, e.p2.y - e.p1.y, 0.0)
    else:
        raise ZeroVectorError(f"{type(e).__name__} carries no direction")
    n = math.sqrt(sum(c * c for c in v))
    if n < EPS_GEOM:
        raise ZeroVectorError("zero-length direction")
    return tuple(c / n for c in v)


def angle_between(a, b) -> float:
    """Unsigned angle in [0, pi] between the directions of two oriented points
    or segments (2D directions are embedded in the plane z = 0)."""
    va, vb = direction_of(a), direction_of(b)
    dot = max(-1.0, min(1.0, sum(x * y for x, y in zip(va, vb))))
    return math.acos(dot)


def vec_angle(va, vb) -> float:
    """Unsigned angle between two raw vectors."""
    na = math.sqrt(sum(c * c for c in va))
    nb = math.sqrt(sum(c * c for c in vb))
    if na < EPS_GEOM or nb < EPS_GEOM:
        raise ZeroVectorError("zero-length vector")
    dot = sum(x * y for x, y in zip(va, vb)) / (na * nb)
    return math.acos(max(-1.0, min(1.0, dot)))


def project_to_floor(e: SpatialEntity) -> FloorProjection:
    """Drop z.  Entities that collapse (vertical segments, plumb polylines)
    come back as lower-dimensional values with degenerate=True; 2D input is
    returned unchanged."""
    if isinstance(e, (Point2, Segment2, Polyline2, Polygon2)):
        return FloorProjection(e, False)
    if isinstance(e, (AABox, Sphere)) and e.dim == 2:
        return FloorProjection(e, False)
    if isinstance(e, Point3):
        return FloorProjection(Point2(e.x, e.y), False)
    if isinstance(e, OrientedPoint):
        return FloorProjection(Point2(e.p.x, e.p.y), False)
    if isinstance(e, Segment):
        a, b = Point2(e.p1.x, e.p1.y), Point2(e.p2.x, e.p2.y)
        if math.hypot(b.x - a.x, b.y - a.y) < EPS_GEOM:
            return FloorProjection(a, True)
        return FloorProjection(Segment2(a, b), False)
    if isinstance(e, Polyline):
        pts: list[Point2] = []
        for v in e.vertices:
            q = Point2(v.x, v.y)
            if not pts or math.hypot(q.x - pts[-1].x, q.y - pts[-1].y) >= EPS_GEOM:
                pts.append(q)
        if len(pts) == 1:
            return FloorProjection(pts[0], True)
        if len(pts) == 2:
            return FloorProjection(Segment2(pts[0], pts[1]), False)
        return FloorProjection(Polyline2(tuple(pts)), False)
    if isinstance(e, AABox):
        return FloorProjection(AABox(e.lo[:2], e.hi[:2]), False)
    if isinstance(e, Sphere):
        return FloorProjection(Sphere(e.center[:2], e.radius), False)
    raise TypeError(f"not a spatial entity: {type(e).__name__}")


def rect_axis(e: SpatialEntity) -> tuple[tuple[float, float], tuple[float, float], float, float]:
    """(center, unit major-axis direction, major length, minor length) of a
    2D region.  For polygons the axis is the principal direction of the
    vertex scatter, so rotated rectangles report their long side."""
    if isinstance(e, AABox) and e.dim == 2:
        w, h = e.hi[0] - e.lo[0], e.hi[1] - e.lo[1]
        cx, cy = (e.lo[0] + e.hi[0]) / 2.0, (e.lo[1] + e.hi[1]) / 2.0
        if w >= h:
            return (cx, cy), (1.0, 0.0), w, h
        return (cx, cy), (0.0, 1.0), h, w
    if isinstance(e, Sphere) and e.dim == 2:
        return (e.center[0], e.center[1]), (1.0, 0.0), 2 * e.radius, 2 * e.radius
    if isinstance(e, Polygon2):
        pts = [(p.x, p.y) for p in e.vertices]
        mx = sum(p[0] for p in pts) / len(pts)
        my = sum(p[1] for p in pts) / len(pts)
        sxx = sum((p[0] - mx) ** 2 for p in pts)
        syy = sum((p[1] - my) ** 2 for p in pts)
        sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
        theta = 0.5 * math.atan2(2 * sxy, sxx - syy) if (abs(sxy) > 1e-15 or sxx != syy) else 0.0
        ux, uy = math.cos(theta), math.sin(theta)
        along = [(p[0] - mx) * ux + (p[1] - my) * uy for p in pts]
        across = [-(p[0] - mx) * uy + (p[1] - my) * ux for p in pts]
        major = max(along) - min(along)
        minor = max(across) - min(across)
        if minor > major:
            ux, uy = -uy, ux
            major, minor = minor, major
        return (mx, my), (ux, uy), major, minor
    raise TypeError(f"no rectangle axis for {type(e).__name__}")


def translate(e: SpatialEntity, v: tuple[float, ...]) -> SpatialEntity:
    """Rigid translation; v is 2D or 3D to match the entity."""
    if isinstance(e, Point3):
        return Point3(e.x + v[0], e.y + v[1], e.z + (v[2] if len(v) > 2 else 0.0))
    if isinstance(e, Point2):
        return Point2(e.x + v[0], e.y + v[1])
    if isinstance(e, OrientedPoint):
        return OrientedPoint(translate(e.p, v), e.v)
    if isinstance(e, Segment):
        return Segment(translate(e.p1, v), translate(e.p2, v))
    if isinstance(e, Segment2):
        return Segment2(translate(e.p1, v), translate(e.p2, v))
    if isinstance(e, Polyline):
        return Polyline(tuple(translate(p, v) for p in e.vertices))
    if isinstance(e, Polyline2):
        return Polyline2(tuple(translate(p, v) for p in e.vertices))
    if isinstance(e, Polygon2):
        return Polygon2(tuple(translate(p, v) for p in e.vertices))
    if isinstance(e, AABox):
        vv = v[:e.dim]
        return AABox(tuple(a + d for a, d in zip(e.lo, vv)),
                     tuple(a + d for a, d in zip(e.hi, vv)))
    if isinstance(e, Sphere):
        return Sphere(tuple(a + d for a, d in zip(e.center, v[:e.dim])), e.radius)
    raise TypeError(f"not a spatial entity: {type(e).__name__}")


def lerp_entity(e1: SpatialEntity, e2: SpatialEntity, u: float) -> SpatialEntity:
    """Linear interpolation of two same-kind entities (vertexwise / cornerwise)."""
    if type(e1) is not type(e2):
        raise InterpolationError(
            f"cannot interpolate {type(e1).__name__} with {type(e2).__name__}")

    def mix(a: float, b: float) -> float:
        return a + (b - a) * u

    if isinstance(e1, Point3):
        return Point3(mix(e1.x, e2.x), mix(e1.y, e2.y), mix(e1.z, e2.z))
    if isinstance(e1, Point2):
        return Point2(mix(e1.x, e2.x), mix(e1.y, e2.y))
    if isinstance(e1, OrientedPoint):
        v = tuple(mix(a, b) for a, b in zip(e1.v, e2.v))
        n = math.sqrt(sum(c * c for c in v))
        if n < EPS_GEOM:
            raise InterpolationError("opposed directions cannot be interpolated")
        return OrientedPoint(lerp_entity(e1.p, e2.p, u), tuple(c / n for c in v))
    if isinstance(e1, Segment):
        return Segment(lerp_entity(e1.p1, e2.p1, u), lerp_entity(e1.p2, e2.p2, u))
    if isinstance(e1, Segment2):
        return Segment2(lerp_entity(e1.p1, e2.p1, u), lerp_entity(e1.p2, e2.p2, u))
    if isinstance(e1, (Polyline, Polyline2, Polygon2)):
        if len(e1.vertices) != len(e2.vertices):
            raise InterpolationError("vertex counts differ")
        verts = tuple(lerp_entity(a, b, u) for a, b in zip(e1.vertices, e2.vertices))
        return type(e1)(verts)
    if isinstance(e1, AABox):
        if e1.dim != e2.dim:
            raise InterpolationError("box dimensions differ")
        return AABox(tuple(mix(a, b) for a, b in zip(e1.lo, e2.lo)),
                     tuple(mix(a, b) for a, b in zip(e1.hi, e2.hi)))
    if isinstance(e1, Sphere):
        if e1.dim != e2.dim:
            raise InterpolationError("sphere dimensions differ")
        return Sphere(tuple(mix(a, b) for a, b in zip(e1.center, e2.center)),
                      mix(e1.radius, e2.radius))
    raise TypeError(f"not a spatial entity: {type(e1).__name__}")
