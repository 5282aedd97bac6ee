"""Qualitative relation families over concrete configurations.

Covers mereotopology (RCC-8 and its RCC-5 coarsening), the 13 interval
relations, per-axis rectangle/block algebra, point-vs-directed-line sides,
coarse relative orientation of oriented points, and qualitative
distance/size.  Labels serialize as the lowercase strings of each enum value.

Only concrete configurations are classified; composition tables and
constraint propagation are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .config import CalculiConfig
from .errors import (
    CoincidentPositionsError,
    DegenerateLineError,
    DimensionMismatchError,
    UnsupportedEntityKindError,
)
from .geometry import (
    EPS_GEOM,
    AABox,
    OrientedPoint,
    Point2,
    Polygon2,
    Sphere,
    SpatialEntity,
    TimeInterval,
    _box_chain,
    _point_polygon_dist,
    _point_seg_dist2d,
    _poly_chain,
    _seg_seg_dist2d,
    point_in_polygon,
    polygon_boundary_dist,
    size,
    distance,
)


class Rcc8Relation(str, Enum):
    DC = "dc"
    EC = "ec"
    PO = "po"
    TPP = "tpp"
    NTPP = "ntpp"
    TPPI = "tppi"
    NTPPI = "ntppi"
    EQ = "eq"


class Rcc5Relation(str, Enum):
    DR = "dr"
    PO = "po"
    PP = "pp"
    PPI = "ppi"
    EQ = "eq"


class AllenRelation(str, Enum):
    BEFORE = "before"
    MEETS = "meets"
    OVERLAPS = "overlaps"
    STARTS = "starts"
    DURING = "during"
    FINISHES = "finishes"
    EQUALS = "equals"
    AFTER = "after"
    MET_BY = "met_by"
    OVERLAPPED_BY = "overlapped_by"
    STARTED_BY = "started_by"
    CONTAINS = "contains"
    FINISHED_BY = "finished_by"


class LrRelation(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    FRONT = "front"
    BACK = "back"
    ON = "on"


class OrientLabel(str, Enum):
    FACING_TOWARDS = "facing_towards"
    FACING_AWAY = "facing_away"
    SAME_DIRECTION = "same_direction"
    OPPOSITE_DIRECTION = "opposite_direction"


class DistanceLabel(str, Enum):
    ADJACENT = "adjacent"
    NEAR = "near"
    FAR = "far"


class SizeLabel(str, Enum):
    SMALLER = "smaller"
    EQUI_SIZED = "equi_sized"
    LARGER = "larger"


@dataclass(frozen=True)
class RectAlgRelation:
    """Per-axis interval relations of two axis-aligned boxes."""

    axes: tuple[AllenRelation, ...]

    @property
    def x(self) -> AllenRelation:
        return self.axes[0]

    @property
    def y(self) -> AllenRelation:
        return self.axes[1]


@dataclass(frozen=True)
class QdcRelation:
    distance_label: DistanceLabel
    size_label: SizeLabel


RCC8_CONVERSE = {
    Rcc8Relation.DC: Rcc8Relation.DC,
    Rcc8Relation.EC: Rcc8Relation.EC,
    Rcc8Relation.PO: Rcc8Relation.PO,
    Rcc8Relation.TPP: Rcc8Relation.TPPI,
    Rcc8Relation.NTPP: Rcc8Relation.NTPPI,
    Rcc8Relation.TPPI: Rcc8Relation.TPP,
    Rcc8Relation.NTPPI: Rcc8Relation.NTPP,
    Rcc8Relation.EQ: Rcc8Relation.EQ,
}

ALLEN_CONVERSE = {
    AllenRelation.BEFORE: AllenRelation.AFTER,
    AllenRelation.AFTER: AllenRelation.BEFORE,
    AllenRelation.MEETS: AllenRelation.MET_BY,
    AllenRelation.MET_BY: AllenRelation.MEETS,
    AllenRelation.OVERLAPS: AllenRelation.OVERLAPPED_BY,
    AllenRelation.OVERLAPPED_BY: AllenRelation.OVERLAPS,
    AllenRelation.STARTS: AllenRelation.STARTED_BY,
    AllenRelation.STARTED_BY: AllenRelation.STARTS,
    AllenRelation.DURING: AllenRelation.CONTAINS,
    AllenRelation.CONTAINS: AllenRelation.DURING,
    AllenRelation.FINISHES: AllenRelation.FINISHED_BY,
    AllenRelation.FINISHED_BY: AllenRelation.FINISHES,
    AllenRelation.EQUALS: AllenRelation.EQUALS,
}


# ---------------------------------------------------------------------------
# mereotopology
# ---------------------------------------------------------------------------

def _region_view(e: SpatialEntity):
    """Normalize a 2D region to ('poly', chain) or ('circle', center, r)."""
    if isinstance(e, Polygon2):
        return ("poly", _poly_chain(e))
    if isinstance(e, AABox):
        if e.dim != 2:
            raise UnsupportedEntityKindError("rcc8 needs 2D regions; project first")
        return ("poly", _box_chain(e))
    if isinstance(e, Sphere):
        if e.dim != 2:
            raise UnsupportedEntityKindError("rcc8 needs 2D regions; project first")
        return ("circle", e.center, e.radius)
    raise UnsupportedEntityKindError(
        f"rcc8 undefined for {type(e).__name__}; points use containment predicates")


def _poly_edges(chain):
    return list(zip(chain, chain[1:] + chain[:1]))


def _proper_cross(p1, p2, q1, q2, eps) -> bool:
    """Transversal crossing with both segments strictly cut (margin eps)."""
    def cr(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    d1 = cr(q1, q2, p1)
    d2 = cr(q1, q2, p2)
    d3 = cr(p1, p2, q1)
    d4 = cr(p1, p2, q2)
    return (d1 > eps and d2 < -eps or d1 < -eps and d2 > eps) and \
           (d3 > eps and d4 < -eps or d3 < -eps and d4 > eps)


def _strictly_inside(p, chain, eps) -> bool:
    return point_in_polygon(p, chain) and polygon_boundary_dist(p, chain) > eps


def _in_closed(p, chain, eps) -> bool:
    return point_in_polygon(p, chain) or polygon_boundary_dist(p, chain) <= eps


def _edge_probe_points(chain):
    pts = list(chain)
    n = len(chain)
    for i in range(n):
        a, b = chain[i], chain[(i + 1) % n]
        pts.append(((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0))
    return pts


def _poly_subset(ca, cb, eps) -> bool:
    """Closed subset test: every vertex and edge midpoint of a inside closed b,
    and no transversal boundary crossing."""
    if not all(_in_closed(p, cb, eps) for p in _edge_probe_points(ca)):
        return False
    cross_eps = eps * eps  # cross products scale as length^2
    for a1, a2 in _poly_edges(ca):
        for b1, b2 in _poly_edges(cb):
            if _proper_cross(a1, a2, b1, b2, cross_eps):
                return False
    return True


def _poly_interiors_intersect(ca, cb, eps) -> bool:
    if any(_strictly_inside(p, cb, eps) for p in _edge_probe_points(ca)):
        return True
    if any(_strictly_inside(p, ca, eps) for p in _edge_probe_points(cb)):
        return True
    cross_eps = eps * eps
    for a1, a2 in _poly_edges(ca):
        for b1, b2 in _poly_edges(cb):
            if _proper_cross(a1, a2, b1, b2, cross_eps):
                return True
    return False


def _poly_boundary_gap(ca, cb) -> float:
    return min(_seg_seg_dist2d(a1, a2, b1, b2)
               for a1, a2 in _poly_edges(ca) for b1, b2 in _poly_edges(cb))


def _rcc8_poly_poly(ca, cb, eps) -> Rcc8Relation:
    sub_ab = _poly_subset(ca, cb, eps)
    sub_ba = _poly_subset(cb, ca, eps)
    if sub_ab and sub_ba:
        return Rcc8Relation.EQ
    if sub_ab:
        return Rcc8Relation.TPP if _poly_boundary_gap(ca, cb) <= eps else Rcc8Relation.NTPP
    if sub_ba:
        return Rcc8Relation.TPPI if _poly_boundary_gap(ca, cb) <= eps else Rcc8Relation.NTPPI
    if _poly_interiors_intersect(ca, cb, eps):
        return Rcc8Relation.PO
    if _poly_boundary_gap(ca, cb) <= eps:
        return Rcc8Relation.EC
    return Rcc8Relation.DC


def _rcc8_circle_circle(c1, r1, c2, r2, eps) -> Rcc8Relation:
    d = math.hypot(c1[0] - c2[0], c1[1] - c2[1])
    if d <= eps and abs(r1 - r2) <= eps:
        return Rcc8Relation.EQ
    if d + r1 <= r2 + eps:  # a inside b
        return Rcc8Relation.TPP if abs(d + r1 - r2) <= eps else Rcc8Relation.NTPP
    if d + r2 <= r1 + eps:
        return Rcc8Relation.TPPI if abs(d + r2 - r1) <= eps else Rcc8Relation.NTPPI
    if d >= r1 + r2 - eps:
        return Rcc8Relation.EC if d <= r1 + r2 + eps else Rcc8Relation.DC
    return Rcc8Relation.PO


def _rcc8_circle_poly(center, r, chain, eps) -> Rcc8Relation:
    inside = point_in_polygon(center, chain)
    bdist = polygon_boundary_dist(center, chain)
    if inside:
        if bdist >= r - eps:  # circle within polygon
            return Rcc8Relation.TPP if bdist <= r + eps else Rcc8Relation.NTPP
        # center in polygon but boundary cuts the disk: either polygon inside
        # the disk, or partial overlap
        far = max(math.hypot(p[0] - center[0], p[1] - center[1]) for p in chain)
        if far <= r + eps:
            return Rcc8Relation.TPPI if far >= r - eps else Rcc8Relation.NTPPI
        return Rcc8Relation.PO
    # center outside the closed polygon
    if bdist > r + eps:
        return Rcc8Relation.DC
    if bdist >= r - eps:
        return Rcc8Relation.EC
    return Rcc8Relation.PO


def rcc8(a: SpatialEntity, b: SpatialEntity, cfg: CalculiConfig | None = None) -> Rcc8Relation:
    """Classify two 2D regions (polygons, rectangles, circles) under closed-set
    semantics with boundary tolerance cfg.eps_rcc."""
    cfg = cfg or CalculiConfig()
    eps = cfg.eps_rcc
    va = _region_view(a)
    vb = _region_view(b)
    if va[0] == "poly" and vb[0] == "poly":
        return _rcc8_poly_poly(va[1], vb[1], eps)
    if va[0] == "circle" and vb[0] == "circle":
        return _rcc8_circle_circle(va[1], va[2], vb[1], vb[2], eps)
    if va[0] == "circle":
        return _rcc8_circle_poly(va[1], va[2], vb[1], eps)
    # poly vs circle: classify the circle side and flip
    return RCC8_CONVERSE[_rcc8_circle_poly(vb[1], vb[2], va[1], eps)]


RCC8_TO_RCC5 = {
    Rcc8Relation.DC: Rcc5Relation.DR,
    Rcc8Relation.EC: Rcc5Relation.DR,
    Rcc8Relation.PO: Rcc5Relation.PO,
    Rcc8Relation.TPP: Rcc5Relation.PP,
    Rcc8Relation.NTPP: Rcc5Relation.PP,
    Rcc8Relation.TPPI: Rcc5Relation.PPI,
    Rcc8Relation.NTPPI: Rcc5Relation.PPI,
    Rcc8Relation.EQ: Rcc5Relation.EQ,
}


def rcc5_coarsen(r: Rcc8Relation) -> Rcc5Relation:
    return RCC8_TO_RCC5[Rcc8Relation(r)]


# ---------------------------------------------------------------------------
# interval algebra
# ---------------------------------------------------------------------------

def allen(i: TimeInterval, j: TimeInterval, cfg: CalculiConfig | None = None) -> AllenRelation:
    """The unique one of the 13 interval relations, with endpoint equality
    judged within cfg.eps_time."""
    eps = (cfg or CalculiConfig()).eps_time

    def cmp(x: float, y: float) -> int:
        if abs(x - y) <= eps:
            return 0
        return -1 if x < y else 1

    c_ei_sj = cmp(i.t2, j.t1)
    if c_ei_sj < 0:
        return AllenRelation.BEFORE
    if c_ei_sj == 0:
        return AllenRelation.MEETS
    c_ej_si = cmp(j.t2, i.t1)
    if c_ej_si < 0:
        return AllenRelation.AFTER
    if c_ej_si == 0:
        return AllenRelation.MET_BY
    ss = cmp(i.t1, j.t1)
    ee = cmp(i.t2, j.t2)
    if ss == 0 and ee == 0:
        return AllenRelation.EQUALS
    if ss == 0:
        return AllenRelation.STARTS if ee < 0 else AllenRelation.STARTED_BY
    if ee == 0:
        return AllenRelation.FINISHES if ss > 0 else AllenRelation.FINISHED_BY
    if ss < 0:
        return AllenRelation.OVERLAPS if ee < 0 else AllenRelation.CONTAINS
    return AllenRelation.DURING if ee < 0 else AllenRelation.OVERLAPPED_BY


def allen_converse(r: AllenRelation) -> AllenRelation:
    return ALLEN_CONVERSE[AllenRelation(r)]


def rect_algebra(a: AABox, b: AABox, cfg: CalculiConfig | None = None) -> RectAlgRelation:
    """Per-axis interval relation of two equal-dimension axis-aligned boxes."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"box dimensions differ: {a.dim} vs {b.dim}")
    axes = tuple(
        allen(TimeInterval(a.lo[k], a.hi[k]), TimeInterval(b.lo[k], b.hi[k]), cfg)
        for k in range(a.dim)
    )
    return RectAlgRelation(axes)


# ---------------------------------------------------------------------------
# orientation
# ---------------------------------------------------------------------------

def lr(p: Point2, line: tuple[Point2, Point2]) -> LrRelation:
    """Side of point p relative to the directed line through (p1, p2);
    collinear points refine to back / on / front by the projection parameter."""
    a, b = line
    vx, vy = b.x - a.x, b.y - a.y
    if math.hypot(vx, vy) < EPS_GEOM:
        raise DegenerateLineError("directed line requires two distinct points")
    cross = vx * (p.y - a.y) - vy * (p.x - a.x)
    if cross > EPS_GEOM:
        return LrRelation.LEFT
    if cross < -EPS_GEOM:
        return LrRelation.RIGHT
    s = ((p.x - a.x) * vx + (p.y - a.y) * vy) / (vx * vx + vy * vy)
    if s < 0:
        return LrRelation.BACK
    if s > 1:
        return LrRelation.FRONT
    return LrRelation.ON


def orient_pair(a: OrientedPoint, b: OrientedPoint,
                cfg: CalculiConfig | None = None) -> frozenset[OrientLabel]:
    """Coarse relative orientation of two oriented points.

    same/opposite compare the two headings; facing towards/away compare each
    heading with the bearing to the other position.  The set may be empty when
    the configuration falls in none of the cones.
    """
    cfg = cfg or CalculiConfig()
    bearing = tuple(q - p for p, q in zip(a.p.as_tuple(), b.p.as_tuple()))
    norm = math.sqrt(sum(c * c for c in bearing))
    if norm < EPS_GEOM:
        raise CoincidentPositionsError("bearing undefined for coincident positions")
    bearing = tuple(c / norm for c in bearing)
    rev = tuple(-c for c in bearing)

    def ang(u, v) -> float:
        dot = max(-1.0, min(1.0, sum(x * y for x, y in zip(u, v))))
        return math.acos(dot)

    labels = set()
    heading = ang(a.v, b.v)
    if heading < cfg.theta_same:
        labels.add(OrientLabel.SAME_DIRECTION)
    elif heading > math.pi - cfg.theta_same:
        labels.add(OrientLabel.OPPOSITE_DIRECTION)
    if ang(a.v, bearing) < cfg.theta_face and ang(b.v, rev) < cfg.theta_face:
        labels.add(OrientLabel.FACING_TOWARDS)
    if ang(a.v, rev) < cfg.theta_face and ang(b.v, bearing) < cfg.theta_face:
        labels.add(OrientLabel.FACING_AWAY)
    return frozenset(labels)


# ---------------------------------------------------------------------------
# qualitative distance and size
# ---------------------------------------------------------------------------

def qdc(a: SpatialEntity, b: SpatialEntity,
        cfg: CalculiConfig | None = None) -> QdcRelation:
    """Bin metric distance and size ratio into qualitative labels."""
    cfg = cfg or CalculiConfig()
    d = distance(a, b)
    if d <= cfg.d_adjacent:
        dl = DistanceLabel.ADJACENT
    elif d <= cfg.d_near:
        dl = DistanceLabel.NEAR
    else:
        dl = DistanceLabel.FAR
    sa, sb = size(a), size(b)
    if sa <= EPS_GEOM and sb <= EPS_GEOM:
        sl = SizeLabel.EQUI_SIZED
    elif sb <= EPS_GEOM:
        sl = SizeLabel.LARGER
    elif sa <= EPS_GEOM:
        sl = SizeLabel.SMALLER
    else:
        ratio = sa / sb
        if ratio < 1.0 / cfg.size_ratio:
            sl = SizeLabel.SMALLER
        elif ratio > cfg.size_ratio:
            sl = SizeLabel.LARGER
        else:
            sl = SizeLabel.EQUI_SIZED
    return QdcRelation(dl, sl)
