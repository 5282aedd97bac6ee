import math
import random

import pytest

from scenesem import geometry as g
from scenesem.errors import (
    DegenerateAreaError,
    DimensionMismatchError,
    SelfIntersectingError,
    ZeroVectorError,
)


def square(x0=0.0, y0=0.0, s=1.0):
    return g.Polygon2((g.Point2(x0, y0), g.Point2(x0 + s, y0),
                       g.Point2(x0 + s, y0 + s), g.Point2(x0, y0 + s)))


class TestValidatePolygon:
    def test_unit_square_ccw(self):
        p = g.validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert p.area == pytest.approx(1.0)
        assert [v.as_tuple() for v in p.vertices] == [(0, 0), (1, 0), (1, 1), (0, 1)]

    def test_clockwise_input_reversed(self):
        p = g.validate_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
        assert p.area == pytest.approx(1.0)
        # same ring, now counter-clockwise
        assert g._signed_area2([(v.x, v.y) for v in p.vertices]) > 0

    def test_bowtie_rejected(self):
        with pytest.raises(SelfIntersectingError):
            g.validate_polygon([(0, 0), (1, 1), (1, 0), (0, 1)])

    def test_degenerate_area_rejected(self):
        with pytest.raises(DegenerateAreaError):
            g.validate_polygon([(0, 0), (1, 0), (2, 0)])

    def test_idempotent(self):
        p = g.validate_polygon([(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)])
        q = g.validate_polygon(p.vertices)
        assert p == q


class TestDistance:
    def test_point_point_345(self):
        assert g.distance(g.Point3(0, 0, 0), g.Point3(3, 4, 0)) == pytest.approx(5.0)

    def test_square_to_itself(self):
        s = square()
        assert g.distance(s, s) == 0.0

    def test_disjoint_squares_brute_force(self):
        # oracle: min distance over dense boundary samples of both squares
        a = square(0, 0, 1)
        b = square(3, 0, 1)

        def boundary_samples(x0, y0, s, n=100):
            pts = []
            for i in range(n):
                t = i / n * 4.0
                side, u = int(t), t - int(t)
                if side == 0:
                    pts.append((x0 + u * s, y0))
                elif side == 1:
                    pts.append((x0 + s, y0 + u * s))
                elif side == 2:
                    pts.append((x0 + s - u * s, y0 + s))
                else:
                    pts.append((x0, y0 + s - u * s))
            return pts

        sa = boundary_samples(0, 0, 1)
        sb = boundary_samples(3, 0, 1)
        oracle = min(math.hypot(p[0] - q[0], p[1] - q[1]) for p in sa for q in sb)
        assert g.distance(a, b) == pytest.approx(oracle, abs=1e-3)
        assert g.distance(a, b) == pytest.approx(2.0, abs=1e-9)

    def test_touching_boxes_distance_zero(self):
        a = g.AABox((0, 0), (1, 1))
        b = g.AABox((1, 0), (2, 1))
        assert g.distance(a, b) == 0.0

    def test_box3_box3(self):
        a = g.AABox((0, 0, 0), (1, 1, 1))
        b = g.AABox((4, 5, 1), (5, 6, 2))
        assert g.distance(a, b) == pytest.approx(5.0)

    def test_sphere_point(self):
        s = g.Sphere((0.0, 0.0, 0.0), 1.0)
        assert g.distance(s, g.Point3(3, 0, 0)) == pytest.approx(2.0)
        assert g.distance(g.Point3(0.5, 0, 0), s) == 0.0

    def test_point_in_polygon_distance_zero(self):
        assert g.distance(g.Point2(0.5, 0.5), square()) == 0.0

    def test_segment_box_3d(self):
        seg = g.Segment(g.Point3(-1, 0.5, 3), g.Point3(2, 0.5, 3))
        box = g.AABox((0, 0, 0), (1, 1, 1))
        assert g.distance(seg, box) == pytest.approx(2.0, abs=1e-6)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            g.distance(g.Point2(0, 0), g.Point3(0, 0, 0))

    def test_symmetry_random(self):
        rng = random.Random(7)
        ents = [
            g.Point3(1, 2, 0), g.AABox((0, 0, 0), (1, 1, 1)),
            g.Segment(g.Point3(0, 0, 0), g.Point3(1, 1, 1)),
            g.Sphere((2.0, 2.0, 2.0), 0.5),
        ]
        for _ in range(50):
            a, b = rng.choice(ents), rng.choice(ents)
            assert g.distance(a, b) == g.distance(b, a)

    def test_triangle_inequality_points(self):
        rng = random.Random(3)
        for _ in range(200):
            p, q, r = (g.Point3(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
                       for _ in range(3))
            assert g.distance(p, r) <= g.distance(p, q) + g.distance(q, r) + 1e-9


class TestSize:
    def test_unit_square(self):
        assert g.size(square()) == pytest.approx(1.0)

    def test_segment_length(self):
        seg = g.Segment(g.Point3(0, 0, 0), g.Point3(0, 0, 2))
        assert g.size(seg) == pytest.approx(2.0)

    def test_circle_area(self):
        assert g.size(g.Sphere((0.0, 0.0), 1.0)) == pytest.approx(math.pi, abs=1e-9)

    def test_cuboid_volume(self):
        assert g.size(g.AABox((0, 0, 0), (2, 3, 4))) == pytest.approx(24.0)

    def test_translation_invariance(self):
        rng = random.Random(11)
        ents = [square(), g.AABox((0, 0, 0), (1, 2, 3)),
                g.Segment(g.Point3(0, 0, 0), g.Point3(1, 1, 0)),
                g.Sphere((0.0, 0.0), 2.0)]
        for e in ents:
            for _ in range(20):
                v = (rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10))
                assert g.size(g.translate(e, v)) == pytest.approx(g.size(e), abs=1e-9)


class TestAngle:
    def test_parallel(self):
        a = g.OrientedPoint(g.Point3(0, 0, 0), (1, 0, 0))
        b = g.OrientedPoint(g.Point3(5, 5, 0), (1, 0, 0))
        assert g.angle_between(a, b) == pytest.approx(0.0)

    def test_perpendicular(self):
        a = g.OrientedPoint(g.Point3(0, 0, 0), (1, 0, 0))
        b = g.OrientedPoint(g.Point3(0, 0, 0), (0, 1, 0))
        assert g.angle_between(a, b) == pytest.approx(math.pi / 2)

    def test_opposite(self):
        a = g.Segment(g.Point3(0, 0, 0), g.Point3(1, 0, 0))
        b = g.Segment(g.Point3(0, 0, 0), g.Point3(-1, 0, 0))
        assert g.angle_between(a, b) == pytest.approx(math.pi)

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            g.vec_angle((0, 0, 0), (1, 0, 0))


class TestProjection:
    def test_point(self):
        pr = g.project_to_floor(g.Point3(1, 2, 3))
        assert pr.entity == g.Point2(1, 2)
        assert not pr.degenerate

    def test_cuboid(self):
        pr = g.project_to_floor(g.AABox((0, 0, 0), (1, 1, 1)))
        assert pr.entity == g.AABox((0, 0), (1, 1))
        assert not pr.degenerate

    def test_vertical_segment_degenerates(self):
        pr = g.project_to_floor(g.Segment(g.Point3(0, 0, 0), g.Point3(0, 0, 1)))
        assert pr.entity == g.Point2(0, 0)
        assert pr.degenerate


class TestInterpolation:
    def test_point_lerp(self):
        e = g.lerp_entity(g.Point3(0, 0, 0), g.Point3(2, 0, 0), 0.5)
        assert e == g.Point3(1, 0, 0)

    def test_box_cornerwise(self):
        a = g.AABox((0, 0), (1, 1))
        b = g.AABox((2, 0), (3, 1))
        assert g.lerp_entity(a, b, 0.5) == g.AABox((1, 0), (2, 1))


class TestPolyline:
    def test_valid_chain(self):
        pl = g.Polyline((g.Point3(0, 0, 0), g.Point3(1, 0, 1), g.Point3(1, 1, 0)))
        assert g.size(pl) == pytest.approx(math.sqrt(2) + math.sqrt(2))

    def test_repeated_vertex_rejected(self):
        with pytest.raises(ValueError):
            g.Polyline((g.Point3(0, 0, 0), g.Point3(0, 0, 0)))

    def test_self_intersecting_projection_rejected(self):
        with pytest.raises(SelfIntersectingError):
            g.Polyline((g.Point3(0, 0, 0), g.Point3(2, 0, 0),
                        g.Point3(2, 1, 0), g.Point3(1, -1, 0)))

    def test_vertical_chain_allowed(self):
        # collapses to a point on the floor: projection must not reject it
        pl = g.Polyline((g.Point3(0, 0, 0), g.Point3(0, 0, 1), g.Point3(0, 0, 2)))
        proj = g.project_to_floor(pl)
        assert proj.degenerate
        assert proj.entity == g.Point2(0, 0)


class TestRectAxis:
    def test_wide_box(self):
        center, axis, major, minor = g.rect_axis(g.AABox((0, 0), (10, 2)))
        assert center == (5.0, 1.0)
        assert axis == (1.0, 0.0)
        assert (major, minor) == (10.0, 2.0)

    def test_rotated_rectangle_polygon(self):
        # a 4 x 1 rectangle rotated 30 degrees
        ang = math.radians(30)
        c, s = math.cos(ang), math.sin(ang)
        base = [(-2, -0.5), (2, -0.5), (2, 0.5), (-2, 0.5)]
        ring = [(c * x - s * y, s * x + c * y) for x, y in base]
        poly = g.validate_polygon(ring)
        center, axis, major, minor = g.rect_axis(poly)
        assert center == pytest.approx((0.0, 0.0), abs=1e-9)
        assert abs(axis[0] - c) < 1e-6 and abs(axis[1] - s) < 1e-6
        assert major == pytest.approx(4.0)
        assert minor == pytest.approx(1.0)
