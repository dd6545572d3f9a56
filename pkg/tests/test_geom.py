from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inclab import geom
from inclab.errors import ValidationError
from inclab.geom import (
    Circle,
    CircleCurve,
    CoincidentSurfaces,
    EmptySet,
    Line,
    Plane,
    Point3,
    SinglePoint,
    Sphere,
    TriPoly,
    canonicalize,
    point,
)

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=8
)


class TestScalars:
    def test_rational_sqrt_perfect(self):
        assert geom.rational_sqrt(F(9, 4)) == F(3, 2)
        assert geom.rational_sqrt(F(0)) == 0

    def test_rational_sqrt_imperfect(self):
        assert geom.rational_sqrt(F(2)) is None
        assert geom.rational_sqrt(F(-1)) is None

    def test_primitive_vector(self):
        assert geom.primitive_vector((F(2, 3), F(4, 3), F(-2))) == (1, 2, -3)
        assert geom.primitive_vector((F(0), F(-4), F(6))) == (0, 2, -3)
        # first nonzero positive
        assert geom.primitive_vector((F(-1), F(2), F(0)))[0] > 0


class TestTriPoly:
    def test_translate(self):
        f = TriPoly({(2, 0, 0): F(1)})  # x^2
        g = f.translate((F(1), F(0), F(0)))  # (x-1)^2
        assert g.evaluate(point(1, 5, 5)) == 0
        assert g.evaluate(point(3, 0, 0)) == 4

    def test_restrict_to_line(self):
        f = TriPoly({(2, 0, 0): F(1), (0, 2, 0): F(1), (0, 0, 0): F(-25)})
        coeffs = f.restrict_to_line(point(0, 0, 0), (F(3), F(4), F(0)))
        # f(3t, 4t) = 25 t^2 - 25
        assert coeffs == [F(-25), F(0), F(25)]

    def test_zero_poly_degree(self):
        assert TriPoly.zero().degree() == -1


class TestCanonicalize:
    def test_plane_scaling(self):
        p1 = canonicalize(Plane(F(1, 2), F(1), F(0), F(3)))
        p2 = canonicalize(Plane(F(2), F(4), F(0), F(12)))
        assert p1 == p2

    def test_line_representation(self):
        l1 = canonicalize(Line(point(0, 0, 0), (F(1), F(1), F(0))))
        l2 = canonicalize(Line(point(5, 5, 0), (F(-2), F(-2), F(0))))
        assert l1 == l2

    def test_circle_orientation(self):
        c1 = canonicalize(Circle(point(0, 0, 0), (F(0), F(0), F(2)), F(1)))
        c2 = canonicalize(Circle(point(0, 0, 0), (F(0), F(0), F(-1)), F(1)))
        assert c1 == c2

    @settings(max_examples=40, deadline=None)
    @given(rationals, rationals, rationals, rationals)
    def test_plane_canonical_idempotent(self, a, b, c, d):
        if a == 0 and b == 0 and c == 0:
            return
        p = canonicalize(Plane(a, b, c, d))
        assert canonicalize(p) == p

    @settings(max_examples=40, deadline=None)
    @given(rationals, rationals, rationals)
    def test_line_canonical_idempotent(self, x, y, z):
        ln = Line(point(x, y, z), (F(1), F(2), F(-2)))
        c = canonicalize(ln)
        assert canonicalize(c) == c
        # canonical origin is orthogonal to the direction
        assert geom.dot(c.origin.as_tuple(), c.direction) == 0


class TestSurfaceIntersections:
    def test_sphere_sphere_circle(self):
        r = geom.surface_pair_intersection(
            Sphere(point(0, 0, 0), F(25)), Sphere(point(6, 0, 0), F(25))
        )
        assert isinstance(r, CircleCurve)
        assert r.circle.center == point(3, 0, 0)
        assert r.circle.radius2 == 16

    def test_sphere_sphere_tangent(self):
        r = geom.surface_pair_intersection(
            Sphere(point(0, 0, 0), F(1)), Sphere(point(2, 0, 0), F(1))
        )
        assert isinstance(r, SinglePoint)
        assert r.point == point(1, 0, 0)

    def test_sphere_sphere_disjoint(self):
        r = geom.surface_pair_intersection(
            Sphere(point(0, 0, 0), F(1)), Sphere(point(10, 0, 0), F(1))
        )
        assert isinstance(r, EmptySet)

    def test_plane_sphere_great_circle(self):
        r = geom.surface_pair_intersection(
            Plane(F(0), F(0), F(1), F(0)), Sphere(point(0, 0, 0), F(4))
        )
        assert isinstance(r, CircleCurve)
        assert r.circle.radius2 == 4

    def test_plane_plane_line(self):
        r = geom.surface_pair_intersection(
            Plane(F(1), F(0), F(0), F(0)), Plane(F(0), F(1), F(0), F(0))
        )
        assert isinstance(r, geom.LineCurve)
        assert canonicalize(r.line) == canonicalize(Line(point(0, 0, 0), (F(0), F(0), F(1))))

    def test_coincident(self):
        r = geom.surface_pair_intersection(
            Plane(F(1), F(1), F(0), F(2)), Plane(F(2), F(2), F(0), F(4))
        )
        assert isinstance(r, CoincidentSurfaces)

    @settings(max_examples=30, deadline=None)
    @given(rationals, rationals, rationals)
    def test_symmetry(self, cx, cy, cz):
        s1 = Sphere(point(0, 0, 0), F(9))
        s2 = Sphere(point(cx, cy, cz), F(4))
        if s2.center == s1.center:
            return
        r12 = geom.surface_pair_intersection(s1, s2)
        r21 = geom.surface_pair_intersection(s2, s1)
        assert type(r12) is type(r21)
        if isinstance(r12, CircleCurve):
            assert canonicalize(r12.circle) == canonicalize(r21.circle)


class TestCurveIntersections:
    def test_line_line_crossing(self):
        pts = geom.curve_pair_intersection(
            Line(point(0, 0, 0), (F(1), F(0), F(0))),
            Line(point(2, -1, 0), (F(0), F(1), F(0))),
        )
        assert pts == [point(2, 0, 0)]

    def test_line_line_skew(self):
        pts = geom.curve_pair_intersection(
            Line(point(0, 0, 0), (F(1), F(0), F(0))),
            Line(point(0, 1, 1), (F(0), F(1), F(0))),
        )
        assert pts == []

    def test_circle_circle_two_points(self):
        c1 = Circle(point(0, 0, 0), (F(0), F(0), F(1)), F(25))
        c2 = Circle(point(6, 0, 0), (F(0), F(0), F(1)), F(25))
        pts = geom.curve_pair_intersection(c1, c2)
        assert sorted(pts, key=lambda p: p.y) == [point(3, -4, 0), point(3, 4, 0)]

    def test_line_circle(self):
        c = Circle(point(0, 0, 0), (F(0), F(0), F(1)), F(25))
        ln = Line(point(0, 4, 0), (F(1), F(0), F(0)))
        pts = geom.curve_pair_intersection(ln, c)
        assert sorted(pts, key=lambda p: p.x) == [point(-3, 4, 0), point(3, 4, 0)]

    def test_irrational_intersections_dropped(self):
        # unit circle and the line y = x meet at irrational points
        c = Circle(point(0, 0, 0), (F(0), F(0), F(1)), F(1))
        ln = Line(point(0, 0, 0), (F(1), F(1), F(0)))
        assert geom.curve_pair_intersection(ln, c) == []


class TestMembership:
    def test_point_on_sphere(self):
        s = Sphere(point(0, 0, 0), F(25))
        assert geom.point_on_surface(point(3, 4, 0), s)
        assert not geom.point_on_surface(point(3, 4, 1), s)

    def test_point_on_circle_needs_plane(self):
        c = Circle(point(0, 0, 0), (F(0), F(0), F(1)), F(25))
        assert geom.point_on_curve(point(3, 4, 0), c)
        assert not geom.point_on_curve(point(3, 4, 1), c)

    def test_surface_contains_curve(self):
        s = Sphere(point(0, 0, 0), F(25))
        c = Circle(point(3, 0, 0), (F(1), F(0), F(0)), F(16))
        assert geom.surface_contains_curve(s, c)
        assert geom.surface_contains_curve(c.plane(), c)
        assert not geom.surface_contains_curve(Sphere(point(9, 0, 0), F(25)), c)


class TestValidation:
    def test_zero_normal_plane(self):
        with pytest.raises(ValidationError):
            Plane(F(0), F(0), F(0), F(1))

    def test_nonpositive_radius(self):
        with pytest.raises(ValidationError):
            Sphere(point(0, 0, 0), F(0))

    def test_zero_direction_line(self):
        with pytest.raises(ValidationError):
            Line(point(0, 0, 0), (F(0), F(0), F(0)))
