import random
from fractions import Fraction as F

import pytest

from inclab import construct, engine, geom
from inclab.errors import GuardExceeded, UnsupportedObject, ValidationError
from inclab.geom import Circle, Line, Plane, Sphere, point


def three_spheres_one_circle():
    """Three spheres all containing the circle x^2 + y^2 = 1 in z = 0."""
    return [
        Sphere(point(0, 0, 0), F(1)),
        Sphere(point(0, 0, 1), F(2)),
        Sphere(point(0, 0, -2), F(5)),
    ]


class TestCounting:
    def test_mixed_objects(self):
        pts = [point(1, 0, 0), point(0, 1, 0), point(5, 5, 5)]
        objs = [Sphere(point(0, 0, 0), F(1)), Plane(F(0), F(0), F(1), F(0))]
        count, graph = engine.count_incidences(pts, objs)
        assert count == 4
        assert (2, 0) not in graph.edges

    def test_elekes_counts(self):
        for kk in (1, 2, 3):
            inst = construct.gen_elekes_grid(kk)
            count, _ = engine.count_incidences(inst.points, inst.curves)
            assert count == kk**4


class TestDecompose:
    def test_shared_circle_family(self):
        pts = [point(1, 0, 0), point(0, 1, 0), point(5, 5, 5)]
        dec = engine.decompose(pts, three_spheres_one_circle())
        assert len(dec.components) == 1
        _, p_ids, s_ids = dec.components[0]
        assert p_ids == (0, 1)
        assert s_ids == (0, 1, 2)
        assert dec.residual_edges == frozenset()
        j, sum_p, sum_s, residual = engine.j_value(dec)
        assert (j, sum_p, sum_s, residual) == (5, 2, 3, 0)

    def test_coverage_equals_bruteforce(self):
        rng = random.Random(4)
        pts = [point(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
               for _ in range(20)]
        pts = list(dict.fromkeys(pts))
        surfaces = [Sphere(point(rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2)),
                           F(rng.randint(1, 9))) for _ in range(12)]
        surfaces = list(dict.fromkeys(surfaces))
        dec = engine.decompose(pts, surfaces)
        covered = set(dec.residual_edges)
        for gamma, p_ids, s_ids in dec.components:
            covered.update((p, s) for p in p_ids for s in s_ids)
        _, graph = engine.count_incidences(pts, surfaces)
        assert covered == set(graph.edges)

    def test_duplicate_surfaces_rejected(self):
        with pytest.raises(ValidationError):
            engine.decompose([], [Sphere(point(0, 0, 0), F(1)),
                                  Sphere(point(0, 0, 0), F(1))])

    def test_implicit_rejected(self):
        surf = geom.Implicit(geom.TriPoly({(2, 0, 0): F(1), (0, 0, 1): F(-1)}))
        with pytest.raises(UnsupportedObject):
            engine.decompose([], [surf, Sphere(point(0, 0, 0), F(1))])


class TestRichPoints:
    def test_grid_lines(self):
        lines = []
        for i in range(3):
            lines.append(Line(point(i, 0, 0), (F(0), F(1), F(0))))
            lines.append(Line(point(0, i, 0), (F(1), F(0), F(0))))
        rich = engine.rich_points(lines, 2)
        assert len(rich) == 9
        assert all(mult == 2 for _, mult in rich)

    def test_r_guard(self):
        with pytest.raises(ValidationError):
            engine.rich_points([], 1)


class TestKrs:
    def test_unit_square_spheres(self):
        pts = [point(0, 0, 0), point(1, 0, 0), point(0, 1, 0), point(1, 1, 0)]
        spheres = construct.gen_unit_spheres(pts)
        _, graph = engine.count_incidences(pts, spheres)
        assert engine.contains_krs(graph, 2, 2)
        assert not engine.contains_krs(graph, 3, 3)

    def test_guard(self):
        _, graph = engine.count_incidences([], [])
        with pytest.raises(GuardExceeded):
            engine.contains_krs(graph, 5, 2)


class TestProjection:
    def test_elekes_preserved(self):
        inst = construct.gen_elekes_grid(2)
        planar = engine.project_generic(inst.points, inst.curves, seed=11)
        before, _ = engine.count_incidences(inst.points, inst.curves)
        after = sum(
            1 for p in planar.points2 for r in planar.curves2
            if engine.planar_incident(p, r)
        )
        assert before == after == 16

    def test_circles_preserved(self):
        circles = [
            Circle(point(0, 0, 0), (F(0), F(0), F(1)), F(25)),
            Circle(point(6, 0, 0), (F(0), F(0), F(1)), F(25)),
        ]
        pts = [point(3, 4, 0), point(3, -4, 0), point(5, 0, 0)]
        planar = engine.project_generic(pts, circles, seed=2)
        before, _ = engine.count_incidences(pts, circles)
        after = sum(
            1 for p in planar.points2 for r in planar.curves2
            if engine.planar_incident(p, r)
        )
        assert before == after

    def test_deterministic(self):
        inst = construct.gen_elekes_grid(2)
        a = engine.project_generic(inst.points, inst.curves, seed=11)
        b = engine.project_generic(inst.points, inst.curves, seed=11)
        assert a.points2 == b.points2 and a.curves2 == b.curves2


class TestCommonSphere:
    def test_two_sections_of_unit_sphere(self):
        sph = Sphere(point(0, 0, 0), F(1))
        sections = []
        for z in (F(1, 2), F(-1, 2)):
            r = geom.surface_pair_intersection(Plane(F(0), F(0), F(1), -z), sph)
            sections.append(r.circle)
        found = engine.common_sphere(*sections)
        assert found is not None
        assert found.center == point(0, 0, 0) and found.radius2 == 1

    def test_no_common_sphere(self):
        c1 = Circle(point(0, 0, 0), (F(0), F(0), F(1)), F(1))
        c2 = Circle(point(100, 0, 0), (F(0), F(1), F(0)), F(1))
        assert engine.common_sphere(c1, c2) is None

    def test_coplanar_cospherical_max(self):
        sph = Sphere(point(0, 0, 0), F(1))
        circles = []
        for z in (F(1, 2), F(-1, 2), F(0)):
            r = geom.surface_pair_intersection(Plane(F(0), F(0), F(1), -z), sph)
            circles.append(r.circle)
        best, witness = engine.coplanar_cospherical_max(circles)
        assert best == 3
        assert isinstance(witness, Sphere)

    def test_coplanar_dominates(self):
        circles = [
            Circle(point(i, 0, 0), (F(0), F(0), F(1)), F(1)) for i in range(4)
        ]
        best, witness = engine.coplanar_cospherical_max(circles)
        assert best == 4
        assert isinstance(witness, Plane)
