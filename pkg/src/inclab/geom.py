"""Exact rational geometric kernel.

Scalars are `fractions.Fraction` (arbitrary precision, always reduced, exact
arithmetic), points are rational 3-vectors, and every predicate is decided
exactly.  Radii of spheres and circles are stored *squared* so that the whole
pipeline stays inside the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import CoincidentObjects, UnsupportedObject, ValidationError

Scalar = Fraction

Vec3 = tuple[Fraction, Fraction, Fraction]


def frac(value) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ValidationError(f"refusing to coerce float {value!r}; pass a rational")
    return Fraction(value)


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# vectors and points

def vadd(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def vsub(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def vscale(t, v: Vec3) -> Vec3:
    return (t * v[0], t * v[1], t * v[2])


def dot(u: Vec3, v: Vec3) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def norm2(v: Vec3) -> Fraction:
    return dot(v, v)


def is_zero_vec(v: Vec3) -> bool:
    return v[0] == 0 and v[1] == 0 and v[2] == 0


def primitive_vector(v: Iterable[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to coprime integers, first nonzero > 0."""
    comps = [frac(c) for c in v]
    if all(c == 0 for c in comps):
        raise ValidationError("zero vector has no primitive form")
    lcm = 1
    for c in comps:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [c.numerator * (lcm // c.denominator) for c in comps]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    ints = [c // g for c in ints]
    lead = next(c for c in ints if c != 0)
    if lead < 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", frac(self.x))
        object.__setattr__(self, "y", frac(self.y))
        object.__setattr__(self, "z", frac(self.z))

    def as_tuple(self) -> Vec3:
        return (self.x, self.y, self.z)


def point(x, y, z) -> Point3:
    return Point3(frac(x), frac(y), frac(z))


def dist2(p: Point3, q: Point3) -> Fraction:
    return norm2(vsub(p.as_tuple(), q.as_tuple()))


# ---------------------------------------------------------------------------
# trivariate polynomials

Monomial = tuple[int, int, int]


class TriPoly:
    """Sparse trivariate polynomial with exact rational coefficients.

    `terms` maps exponent triples (i, j, k) to nonzero coefficients; the zero
    polynomial has an empty map.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[Monomial, Fraction]] = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = frac(coeff)
                if c != 0:
                    i, j, k = mono
                    if i < 0 or j < 0 or k < 0:
                        raise ValidationError("negative exponent in TriPoly")
                    clean[(int(i), int(j), int(k))] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "TriPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "TriPoly":
        return cls({(0, 0, 0): frac(c)})

    @classmethod
    def variable(cls, axis: int) -> "TriPoly":
        mono = [0, 0, 0]
        mono[axis] = 1
        return cls({tuple(mono): Fraction(1)})

    @classmethod
    def linear(cls, a, b, c, d) -> "TriPoly":
        """a*x + b*y + c*z + d."""
        return cls(
            {
                (1, 0, 0): frac(a),
                (0, 1, 0): frac(b),
                (0, 0, 1): frac(c),
                (0, 0, 0): frac(d),
            }
        )

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(i + j + k for (i, j, k) in self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TriPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "TriPoly(0)"
        parts = []
        for mono in sorted(self.terms):
            parts.append(f"{self.terms[mono]}*x^{mono[0]}y^{mono[1]}z^{mono[2]}")
        return "TriPoly(" + " + ".join(parts) + ")"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "TriPoly") -> "TriPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return TriPoly(out)

    def __neg__(self) -> "TriPoly":
        return TriPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TriPoly") -> "TriPoly":
        return self + (-other)

    def __mul__(self, other: Union["TriPoly", int, Fraction]) -> "TriPoly":
        if isinstance(other, (int, Fraction)):
            return TriPoly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                mono = (i1 + i2, j1 + j2, k1 + k2)
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return TriPoly(out)

    __rmul__ = __mul__

    def evaluate(self, p: Point3) -> Fraction:
        total = Fraction(0)
        for (i, j, k), c in self.terms.items():
            total += c * p.x**i * p.y**j * p.z**k
        return total

    def translate(self, v: Vec3) -> "TriPoly":
        """Return g with g(x) = f(x - v): the zero set shifted by +v."""
        out = TriPoly.zero()
        shifted = [
            TriPoly.linear(1, 0, 0, -v[0]),
            TriPoly.linear(0, 1, 0, -v[1]),
            TriPoly.linear(0, 0, 1, -v[2]),
        ]
        for (i, j, k), c in self.terms.items():
            term = TriPoly.constant(c)
            for axis, e in ((0, i), (1, j), (2, k)):
                for _ in range(e):
                    term = term * shifted[axis]
            out = out + term
        return out

    def restrict_to_line(self, origin: Point3, direction: Vec3) -> list[Fraction]:
        """Univariate coefficients (ascending) of t -> f(origin + t*direction)."""
        o = origin.as_tuple()
        axes = [[o[a], direction[a]] for a in range(3)]
        total = [Fraction(0)]
        for (i, j, k), c in self.terms.items():
            term = [c]
            for axis, e in ((0, i), (1, j), (2, k)):
                for _ in range(e):
                    term = _umul(term, axes[axis])
            total = _uadd(total, term)
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return total

    def primitive(self) -> "TriPoly":
        """Canonical scalar multiple: integer coprime coefficients, leading
        coefficient (largest exponent triple) positive."""
        if not self.terms:
            return TriPoly.zero()
        scaled = primitive_vector([self.terms[m] for m in sorted(self.terms)])
        out = {m: c for m, c in zip(sorted(self.terms), scaled)}
        lead = max(out)
        if out[lead] < 0:
            out = {m: -c for m, c in out.items()}
        return TriPoly(out)

    def is_scalar_multiple_of(self, other: "TriPoly") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.primitive() == other.primitive()


def _uadd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


def _umul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


# ---------------------------------------------------------------------------
# surfaces

@dataclass(frozen=True)
class Plane:
    """a*x + b*y + c*z + d = 0 with (a, b, c) != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, frac(getattr(self, f)))
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise ValidationError("plane normal must be nonzero")

    def normal(self) -> Vec3:
        return (self.a, self.b, self.c)

    def defining_poly(self) -> TriPoly:
        return TriPoly.linear(self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Sphere:
    center: Point3
    radius2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius2", frac(self.radius2))
        if self.radius2 <= 0:
            raise ValidationError("sphere needs radius2 > 0")

    def defining_poly(self) -> TriPoly:
        cx, cy, cz = self.center.as_tuple()
        return TriPoly(
            {
                (2, 0, 0): Fraction(1),
                (0, 2, 0): Fraction(1),
                (0, 0, 2): Fraction(1),
                (1, 0, 0): -2 * cx,
                (0, 1, 0): -2 * cy,
                (0, 0, 1): -2 * cz,
                (0, 0, 0): cx * cx + cy * cy + cz * cz - self.radius2,
            }
        )


@dataclass(frozen=True)
class Implicit:
    poly: TriPoly

    def __post_init__(self):
        if self.poly.is_zero() or self.poly.degree() < 1:
            raise ValidationError("implicit surface needs a nonconstant polynomial")


Surface = Union[Plane, Sphere, Implicit]


# ---------------------------------------------------------------------------
# curves

@dataclass(frozen=True)
class Line:
    origin: Point3
    direction: Vec3

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(frac(c) for c in self.direction))
        if is_zero_vec(self.direction):
            raise ValidationError("line direction must be nonzero")


@dataclass(frozen=True)
class Circle:
    center: Point3
    normal: Vec3
    radius2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(frac(c) for c in self.normal))
        object.__setattr__(self, "radius2", frac(self.radius2))
        if is_zero_vec(self.normal):
            raise ValidationError("circle normal must be nonzero")
        if self.radius2 <= 0:
            raise ValidationError("circle needs radius2 > 0")

    def plane(self) -> Plane:
        n = self.normal
        return Plane(n[0], n[1], n[2], -dot(n, self.center.as_tuple()))

    def axis(self) -> "Line":
        return Line(self.center, self.normal)


@dataclass(frozen=True)
class ImplicitPair:
    f: TriPoly
    g: TriPoly

    def __post_init__(self):
        if self.f.is_zero() or self.g.is_zero():
            raise ValidationError("implicit curve needs two nonzero polynomials")
        if self.f.is_scalar_multiple_of(self.g):
            raise ValidationError("implicit pair must be independent polynomials")


Curve = Union[Line, Circle, ImplicitPair]


# ---------------------------------------------------------------------------
# intersection results

@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class SinglePoint:
    point: Point3


@dataclass(frozen=True)
class CircleCurve:
    circle: Circle


@dataclass(frozen=True)
class LineCurve:
    line: Line


@dataclass(frozen=True)
class CoincidentSurfaces:
    pass


@dataclass(frozen=True)
class Unsupported:
    pass


IntersectionResult = Union[
    EmptySet, SinglePoint, CircleCurve, LineCurve, CoincidentSurfaces, Unsupported
]


# ---------------------------------------------------------------------------
# canonical forms

def canonicalize(obj):
    """Canonical representative within each tag class; idempotent."""
    if isinstance(obj, Plane):
        a, b, c, d = primitive_vector([obj.a, obj.b, obj.c, obj.d])
        if a == 0 and b == 0 and c == 0:
            raise ValidationError("plane normal must be nonzero")
        lead = next(v for v in (a, b, c) if v != 0)
        if lead < 0:
            a, b, c, d = -a, -b, -c, -d
        return Plane(a, b, c, d)
    if isinstance(obj, Sphere):
        return obj
    if isinstance(obj, Implicit):
        return Implicit(obj.poly.primitive())
    if isinstance(obj, Line):
        d = primitive_vector(obj.direction)
        o = obj.origin.as_tuple()
        t = dot(o, d) / dot(d, d)
        base = vsub(o, vscale(t, d))
        return Line(Point3(*base), d)
    if isinstance(obj, Circle):
        return Circle(obj.center, primitive_vector(obj.normal), obj.radius2)
    if isinstance(obj, ImplicitPair):
        f = obj.f.primitive()
        g = obj.g.primitive()
        key_f = sorted(f.terms.items())
        key_g = sorted(g.terms.items())
        if key_g < key_f:
            f, g = g, f
        return ImplicitPair(f, g)
    raise UnsupportedObject(f"cannot canonicalize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# incidence predicates

def eval_poly(f: TriPoly, p: Point3) -> Fraction:
    return f.evaluate(p)


def point_on_surface(p: Point3, surface: Surface) -> bool:
    if isinstance(surface, Plane):
        return (
            surface.a * p.x + surface.b * p.y + surface.c * p.z + surface.d == 0
        )
    if isinstance(surface, Sphere):
        return dist2(p, surface.center) == surface.radius2
    if isinstance(surface, Implicit):
        return surface.poly.evaluate(p) == 0
    raise UnsupportedObject(f"not a surface: {type(surface).__name__}")


def point_on_curve(p: Point3, curve: Curve) -> bool:
    if isinstance(curve, Line):
        return is_zero_vec(cross(vsub(p.as_tuple(), curve.origin.as_tuple()), curve.direction))
    if isinstance(curve, Circle):
        offset = vsub(p.as_tuple(), curve.center.as_tuple())
        return dot(offset, curve.normal) == 0 and norm2(offset) == curve.radius2
    if isinstance(curve, ImplicitPair):
        return curve.f.evaluate(p) == 0 and curve.g.evaluate(p) == 0
    raise UnsupportedObject(f"not a curve: {type(curve).__name__}")


# ---------------------------------------------------------------------------
# surface-pair intersections (closed forms)

def surface_pair_intersection(s1: Surface, s2: Surface) -> IntersectionResult:
    if isinstance(s1, Implicit) or isinstance(s2, Implicit):
        return Unsupported()
    if isinstance(s1, Plane) and isinstance(s2, Plane):
        return _plane_plane(s1, s2)
    if isinstance(s1, Plane) and isinstance(s2, Sphere):
        return _plane_sphere(s1, s2)
    if isinstance(s1, Sphere) and isinstance(s2, Plane):
        return _plane_sphere(s2, s1)
    return _sphere_sphere(s1, s2)


def _plane_plane(p1: Plane, p2: Plane) -> IntersectionResult:
    direction = cross(p1.normal(), p2.normal())
    if is_zero_vec(direction):
        if canonicalize(p1) == canonicalize(p2):
            return CoincidentSurfaces()
        return EmptySet()
    # Fix the coordinate matching a nonzero direction component to zero and
    # solve the remaining 2x2 system (its determinant is that component).
    k = next(i for i in range(3) if direction[i] != 0)
    idx = [i for i in range(3) if i != k]
    n1, n2 = p1.normal(), p2.normal()
    a11, a12 = n1[idx[0]], n1[idx[1]]
    a21, a22 = n2[idx[0]], n2[idx[1]]
    det = a11 * a22 - a12 * a21
    r1, r2 = -p1.d, -p2.d
    u = (r1 * a22 - r2 * a12) / det
    v = (a11 * r2 - a21 * r1) / det
    coords = [Fraction(0)] * 3
    coords[idx[0]], coords[idx[1]] = u, v
    return LineCurve(Line(Point3(*coords), direction))


def _plane_sphere(pl: Plane, sp: Sphere) -> IntersectionResult:
    n = pl.normal()
    c = sp.center.as_tuple()
    lam = (dot(n, c) + pl.d) / norm2(n)
    foot = Point3(*vsub(c, vscale(lam, n)))
    radius2 = sp.radius2 - lam * lam * norm2(n)
    if radius2 > 0:
        return CircleCurve(Circle(foot, primitive_vector(n), radius2))
    if radius2 == 0:
        return SinglePoint(foot)
    return EmptySet()


def _sphere_sphere(s1: Sphere, s2: Sphere) -> IntersectionResult:
    c1, c2 = s1.center.as_tuple(), s2.center.as_tuple()
    axis = vsub(c2, c1)
    d2 = norm2(axis)
    if d2 == 0:
        if s1.radius2 == s2.radius2:
            return CoincidentSurfaces()
        return EmptySet()
    t = (d2 + s1.radius2 - s2.radius2) / (2 * d2)
    center = Point3(*vadd(c1, vscale(t, axis)))
    radius2 = s1.radius2 - t * t * d2
    if radius2 > 0:
        return CircleCurve(Circle(center, primitive_vector(axis), radius2))
    if radius2 == 0:
        return SinglePoint(center)
    return EmptySet()


# ---------------------------------------------------------------------------
# curve-pair intersections

def curve_pair_intersection(c1: Curve, c2: Curve) -> list[Point3]:
    """Exact rational common points of two lines/circles.

    Raises UnsupportedObject for implicit curves and CoincidentObjects when
    the curves are equal.  Intersection points with irrational coordinates
    cannot exist in this artifact's rational point universe and are omitted.
    """
    if isinstance(c1, ImplicitPair) or isinstance(c2, ImplicitPair):
        raise UnsupportedObject("implicit curve intersections are not supported")
    k1, k2 = canonicalize(c1), canonicalize(c2)
    if k1 == k2:
        raise CoincidentObjects("curves coincide")
    if isinstance(c1, Line) and isinstance(c2, Line):
        return _line_line(c1, c2)
    if isinstance(c1, Line) and isinstance(c2, Circle):
        return _line_circle(c1, c2)
    if isinstance(c1, Circle) and isinstance(c2, Line):
        return _line_circle(c2, c1)
    return _circle_circle(c1, c2)


def _line_line(l1: Line, l2: Line) -> list[Point3]:
    d1, d2 = l1.direction, l2.direction
    o1, o2 = l1.origin.as_tuple(), l2.origin.as_tuple()
    n = cross(d1, d2)
    if is_zero_vec(n):
        return []  # parallel and distinct
    delta = vsub(o2, o1)
    if dot(delta, n) != 0:
        return []  # skew
    s = dot(cross(delta, d2), n) / norm2(n)
    p = Point3(*vadd(o1, vscale(s, d1)))
    return [p]


def _line_circle(line: Line, circle: Circle) -> list[Point3]:
    n = circle.normal
    o = line.origin.as_tuple()
    d = line.direction
    c = circle.center.as_tuple()
    nd = dot(n, d)
    if nd != 0:
        t = dot(n, vsub(c, o)) / nd
        p = Point3(*vadd(o, vscale(t, d)))
        return [p] if point_on_curve(p, circle) else []
    if dot(n, vsub(o, c)) != 0:
        return []  # line parallel to the circle's plane but off it
    # line in the circle's plane: |o + t d - c|^2 = r^2
    w = vsub(o, c)
    qa = norm2(d)
    qb = 2 * dot(w, d)
    qc = norm2(w) - circle.radius2
    return [
        Point3(*vadd(o, vscale(t, d))) for t in _rational_quadratic_roots(qa, qb, qc)
    ]


def _circle_circle(c1: Circle, c2: Circle) -> list[Point3]:
    # Any common point lies on both supporting planes and on the radical
    # plane of the two center-spheres; reduce to a line-circle problem.
    p1, p2 = c1.plane(), c2.plane()
    planes = _plane_plane(p1, p2)
    if isinstance(planes, LineCurve):
        pts = _line_circle(planes.line, c1)
        return [p for p in pts if point_on_curve(p, c2)]
    if isinstance(planes, EmptySet):
        return []
    # coplanar circles: intersect the radical plane of the two defining
    # spheres (center, radius2) with the shared supporting plane
    a1, a2 = c1.center.as_tuple(), c2.center.as_tuple()
    normal = vsub(a2, a1)
    if is_zero_vec(normal):
        return []  # concentric coplanar, distinct radii
    rhs = (norm2(a2) - norm2(a1) + c1.radius2 - c2.radius2) / 2
    radical = Plane(normal[0], normal[1], normal[2], -rhs)
    line = _plane_plane(radical, p1)
    if not isinstance(line, LineCurve):
        return []
    pts = _line_circle(line.line, c1)
    return [p for p in pts if point_on_curve(p, c2)]


def _rational_quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> list[Fraction]:
    if a == 0:
        if b == 0:
            return []
        return [-c / b]
    disc = b * b - 4 * a * c
    root = rational_sqrt(disc)
    if root is None or disc < 0:
        return []
    if root == 0:
        return [-b / (2 * a)]
    return sorted([(-b - root) / (2 * a), (-b + root) / (2 * a)])


# ---------------------------------------------------------------------------
# containment helpers shared by the incidence engine

def surface_contains_curve(surface: Surface, curve: Curve) -> bool:
    """Exact test that a plane/sphere fully contains a line/circle."""
    if isinstance(surface, Plane):
        if isinstance(curve, Line):
            tip = Point3(*vadd(curve.origin.as_tuple(), curve.direction))
            return point_on_surface(curve.origin, surface) and point_on_surface(tip, surface)
        if isinstance(curve, Circle):
            return (
                point_on_surface(curve.center, surface)
                and is_zero_vec(cross(curve.normal, surface.normal()))
            )
        raise UnsupportedObject("containment undefined for implicit curves")
    if isinstance(surface, Sphere):
        if isinstance(curve, Line):
            return False
        if isinstance(curve, Circle):
            offset = vsub(surface.center.as_tuple(), curve.center.as_tuple())
            on_axis = is_zero_vec(cross(offset, curve.normal))
            return on_axis and norm2(offset) + curve.radius2 == surface.radius2
        raise UnsupportedObject("containment undefined for implicit curves")
    raise UnsupportedObject("containment undefined for implicit surfaces")


def line_through(p: Point3, q: Point3) -> Line:
    return Line(p, vsub(q.as_tuple(), p.as_tuple()))
