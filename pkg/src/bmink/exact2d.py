"""Exact rational-arithmetic engine for convex polygons in the plane.

All coordinates, areas and scale factors are `fractions.Fraction` values, so
every operation here is exact: Minkowski sums, erosions (Minkowski
differences), support values and the equality classifiers never round.
Irrational quantities (square roots of areas) are handled by callers through
squared comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

Scalar = Union[int, Fraction]


class GeometryError(Exception):
    """Invalid geometric input (degenerate polygon, zero direction, ...)."""


class EngineInconsistencyError(GeometryError):
    """An internal invariant failed; indicates a bug, not bad input."""


class Point2(NamedTuple):
    """A point or direction in the plane with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def __mul__(self, s: Scalar) -> "Point2":
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point2") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> Fraction:
        return self.x * other.y - self.y * other.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


def point(x: Scalar, y: Scalar) -> Point2:
    """Build a Point2, coercing ints/strings through Fraction."""
    return Point2(Fraction(x), Fraction(y))


def _canonical_ring(vertices: Sequence[Point2]) -> tuple[Point2, ...]:
    """Collapse duplicates/collinear triples and rotate to the lex-min vertex.

    The input must be a counterclockwise ring.  Raises GeometryError if fewer
    than three vertices survive or a clockwise turn is found.
    """
    verts = [Point2(Fraction(p[0]), Fraction(p[1])) for p in vertices]
    # Drop consecutive duplicates (with wrap-around).
    dedup: list[Point2] = []
    for p in verts:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    # Collapse collinear middle vertices until stable.
    changed = True
    while changed and len(dedup) >= 3:
        changed = False
        out: list[Point2] = []
        n = len(dedup)
        for i in range(n):
            a, b, c = dedup[i - 1], dedup[i], dedup[(i + 1) % n]
            turn = (b - a).cross(c - b)
            if turn < 0:
                raise GeometryError("vertex ring is not counterclockwise convex")
            if turn == 0:
                changed = True
                continue
            out.append(b)
        dedup = out
    if len(dedup) < 3:
        raise GeometryError("polygon needs at least 3 non-collinear vertices")
    k = min(range(len(dedup)), key=lambda i: dedup[i])
    ring = tuple(dedup[k:] + dedup[:k])
    for i in range(len(ring)):
        a, b, c = ring[i - 1], ring[i], ring[(i + 1) % len(ring)]
        if (b - a).cross(c - b) <= 0:
            raise EngineInconsistencyError("canonical ring not strictly convex")
    return ring


class ConvexPolygon:
    """Strictly convex polygon with exact rational vertices.

    Vertices are stored counterclockwise with the lexicographic minimum
    first, so two polygons are equal exactly when their vertex tuples are.
    Collinear vertices are collapsed at construction.  Instances are
    immutable.
    """

    __slots__ = ("vertices", "_area")

    def __init__(self, vertices: Iterable[Sequence[Scalar]]):
        self.vertices: tuple[Point2, ...] = _canonical_ring(list(vertices))
        self._area: Optional[Fraction] = None

    @classmethod
    def hull(cls, points: Iterable[Sequence[Scalar]]) -> "ConvexPolygon":
        """Convex hull (monotone chain) of a point set; strict turns only."""
        pts = sorted({Point2(Fraction(p[0]), Fraction(p[1])) for p in points})
        if len(pts) < 3:
            raise GeometryError("hull needs at least 3 distinct points")

        def chain(seq: Sequence[Point2]) -> list[Point2]:
            out: list[Point2] = []
            for p in seq:
                while len(out) >= 2 and (out[-1] - out[-2]).cross(p - out[-1]) <= 0:
                    out.pop()
                out.append(p)
            return out

        lower = chain(pts)
        upper = chain(pts[::-1])
        ring = lower[:-1] + upper[:-1]
        return cls(ring)

    @classmethod
    def box(cls, lo: Sequence[Scalar], hi: Sequence[Scalar]) -> "ConvexPolygon":
        x0, y0 = Fraction(lo[0]), Fraction(lo[1])
        x1, y1 = Fraction(hi[0]), Fraction(hi[1])
        if not (x0 < x1 and y0 < y1):
            raise GeometryError("box needs lo < hi on both axes")
        return cls([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    @classmethod
    def regular_gon(cls, sides: int, radius: Scalar = 1,
                    snap_denominator: int = 2 ** 20) -> "ConvexPolygon":
        """Regular polygon with vertices snapped onto a rational grid.

        Stands in for disks, which have no exact rational representation;
        the area deficit versus the true disk is the approximation gap.
        """
        import math

        if sides < 3:
            raise GeometryError("need at least 3 sides")
        r = Fraction(radius)
        pts = []
        for k in range(sides):
            ang = 2 * math.pi * k / sides
            pts.append((r * Fraction(round(math.cos(ang) * snap_denominator),
                                     snap_denominator),
                        r * Fraction(round(math.sin(ang) * snap_denominator),
                                     snap_denominator)))
        return cls.hull(pts)

    @property
    def area(self) -> Fraction:
        """Exact area by the shoelace formula; strictly positive."""
        if self._area is None:
            total = Fraction(0)
            v = self.vertices
            for i in range(len(v)):
                total += v[i].cross(v[(i + 1) % len(v)])
            self._area = total / 2
        return self._area

    def edge_vectors(self) -> list[Point2]:
        v = self.vertices
        return [v[(i + 1) % len(v)] - v[i] for i in range(len(v))]

    def edge_normals(self) -> list[Point2]:
        """Outward (unnormalized) normals, one per edge."""
        return [Point2(e.y, -e.x) for e in self.edge_vectors()]

    def bbox(self) -> tuple[Point2, Point2]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return Point2(min(xs), min(ys)), Point2(max(xs), max(ys))

    def contains(self, p: Point2) -> bool:
        """Exact closed-set membership test."""
        v = self.vertices
        for i in range(len(v)):
            if (v[(i + 1) % len(v)] - v[i]).cross(p - v[i]) < 0:
                return False
        return True

    def contains_polygon(self, other: "ConvexPolygon") -> bool:
        return all(self.contains(p) for p in other.vertices)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        vs = ", ".join(f"({p.x},{p.y})" for p in self.vertices)
        return f"ConvexPolygon[{vs}]"


def area(p: ConvexPolygon) -> Fraction:
    return p.area


def support_value(p: ConvexPolygon, u: Point2) -> Fraction:
    """Exact support value: max of <v, u> over the vertices."""
    if u.is_zero():
        raise GeometryError("support direction must be nonzero")
    return max(v.dot(u) for v in p.vertices)


def width(p: ConvexPolygon, u: Point2) -> Fraction:
    """Width in direction u (direction-scale covariant, u unnormalized)."""
    if u.is_zero():
        raise GeometryError("width direction must be nonzero")
    return support_value(p, u) + support_value(p, -u)


def scale(p: ConvexPolygon, factor: Scalar) -> ConvexPolygon:
    f = Fraction(factor)
    if f <= 0:
        raise GeometryError("scale factor must be positive")
    return ConvexPolygon([v * f for v in p.vertices])


def translate(p: ConvexPolygon, v: Point2) -> ConvexPolygon:
    return ConvexPolygon([w + v for w in p.vertices])


def reflect(p: ConvexPolygon) -> ConvexPolygon:
    """Reflection through the origin."""
    return ConvexPolygon([-w for w in p.vertices])


def _angle_half(d: Point2) -> int:
    # 0 for directions in (-90 deg, +90 deg], 1 for the rest; matches the
    # angular sweep of edge vectors of a CCW ring started at the lex-min vertex.
    return 0 if (d.x > 0 or (d.x == 0 and d.y > 0)) else 1


def _angle_less(a: Point2, b: Point2) -> bool:
    ha, hb = _angle_half(a), _angle_half(b)
    if ha != hb:
        return ha < hb
    return a.cross(b) > 0


def minkowski_sum(p: ConvexPolygon, q: ConvexPolygon) -> ConvexPolygon:
    """Exact Minkowski sum by merging the two edge sequences by angle.

    Parallel edges are combined, so the result has at most |p| + |q|
    vertices.  Commutative by construction.
    """
    pe, qe = p.edge_vectors(), q.edge_vectors()
    edges: list[Point2] = []
    i = j = 0
    while i < len(pe) and j < len(qe):
        if _angle_less(pe[i], qe[j]):
            edges.append(pe[i])
            i += 1
        elif _angle_less(qe[j], pe[i]):
            edges.append(qe[j])
            j += 1
        else:
            edges.append(pe[i] + qe[j])
            i += 1
            j += 1
    edges.extend(pe[i:])
    edges.extend(qe[j:])

    start = p.vertices[0] + q.vertices[0]
    ring = [start]
    for e in edges[:-1]:
        ring.append(ring[-1] + e)
    return ConvexPolygon(ring)


@dataclass(frozen=True)
class ErosionResult:
    """Closure of an erosion K (-) T, plus an emptiness flag.

    The erosion itself is open by definition; we store its closure because
    Lebesgue area is insensitive to the boundary.  `is_empty` is decided by
    strict feasibility: the result is empty exactly when the half-plane
    intersection has no interior.
    """

    region: Optional[ConvexPolygon]
    is_empty: bool
    openness_note: str = "stored region is the closure; the true set is its interior"

    @property
    def area(self) -> Fraction:
        return Fraction(0) if self.region is None else self.region.area


def _clip_halfplane(ring: list[Point2], u: Point2, c: Fraction) -> list[Point2]:
    """Clip a convex CCW ring against {x : <x,u> <= c} (Sutherland-Hodgman)."""
    if not ring:
        return []
    out: list[Point2] = []
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        da, db = c - a.dot(u), c - b.dot(u)
        if da >= 0:
            out.append(a)
        if (da > 0 and db < 0) or (da < 0 and db > 0):
            t = da / (da - db)
            out.append(a + (b - a) * t)
    return out


def _ring_area2(ring: Sequence[Point2]) -> Fraction:
    total = Fraction(0)
    for i in range(len(ring)):
        total += ring[i].cross(ring[(i + 1) % len(ring)])
    return total


def erode(k: ConvexPolygon, t: ConvexPolygon) -> ErosionResult:
    """Minkowski difference K (-) T as a half-plane intersection.

    A translate x satisfies x - T inside K exactly when, for every outward
    edge normal u of K, <x, u> <= h_K(u) - h_T(-u).  The intersection of
    those half-planes is clipped out of a bounding box; a lower-dimensional
    or void intersection means the (open) erosion is empty.
    """
    klo, khi = k.bbox()
    tlo, thi = t.bbox()
    margin = Fraction(1)
    ring: list[Point2] = [
        Point2(klo.x + tlo.x - margin, klo.y + tlo.y - margin),
        Point2(khi.x + thi.x + margin, klo.y + tlo.y - margin),
        Point2(khi.x + thi.x + margin, khi.y + thi.y + margin),
        Point2(klo.x + tlo.x - margin, khi.y + thi.y + margin),
    ]
    for u in k.edge_normals():
        c = support_value(k, u) - support_value(t, -u)
        ring = _clip_halfplane(ring, u, c)
        if not ring:
            return ErosionResult(None, True)
    if _ring_area2(ring) == 0:
        return ErosionResult(None, True)
    return ErosionResult(ConvexPolygon(ring), False)


def _erosion_blocked(k: ConvexPolygon, t: ConvexPolygon) -> bool:
    """Cheap certificate that K (-) T is empty: T at least as wide as K in
    some direction.  Only edge normals are scanned, so False is inconclusive.
    """
    for u in k.edge_normals() + t.edge_normals():
        if width(t, u) >= width(k, u):
            return True
    return False


def partial_sum_area(a: ConvexPolygon, b: ConvexPolygon) -> Fraction:
    """Area of the boundary sum of A and B (both boundaries, unscaled).

    Equals area(A+B) minus the area of whichever erosion is nonempty; at
    most one can be, so finding both nonempty is an engine bug.
    """
    total = minkowski_sum(a, b).area
    ab = None if _erosion_blocked(a, b) else erode(a, b)
    ba = None if _erosion_blocked(b, a) else erode(b, a)
    area_ab = ab.area if ab is not None else Fraction(0)
    area_ba = ba.area if ba is not None else Fraction(0)
    if ab is not None and ba is not None and not ab.is_empty and not ba.is_empty:
        raise EngineInconsistencyError(
            "both erosions nonempty; contradicts the sum decomposition")
    return total - area_ab - area_ba


def boundary_sum_volume(k: ConvexPolygon, t: ConvexPolygon,
                        lam: Scalar) -> Fraction:
    """Exact area of the lam-weighted boundary sum of K and T.

    Computes area(lam*K + (1-lam)*T) minus the area of the single possible
    hole (the erosion of the larger scaled body by the smaller).
    """
    lam = Fraction(lam)
    if not (0 < lam < 1):
        raise GeometryError("lambda must lie strictly between 0 and 1")
    return partial_sum_area(scale(k, lam), scale(t, 1 - lam))


class EqualityTag(Enum):
    TRANSLATE = "translate"
    HOMOTHETIC_CENTRALLY_SYMMETRIC_2D = "homothetic_centrally_symmetric_2d"
    NO_EQUALITY = "no_equality"


@dataclass(frozen=True)
class EqualityClass:
    """Outcome of the equality-case classifier with an exact witness."""

    tag: EqualityTag
    translation: Optional[Point2] = None
    ratio: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.tag is not EqualityTag.NO_EQUALITY


def _translation_witness(k: ConvexPolygon, t: ConvexPolygon) -> Optional[Point2]:
    # Canonical rotation survives translation, so vertices pair up in order.
    if len(k) != len(t):
        return None
    shift = t.vertices[0] - k.vertices[0]
    for a, b in zip(k.vertices, t.vertices):
        if a + shift != b:
            return None
    return shift


def _homothety_witness(
        k: ConvexPolygon, t: ConvexPolygon) -> Optional[tuple[Fraction, Point2]]:
    # T = ratio * K + shift, vertex by vertex.  Canonical rotation survives
    # positive scaling, so order is preserved.
    if len(k) != len(t):
        return None
    ek = k.vertices[1] - k.vertices[0]
    et = t.vertices[1] - t.vertices[0]
    if ek.cross(et) != 0:
        return None
    ratio = et.x / ek.x if ek.x != 0 else et.y / ek.y
    if ratio <= 0:
        return None
    shift = t.vertices[0] - k.vertices[0] * ratio
    for a, b in zip(k.vertices, t.vertices):
        if a * ratio + shift != b:
            return None
    return ratio, shift


def is_centrally_symmetric(p: ConvexPolygon) -> bool:
    """True when some translate of P equals -P."""
    return _translation_witness(p, reflect(p)) is not None


def classify_equality(k: ConvexPolygon, t: ConvexPolygon) -> EqualityClass:
    """Classify the pair for equality in the boundary-average volume bound.

    Translate: T is an exact translate of K.  The homothetic class needs
    both a positive homothety K -> T and central symmetry of K (hence of T).
    """
    shift = _translation_witness(k, t)
    if shift is not None:
        return EqualityClass(EqualityTag.TRANSLATE, translation=shift)
    hom = _homothety_witness(k, t)
    if hom is not None and is_centrally_symmetric(k):
        ratio, shift = hom
        return EqualityClass(EqualityTag.HOMOTHETIC_CENTRALLY_SYMMETRIC_2D,
                             translation=shift, ratio=ratio)
    return EqualityClass(EqualityTag.NO_EQUALITY)
