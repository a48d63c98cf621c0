"""
Minimal 2D geometry kernel for ruler-and-compass constructions.

Points, rays, circles, signed angles, perpendiculars, bisectors and
intersections. Every function is pure and works on immutable values.

Conventions:
    - Angles are radians; positive = counterclockwise.
    - signed_angle(..., "ccw") is the rotation angle that carries the first
      leg onto the second, in (-pi, pi]; "cw" is its negative.
    - One tolerance (GEOMETRIC_TOLERANCE) decides degeneracy, tangency and
      "lies on" predicates.
"""

import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

from pipelines.origon.config import GEOMETRIC_TOLERANCE
from pipelines.origon.errors import DegeneratePoint

Orientation = Literal["ccw", "cw"]
TurnSide = Literal["left", "right"]

TWO_PI = 2.0 * math.pi


# =============================================================================
# VALUE TYPES
# =============================================================================

@dataclass(frozen=True)
class Point2:
    """A point (or free vector) in the development plane."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Point2 coordinates must be finite, got ({self.x}, {self.y})")

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Point2":
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Point2":
        n = self.norm()
        if n <= GEOMETRIC_TOLERANCE:
            raise DegeneratePoint(f"cannot normalize near-zero vector ({self.x}, {self.y})")
        return Point2(self.x / n, self.y / n)

    def rotated(self, theta: float) -> "Point2":
        c, s = math.cos(theta), math.sin(theta)
        return Point2(c * self.x - s * self.y, s * self.x + c * self.y)

    def perp(self) -> "Point2":
        """Counterclockwise quarter turn."""
        return Point2(-self.y, self.x)

    def heading(self) -> float:
        """Polar angle in (-pi, pi]."""
        return math.atan2(self.y, self.x)

    def mirrored(self) -> "Point2":
        """Reflection across the vertical axis x = 0."""
        return Point2(-self.x, self.y)

    def as_list(self) -> List[float]:
        return [self.x, self.y]


ORIGIN = Point2(0.0, 0.0)


@dataclass(frozen=True)
class Ray:
    """Half-line from ``origin`` along the unit vector ``direction``."""

    origin: Point2
    direction: Point2

    def __post_init__(self) -> None:
        if abs(self.direction.norm() - 1.0) > GEOMETRIC_TOLERANCE:
            raise ValueError(
                f"Ray direction must be a unit vector, got norm {self.direction.norm()}"
            )

    @classmethod
    def through(cls, origin: Point2, target: Point2) -> "Ray":
        """Ray from ``origin`` passing through ``target``."""
        return cls(origin, (target - origin).unit())

    @classmethod
    def at_heading(cls, origin: Point2, theta: float) -> "Ray":
        return cls(origin, Point2(math.cos(theta), math.sin(theta)))

    def point_at(self, t: float) -> Point2:
        return self.origin + self.direction * t

    def parameter_of(self, p: Point2) -> float:
        """Signed ray parameter of the projection of ``p``."""
        return (p - self.origin).dot(self.direction)

    def reversed(self) -> "Ray":
        return Ray(self.origin, -self.direction)

    def mirrored(self) -> "Ray":
        return Ray(self.origin.mirrored(), self.direction.mirrored())


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise ValueError(f"Circle radius must be positive, got {self.radius}")

    def point_at(self, theta: float) -> Point2:
        """Point at polar angle ``theta`` around the center."""
        return self.center + Point2(math.cos(theta), math.sin(theta)) * self.radius

    def contains(self, p: Point2, tol: float = GEOMETRIC_TOLERANCE) -> bool:
        """True when ``p`` lies on the circle within ``tol``."""
        return abs(distance(self.center, p) - self.radius) <= tol


# =============================================================================
# MEASUREMENT
# =============================================================================

def distance(a: Point2, b: Point2) -> float:
    return (b - a).norm()


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)


def _leg(vertex: Point2, p: Point2, name: str, tol: float) -> Point2:
    leg = p - vertex
    if leg.norm() <= tol:
        raise DegeneratePoint(
            f"{name} ({p.x:.6g}, {p.y:.6g}) coincides with vertex ({vertex.x:.6g}, {vertex.y:.6g})"
        )
    return leg


def signed_angle(
    vertex: Point2,
    frm: Point2,
    to: Point2,
    orientation: Orientation = "ccw",
    tol: float = GEOMETRIC_TOLERANCE,
) -> float:
    """
    Rotation angle at ``vertex`` carrying ray vertex→frm onto ray vertex→to.

    Args:
        vertex: Apex of the angle.
        frm: Point on the initial leg.
        to: Point on the terminal leg.
        orientation: "ccw" measures counterclockwise, "cw" clockwise.
        tol: Minimum leg length.

    Returns:
        Angle in (-pi, pi].

    Raises:
        DegeneratePoint: If a leg is shorter than ``tol``.
    """
    a = _leg(vertex, frm, "from", tol)
    b = _leg(vertex, to, "to", tol)
    theta = math.atan2(a.cross(b), a.dot(b))
    if orientation == "cw":
        theta = -theta
    if theta <= -math.pi:
        theta += TWO_PI
    return theta


def turn_angle(
    vertex: Point2,
    frm: Point2,
    to: Point2,
    orientation: Orientation = "ccw",
    lower: float = 0.0,
    tol: float = GEOMETRIC_TOLERANCE,
) -> float:
    """signed_angle reduced into the window [lower, lower + 2*pi)."""
    return wrap_angle(signed_angle(vertex, frm, to, orientation, tol), lower)


def wrap_angle(theta: float, lower: float = -math.pi) -> float:
    """Reduce ``theta`` into [lower, lower + 2*pi)."""
    return lower + math.fmod(math.fmod(theta - lower, TWO_PI) + TWO_PI, TWO_PI)


def unsigned_angle(u: Point2, v: Point2) -> float:
    """Angle between two nonzero vectors, in [0, pi]."""
    return abs(math.atan2(u.cross(v), u.dot(v)))


def distance_to_line(p: Point2, origin: Point2, direction: Point2) -> float:
    return abs(direction.unit().cross(p - origin))


# =============================================================================
# CONSTRUCTION
# =============================================================================

def rotate_about(p: Point2, center: Point2, theta: float) -> Point2:
    return center + (p - center).rotated(theta)


def perpendicular_through(p: Point2, base: Ray, side: TurnSide) -> Ray:
    """
    Ray through ``p`` orthogonal to ``base``.

    ``side`` has no default: "left" turns the base direction a quarter turn
    counterclockwise, "right" clockwise.
    """
    d = base.direction.perp()
    return Ray(p, d if side == "left" else -d)


def angle_bisector(vertex: Point2, a: Point2, b: Point2, tol: float = GEOMETRIC_TOLERANCE) -> Ray:
    """
    Ray from ``vertex`` halving the non-reflex angle avb.

    A straight angle is halved counterclockwise from the ``a`` leg.

    Raises:
        DegeneratePoint: If ``a`` or ``b`` coincides with ``vertex``.
    """
    theta = signed_angle(vertex, a, b, "ccw", tol)
    ua = (a - vertex).unit()
    return Ray(vertex, ua.rotated(theta / 2.0))


def perpendicular_bisector(a: Point2, b: Point2) -> Ray:
    """Ray from the midpoint of ab, turned a quarter counterclockwise from a→b."""
    return Ray(midpoint(a, b), (b - a).unit().perp())


def point_on_circle(circle: Circle, theta: float) -> Point2:
    return circle.point_at(theta)


# =============================================================================
# INTERSECTION
# =============================================================================

def line_line_parameters(
    p: Point2,
    d: Point2,
    q: Point2,
    e: Point2,
    tol: float = GEOMETRIC_TOLERANCE,
) -> Optional[Tuple[float, float]]:
    """
    Parameters (t, s) with p + t*d = q + s*e, or None for parallel lines.
    """
    denom = d.cross(e)
    scale = d.norm() * e.norm()
    if abs(denom) <= tol * scale:
        return None
    w = q - p
    return w.cross(e) / denom, w.cross(d) / denom


def line_line_intersection(
    p: Point2,
    d: Point2,
    q: Point2,
    e: Point2,
    tol: float = GEOMETRIC_TOLERANCE,
) -> Optional[Point2]:
    """Intersection of the infinite lines p + t*d and q + s*e (None if parallel)."""
    params = line_line_parameters(p, d, q, e, tol)
    if params is None:
        return None
    return p + d * params[0]


def ray_line_intersection(
    ray: Ray, q: Point2, e: Point2, tol: float = GEOMETRIC_TOLERANCE
) -> Optional[Point2]:
    params = line_line_parameters(ray.origin, ray.direction, q, e, tol)
    if params is None or params[0] < -tol:
        return None
    return ray.point_at(max(params[0], 0.0))


def ray_segment_intersection(
    ray: Ray, a: Point2, b: Point2, tol: float = GEOMETRIC_TOLERANCE
) -> Optional[Tuple[float, Point2]]:
    """
    First point where ``ray`` meets segment ab.

    Returns:
        (ray parameter, point), or None when they miss.
    """
    seg = b - a
    length = seg.norm()
    if length <= tol:
        raise DegeneratePoint("segment endpoints coincide")
    params = line_line_parameters(ray.origin, ray.direction, a, seg, tol)
    if params is None:
        return None
    t, s = params
    if t < -tol or s * length < -tol or (s - 1.0) * length > tol:
        return None
    return max(t, 0.0), ray.point_at(max(t, 0.0))


def _line_circle_parameters(origin: Point2, direction: Point2, circle: Circle, tol: float) -> List[float]:
    # |o + t d - c|^2 = R^2 with |d| = 1  →  t^2 + 2 b t + k = 0
    f = origin - circle.center
    b = direction.dot(f)
    k = f.dot(f) - circle.radius * circle.radius
    disc = b * b - k
    if disc < -tol:
        return []
    if abs(disc) <= tol:
        return [-b]
    root = math.sqrt(disc)
    q = -b - math.copysign(root, b)
    if q == 0.0:
        return [-root, root]
    return sorted([q, k / q])


def line_circle_intersections(
    origin: Point2,
    direction: Point2,
    circle: Circle,
    tol: float = GEOMETRIC_TOLERANCE,
) -> List[Tuple[float, Point2]]:
    """Both-way line/circle intersections as (parameter, point), ascending."""
    d = direction.unit()
    return [(t, origin + d * t) for t in _line_circle_parameters(origin, d, circle, tol)]


def ray_circle_intersections(ray: Ray, circle: Circle, tol: float = GEOMETRIC_TOLERANCE) -> List[Point2]:
    """
    Intersections of ``ray`` with ``circle`` ordered by ray parameter.

    A discriminant within ``tol`` of zero yields a single tangency point.
    Parameters slightly below zero (within ``tol``) are clamped to the origin.
    """
    hits = []
    for t in _line_circle_parameters(ray.origin, ray.direction, circle, tol):
        if t >= -tol:
            hits.append(ray.point_at(max(t, 0.0)))
    return hits


def segment_circle_intersections(
    a: Point2, b: Point2, circle: Circle, tol: float = GEOMETRIC_TOLERANCE
) -> List[Point2]:
    """Intersections of segment ab with ``circle``, ordered from ``a``."""
    seg = b - a
    length = seg.norm()
    if length <= tol:
        raise DegeneratePoint("segment endpoints coincide")
    d = seg * (1.0 / length)
    return [
        a + d * min(max(t, 0.0), length)
        for t in _line_circle_parameters(a, d, circle, tol)
        if -tol <= t <= length + tol
    ]


def second_chord_point(on_circle: Point2, direction: Point2, circle: Circle) -> Point2:
    """
    Other end of the chord leaving ``on_circle`` along ``direction``.

    For a point on the circle the line parameters are 0 and -2 d·(p - c);
    the closed form avoids cancellation in the quadratic. The parameter may
    be negative (chord behind the direction) or zero (tangent line).
    """
    d = direction.unit()
    t = -2.0 * d.dot(on_circle - circle.center)
    return on_circle + d * t
