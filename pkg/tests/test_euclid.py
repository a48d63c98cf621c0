"""
Tests for the 2D geometry kernel.

Tests verify:
- Signed angle orientation and degenerate legs
- Line, ray, segment and circle intersections
- Chord and bisector constructions
- Rigid-motion invariance (property-based)
"""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pipelines.origon.errors import DegeneratePoint
from pipelines.origon.utils.euclid import (
    ORIGIN,
    Circle,
    Point2,
    Ray,
    angle_bisector,
    distance,
    distance_to_line,
    line_line_intersection,
    perpendicular_bisector,
    perpendicular_through,
    ray_circle_intersections,
    ray_segment_intersection,
    rotate_about,
    second_chord_point,
    segment_circle_intersections,
    signed_angle,
    turn_angle,
    wrap_angle,
)

coords = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
angles = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False)
points = st.builds(Point2, coords, coords)


# =============================================================================
# VALUE TYPES
# =============================================================================

class TestValueTypes:
    """Tests for Point2, Ray and Circle."""

    def test_non_finite_point_rejected(self):
        with pytest.raises(ValueError):
            Point2(math.nan, 0.0)

    def test_unit_of_zero_vector_raises(self):
        with pytest.raises(DegeneratePoint):
            Point2(0.0, 0.0).unit()

    def test_ray_requires_unit_direction(self):
        with pytest.raises(ValueError) as exc_info:
            Ray(ORIGIN, Point2(2.0, 0.0))
        assert "unit vector" in str(exc_info.value)

    def test_circle_requires_positive_radius(self):
        with pytest.raises(ValueError):
            Circle(ORIGIN, 0.0)

    def test_mirrored_reflects_across_vertical_axis(self):
        assert Point2(1.5, -2.0).mirrored() == Point2(-1.5, -2.0)

    def test_perp_is_counterclockwise(self):
        assert Point2(1.0, 0.0).perp() == Point2(0.0, 1.0)


# =============================================================================
# ANGLES
# =============================================================================

class TestAngles:
    """Tests for signed_angle, turn_angle and wrap_angle."""

    def test_quarter_turn_counterclockwise(self):
        theta = signed_angle(ORIGIN, Point2(1.0, 0.0), Point2(0.0, 1.0))
        assert theta == pytest.approx(math.pi / 2.0)

    def test_clockwise_is_negated(self):
        theta = signed_angle(ORIGIN, Point2(1.0, 0.0), Point2(0.0, 1.0), "cw")
        assert theta == pytest.approx(-math.pi / 2.0)

    def test_straight_angle_is_pi_not_minus_pi(self):
        theta = signed_angle(ORIGIN, Point2(1.0, 0.0), Point2(-1.0, 0.0))
        assert theta == pytest.approx(math.pi)

    def test_degenerate_leg_raises(self):
        with pytest.raises(DegeneratePoint) as exc_info:
            signed_angle(ORIGIN, ORIGIN, Point2(1.0, 0.0))
        assert "coincides with vertex" in str(exc_info.value)

    def test_turn_angle_window(self):
        theta = turn_angle(ORIGIN, Point2(1.0, 0.0), Point2(0.0, -1.0))
        assert theta == pytest.approx(1.5 * math.pi)

    @given(theta=st.floats(min_value=-50.0, max_value=50.0))
    def test_wrap_angle_lands_in_window(self, theta):
        wrapped = wrap_angle(theta)
        assert -math.pi <= wrapped < math.pi
        assert math.isclose(math.cos(wrapped), math.cos(theta), abs_tol=1e-9)


# =============================================================================
# CONSTRUCTIONS AND INTERSECTIONS
# =============================================================================

class TestIntersections:
    """Tests for line, ray, segment and circle intersections."""

    def test_parallel_lines_return_none(self):
        assert line_line_intersection(ORIGIN, Point2(1.0, 0.0), Point2(0.0, 1.0), Point2(2.0, 0.0)) is None

    def test_crossing_lines(self):
        p = line_line_intersection(ORIGIN, Point2(1.0, 1.0), Point2(2.0, 0.0), Point2(0.0, 1.0))
        assert p.x == pytest.approx(2.0)
        assert p.y == pytest.approx(2.0)

    def test_ray_misses_segment_behind_it(self):
        ray = Ray(ORIGIN, Point2(1.0, 0.0))
        assert ray_segment_intersection(ray, Point2(-1.0, -1.0), Point2(-1.0, 1.0)) is None

    def test_ray_hits_segment(self):
        ray = Ray(ORIGIN, Point2(1.0, 0.0))
        t, p = ray_segment_intersection(ray, Point2(2.0, -1.0), Point2(2.0, 1.0))
        assert t == pytest.approx(2.0)
        assert p.y == pytest.approx(0.0)

    def test_ray_circle_hits_are_ordered(self):
        ray = Ray(Point2(-3.0, 0.0), Point2(1.0, 0.0))
        hits = ray_circle_intersections(ray, Circle(ORIGIN, 1.0))
        assert [h.x for h in hits] == pytest.approx([-1.0, 1.0])

    def test_ray_from_inside_circle_has_one_hit(self):
        hits = ray_circle_intersections(Ray(ORIGIN, Point2(0.0, 1.0)), Circle(ORIGIN, 2.0))
        assert len(hits) == 1
        assert hits[0].y == pytest.approx(2.0)

    def test_tangent_line_gives_single_point(self):
        ray = Ray(Point2(-2.0, 1.0), Point2(1.0, 0.0))
        hits = ray_circle_intersections(ray, Circle(ORIGIN, 1.0))
        assert len(hits) == 1
        assert hits[0].x == pytest.approx(0.0, abs=1e-6)

    def test_segment_circle_clipped_to_segment(self):
        hits = segment_circle_intersections(ORIGIN, Point2(3.0, 0.0), Circle(ORIGIN, 1.0))
        assert len(hits) == 1
        assert hits[0].x == pytest.approx(1.0)

    def test_segment_to_far_endpoint_stays_on_circle(self):
        far = Point2(4.0e5, 3.0e5)
        hits = segment_circle_intersections(Point2(0.1, -0.2), far, Circle(ORIGIN, 1.0))
        assert len(hits) == 1
        assert distance(hits[0], ORIGIN) == pytest.approx(1.0, abs=1e-14)

    def test_second_chord_point_through_center(self):
        end = second_chord_point(Point2(1.0, 0.0), Point2(-1.0, 0.0), Circle(ORIGIN, 1.0))
        assert end.x == pytest.approx(-1.0)

    def test_angle_bisector_of_right_angle(self):
        ray = angle_bisector(ORIGIN, Point2(1.0, 0.0), Point2(0.0, 1.0))
        assert ray.direction.heading() == pytest.approx(math.pi / 4.0)

    def test_perpendicular_bisector_is_equidistant(self):
        a, b = Point2(1.0, 2.0), Point2(4.0, -2.0)
        q = perpendicular_bisector(a, b).point_at(3.7)
        assert distance(q, a) == pytest.approx(distance(q, b))

    def test_perpendicular_through_sides(self):
        base = Ray(ORIGIN, Point2(1.0, 0.0))
        assert perpendicular_through(Point2(2.0, 0.0), base, "left").direction == Point2(0.0, 1.0)
        assert perpendicular_through(Point2(2.0, 0.0), base, "right").direction == Point2(-0.0, -1.0)

    def test_perpendicular_through_needs_side(self):
        with pytest.raises(TypeError):
            perpendicular_through(ORIGIN, Ray(ORIGIN, Point2(1.0, 0.0)))


# =============================================================================
# PROPERTIES
# =============================================================================

class TestRigidMotionProperties:
    """Property-based invariants of the kernel under rotations and translations."""

    @given(a=points, b=points, center=points, theta=angles)
    def test_rotation_preserves_distance(self, a, b, center, theta):
        moved = distance(rotate_about(a, center, theta), rotate_about(b, center, theta))
        assert math.isclose(moved, distance(a, b), rel_tol=1e-9, abs_tol=1e-9)

    @given(vertex=points, a=points, b=points, theta=angles)
    def test_rotation_preserves_signed_angle(self, vertex, a, b, theta):
        assume(distance(vertex, a) > 1e-3 and distance(vertex, b) > 1e-3)
        before = signed_angle(vertex, a, b)
        after = signed_angle(vertex, rotate_about(a, vertex, theta), rotate_about(b, vertex, theta))
        assert abs(wrap_angle(after - before)) < 1e-9

    @settings(max_examples=200)
    @given(p=points, q=points, t1=angles, t2=angles)
    def test_line_intersection_lies_on_both_lines(self, p, q, t1, t2):
        d = Point2(math.cos(t1), math.sin(t1))
        e = Point2(math.cos(t2), math.sin(t2))
        assume(abs(d.cross(e)) > 1e-2)
        x = line_line_intersection(p, d, q, e)
        assert distance_to_line(x, p, d) < 1e-7
        assert distance_to_line(x, q, e) < 1e-7

    @given(start=angles, heading=angles, radius=st.floats(min_value=0.1, max_value=10.0))
    def test_second_chord_point_stays_on_circle(self, start, heading, radius):
        circle = Circle(ORIGIN, radius)
        p = circle.point_at(start)
        end = second_chord_point(p, Point2(math.cos(heading), math.sin(heading)), circle)
        assert circle.contains(end, tol=1e-9 * max(1.0, radius))
