"""
Negative Gadget Agent for the origon gadget pipeline.

Builds the canonical negative gadget: the canonical dividing point D_c
(by chord construction and by two closed forms) and the crease pattern
with its mountain/valley assignment. The development is viewed from the
back side.

Integration Position:
    FrameBuilderAgent
            ↓
    NegativeGadgetAgent   ← THIS AGENT
            ↓
    ExporterAgent

Input:  frame
Output: negative_pattern (CreasePattern), canonical (CanonicalSolution)
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.agents.critical_angles_agent import (
    arc_angles,
    arc_position,
    bisector_point,
)
from pipelines.origon.agents.frame_agent import Frame
from pipelines.origon.agents.params_agent import GadgetParams
from pipelines.origon.config import CANONICAL_DENOMINATOR_FLOOR, GEOMETRIC_TOLERANCE
from pipelines.origon.contracts import SIDES, CreasePattern, PatternBuilder, segment_label
from pipelines.origon.errors import InternalInconsistency, SolutionOutOfRange
from pipelines.origon.utils.euclid import (
    Point2,
    line_line_intersection,
    perpendicular_through,
    segment_circle_intersections,
)
from core.logger import get_logger

logger = get_logger(__name__)

HALF_PI = math.pi / 2.0

DC_ID = "D_c"
B_PRIME_ID = "B'"


@dataclass(frozen=True)
class CanonicalSolution:
    """
    Closed-form canonical dividing point.

    v1, v2, w are the coefficients of (V1 - r V2) tan(rho_L) = W.
    """

    rho_l: float
    psi_l: float
    phi_l: float
    d_c: Point2
    b_prime: Point2
    v1: float
    v2: float
    w: float

    def residual(self, r: float) -> float:
        """|(V1 - r V2) tan(rho_L) - W|."""
        return abs((self.v1 - r * self.v2) * math.tan(self.rho_l) - self.w)


@dataclass(frozen=True)
class BcdAngles:
    """
    Angles B_sigma C D_c and the rho values derived from them.

    rho_r follows the printed right-side expression
    (gamma_R + delta_R + angle B_R C D_c) - pi/2, which measures the same
    counterclockwise angle at C as rho_l and therefore equals it.
    """

    angle_bl_c_dc: float
    angle_br_c_dc: float
    rho_l: float
    rho_r: float


# =============================================================================
# GEOMETRIC CANONICAL POINT
# =============================================================================

def b_prime_point(frame: Frame) -> Point2:
    """
    B': perpendicular to k_L through B_L meets perpendicular to k_R through B_R.

    Raises:
        InternalInconsistency: If the perpendiculars are parallel.
    """
    to_l = perpendicular_through(frame.b_l, frame.k_l, "left")
    to_r = perpendicular_through(frame.b_r, frame.k_r, "left")
    point = line_line_intersection(to_l.origin, to_l.direction, to_r.origin, to_r.direction)
    if point is None:
        raise InternalInconsistency("perpendiculars to k_L and k_R are parallel")
    return point


def canonical_geometric(frame: Frame) -> Tuple[Point2, Point2]:
    """
    (D_c, B'): D_c is where segment B'C meets the minor arc.

    The segment is parameterized from B', not from C (|AC| = r).

    Raises:
        InternalInconsistency: If the segment misses the open minor arc.
    """
    b_prime = b_prime_point(frame)
    gamma = frame.params.gamma
    for hit in segment_circle_intersections(b_prime, frame.c, frame.circle):
        pos = arc_position(frame, hit)
        if GEOMETRIC_TOLERANCE < pos < gamma - GEOMETRIC_TOLERANCE:
            return hit, b_prime
    logger.error(f"Segment B'C misses the minor arc: B'=({b_prime.x}, {b_prime.y})")
    raise InternalInconsistency("segment B'C does not meet the open minor arc")


# =============================================================================
# CLOSED FORMS
# =============================================================================

def canonical_coefficients(params: GadgetParams) -> Tuple[float, float, float]:
    """(V1, V2, W)."""
    bl, br = params.beta_l, params.beta_r
    gl, gr = params.gamma_l, params.gamma_r
    v1 = math.sin(bl + gl) * math.cos(br) + math.sin(br + gr) * math.cos(bl)
    v2 = math.sin(bl + br + params.gamma)
    w = math.cos(bl + gl) * math.cos(br) - math.cos(br + gr) * math.cos(bl)
    return v1, v2, w


def canonical_rho_interval(params: GadgetParams) -> Tuple[float, float]:
    """Open interval (gamma_R + delta_R - pi/2, pi/2 - gamma_L - delta_L) holding rho_L(D_c)."""
    return (
        params.gamma_r + params.delta_r - HALF_PI,
        HALF_PI - params.gamma_l - params.delta_l,
    )


def _embedded_b_prime(params: GadgetParams) -> Point2:
    # same embedding as build_frame; B' from the two perpendicular lines
    ridge = params.ridge_length
    h = params.gamma / 2.0
    b_l = Point2(-math.sin(h), -math.cos(h)) * ridge
    b_r = Point2(math.sin(h), -math.cos(h)) * ridge
    k_l = -HALF_PI - h - params.beta_l
    k_r = -HALF_PI + h + params.beta_r
    point = line_line_intersection(
        b_l, Point2(-math.sin(k_l), math.cos(k_l)), b_r, Point2(-math.sin(k_r), math.cos(k_r))
    )
    if point is None:
        raise InternalInconsistency("perpendiculars to k_L and k_R are parallel")
    return point


def canonical_numeric(params: GadgetParams) -> CanonicalSolution:
    """
    Solve (V1 - r V2) tan(rho_L) = W on its open interval.

    rho_L = atan2(W, V1 - r V2), shifted by pi once if needed;
    psi_L = asin(r sin rho_L) - rho_L; phi_L = gamma_L - psi_L.

    Raises:
        SolutionOutOfRange: If V1 - r V2 vanishes or no shift of the
            solution lands in the open interval.
    """
    v1, v2, w = canonical_coefficients(params)
    denominator = v1 - params.r * v2
    if abs(denominator) < CANONICAL_DENOMINATOR_FLOOR:
        raise SolutionOutOfRange(f"V1 - r V2 = {denominator:.3e} vanishes; rho_L would be ±pi/2")

    lo, hi = canonical_rho_interval(params)
    base = math.atan2(w, denominator)
    rho_l = None
    for candidate in (base, base - math.pi, base + math.pi):
        if lo - GEOMETRIC_TOLERANCE < candidate < hi + GEOMETRIC_TOLERANCE:
            rho_l = candidate
            break
    if rho_l is None:
        raise SolutionOutOfRange(
            f"rho_L = {base:.12g} has no representative in ({lo:.12g}, {hi:.12g})"
        )

    sine = min(1.0, max(-1.0, params.r * math.sin(rho_l)))
    psi_l = math.asin(sine) - rho_l
    phi_l = params.gamma_l - psi_l
    if not (-GEOMETRIC_TOLERANCE < phi_l < params.gamma + GEOMETRIC_TOLERANCE):
        raise SolutionOutOfRange(f"phi_L(D_c) = {phi_l:.12g} outside (0, gamma)")

    heading = -HALF_PI - params.gamma / 2.0 + phi_l
    d_c = Point2(math.cos(heading), math.sin(heading)) * params.ridge_length
    return CanonicalSolution(
        rho_l=rho_l,
        psi_l=psi_l,
        phi_l=phi_l,
        d_c=d_c,
        b_prime=_embedded_b_prime(params),
        v1=v1,
        v2=v2,
        w=w,
    )


def bcd_angles(params: GadgetParams) -> BcdAngles:
    """
    Angles B_sigma C D_c (= B_sigma C B') in closed form and rho from them.

    tan(B_L C D_c) = sin(b_L - d_L) / (c_L / b_L + cos(b_L - d_L)) with
    c_L / b_L = sin(alpha) / sin(beta_R + gamma/2) * sin(gamma/2 + delta_R) / sin(gamma + delta_L + delta_R),
    and symmetrically for R.
    """
    h = params.gamma / 2.0
    spread = math.sin(params.gamma + params.delta_l + params.delta_r)
    angles = {}
    for side in SIDES:
        o = "R" if side == "L" else "L"
        tilt = params.beta(side) - params.delta(side)
        ratio = (math.sin(params.alpha) / math.sin(params.beta(o) + h)) * (
            math.sin(h + params.delta(o)) / spread
        )
        angles[side] = math.atan2(math.sin(tilt), ratio + math.cos(tilt))

    theta_l, theta_r = angles["L"], angles["R"]
    return BcdAngles(
        angle_bl_c_dc=theta_l,
        angle_br_c_dc=theta_r,
        rho_l=HALF_PI - (params.gamma_l + params.delta_l + theta_l),
        rho_r=(params.gamma_r + params.delta_r + theta_r) - HALF_PI,
    )


# =============================================================================
# CREASE PATTERN
# =============================================================================

def negative_pattern(frame: Frame, d_c: Optional[Point2] = None) -> CreasePattern:
    """
    Canonical negative crease pattern.

    Vertices: A, B_sigma, D_c, E_sigma, G'_sigma, P_sigma and the isolated
    construction point B'. Assignment, viewed from the back:
        mountain: j, m, AE, B G', B P, E_L E_R
        valley:   k, l, AB, B E, G'_L G'_R, P_L P_R
    """
    params = frame.params
    b_prime = b_prime_point(frame)
    if d_c is None:
        d_c, _ = canonical_geometric(frame)

    e = {side: bisector_point(frame, side, d_c) for side in SIDES}
    chord = e["R"] - e["L"]

    g_prime = {}
    p_points = {}
    for side in SIDES:
        g = line_line_intersection(d_c, chord, frame.a, e[side] - frame.a)
        p = line_line_intersection(frame.c, chord, e[side], frame.l(side).direction)
        if g is None or p is None:
            raise InternalInconsistency(f"parallels to E_L E_R miss side {side}")
        g_prime[side], p_points[side] = g, p

    builder = PatternBuilder("negative")
    builder.vertex("A", frame.a, "apex")
    for side in SIDES:
        builder.vertex(f"B_{side}", frame.b(side), "ridge")
    builder.vertex(DC_ID, d_c, "dividing")
    for side in SIDES:
        builder.vertex(f"E_{side}", e[side])
        builder.vertex(f"G'_{side}", g_prime[side])
        builder.vertex(f"P_{side}", p_points[side])
    builder.vertex(B_PRIME_ID, b_prime, "construction")

    for side in SIDES:
        b, es, gs, ps = f"B_{side}", f"E_{side}", f"G'_{side}", f"P_{side}"
        builder.ray(f"j_{side}", "A", frame.j(side).direction, "mountain")
        builder.ray(f"m_{side}", es, frame.l(side).direction, "mountain")
        builder.segment(segment_label("A", es), "A", es, "mountain")
        builder.segment(segment_label(b, gs), b, gs, "mountain")
        builder.segment(segment_label(b, ps), b, ps, "mountain")

        builder.ray(f"k_{side}", b, frame.k(side).direction, "valley")
        builder.ray(f"l_{side}", b, frame.l(side).direction, "valley")
        builder.segment(segment_label("A", b), "A", b, "valley")
        builder.segment(segment_label(b, es), b, es, "valley")

    builder.segment(segment_label("E_L", "E_R"), "E_L", "E_R", "mountain")
    builder.segment(segment_label("G'_L", "G'_R"), "G'_L", "G'_R", "valley")
    builder.segment(segment_label("P_L", "P_R"), "P_L", "P_R", "valley")

    phi_l = arc_angles(frame, d_c).phi_l
    return builder.build(
        {
            "gadget": "negative",
            "viewed_from": "back",
            "params_deg": params.to_degrees(),
            "dividing": {"variant": "canonical", "phi_L": phi_l},
        }
    )


def canonical_point(frame: Frame) -> Point2:
    """D_c by construction, cross-checked against the closed form."""
    d_c, _ = canonical_geometric(frame)
    solution = canonical_numeric(frame.params)
    drift = abs(arc_angles(frame, d_c).phi_l - solution.phi_l)
    if drift > GEOMETRIC_TOLERANCE:
        logger.error(f"D_c drift between construction and closed form: {drift:.3e}")
        raise InternalInconsistency("geometric and numeric D_c disagree", drift)
    return d_c


# =============================================================================
# AGENT
# =============================================================================

class NegativeGadgetAgent(BaseAgent):
    """
    Agent that builds the canonical negative gadget.

    Input: frame
    Output: negative_pattern, canonical
    """

    def __init__(self) -> None:
        super().__init__(name="NegativeGadgetAgent")

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require(input_data, "frame")
        frame: Frame = input_data["frame"]

        solution = canonical_numeric(frame.params)
        d_c = canonical_point(frame)
        pattern = negative_pattern(frame, d_c)
        logger.info(
            f"Negative gadget: phi_L(D_c)={math.degrees(solution.phi_l):.9f} deg, "
            f"{len(pattern.creases)} creases"
        )
        return {"negative_pattern": pattern, "canonical": solution}
