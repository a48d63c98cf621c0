"""
Critical Angles Agent for the origon gadget pipeline.

Angle functions of a point on the circle c_A (center A, radius |AB|), the
critical angles zeta_sigma computed three independent ways, the critical
dividing points D_sigma, and the constructibility test of a dividing point.

Arc coordinates:
    phi_L(X)   counterclockwise angle at A from B_L to X (phi_R = gamma - phi_L)
    psi_L(X)   clockwise angle at A from C to X (psi_R = -psi_L)
    rho_L(X)   counterclockwise angle at C from C→A to C→X (rho_R = -rho_L)
    phi'_L(X)  clockwise angle at A from B_L to X; phi'_R counterclockwise
               from B_R. Both live in [-gamma/2, 2*pi - gamma/2), so points
               of the major arc have phi' in (0, 2*pi - gamma).

Trichotomy of side sigma, by the sign of beta_sigma + gamma/2 + delta_sigma' - pi:
    interior   (< 0)  D'_sigma before B'_sigma'; D_sigma strictly inside the arc
    boundary   (= 0)  D'_sigma = B'_sigma'; D_sigma = B_sigma'
    saturated  (> 0)  D'_sigma between B'_sigma' and B_sigma'; D_sigma = B_sigma'

Integration Position:
    FrameBuilderAgent
            ↓
    CriticalAnglesAgent   ← THIS AGENT
            ↓
    PositiveGadgetAgent / CanonicalPairAgent

Input:  params, frame
Output: critical (CriticalData), admissible_interval (AdmissibleInterval)
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional, Tuple

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.agents.frame_agent import Frame
from pipelines.origon.agents.params_agent import GadgetParams
from pipelines.origon.config import GEOMETRIC_TOLERANCE
from pipelines.origon.contracts import SIDES, Side, other_side
from pipelines.origon.errors import InternalInconsistency, NoIntersection, NotOnArc
from pipelines.origon.utils.euclid import (
    Point2,
    Ray,
    angle_bisector,
    distance,
    line_line_intersection,
    line_line_parameters,
    ray_segment_intersection,
    second_chord_point,
    signed_angle,
    unsigned_angle,
    wrap_angle,
)
from core.logger import get_logger

logger = get_logger(__name__)

Trichotomy = Literal["interior", "boundary", "saturated"]

HALF_PI = math.pi / 2.0


# =============================================================================
# RESULT TYPES
# =============================================================================

@dataclass(frozen=True)
class ArcAngles:
    """Angle bundle of one point D on the minor arc."""

    phi_l: float
    phi_r: float
    psi_l: float
    psi_r: float
    rho_l: float
    rho_r: float

    def phi(self, side: Side) -> float:
        return self.phi_l if side == "L" else self.phi_r

    def psi(self, side: Side) -> float:
        return self.psi_l if side == "L" else self.psi_r

    def rho(self, side: Side) -> float:
        return self.rho_l if side == "L" else self.rho_r


@dataclass(frozen=True)
class CriticalData:
    """
    Critical angles and points from the geometric construction.

    dp_* are the marks D'_sigma (phi'_sigma = 2 beta_sigma), bp_* the marks
    B'_sigma (phi'_sigma = 2 delta_sigma), both on the major arc.
    """

    zeta_l: float
    zeta_r: float
    d_l: Point2
    d_r: Point2
    dp_l: Point2
    dp_r: Point2
    bp_l: Point2
    bp_r: Point2
    tag_l: Trichotomy
    tag_r: Trichotomy

    def zeta(self, side: Side) -> float:
        return self.zeta_l if side == "L" else self.zeta_r

    def d(self, side: Side) -> Point2:
        return self.d_l if side == "L" else self.d_r

    def dp(self, side: Side) -> Point2:
        return self.dp_l if side == "L" else self.dp_r

    def bp(self, side: Side) -> Point2:
        return self.bp_l if side == "L" else self.bp_r

    def tag(self, side: Side) -> Trichotomy:
        return self.tag_l if side == "L" else self.tag_r


@dataclass(frozen=True)
class SideConstructibility:
    """
    The three equivalent constructibility conditions of one side, with slack.

    A condition holds when its margin is >= -tolerance.
    """

    by_angle: bool
    by_phi: bool
    by_psi: bool
    angle_margin: float
    phi_margin: float
    psi_margin: float

    @property
    def agree(self) -> bool:
        return self.by_angle == self.by_phi == self.by_psi


@dataclass(frozen=True)
class Constructibility:
    left: SideConstructibility
    right: SideConstructibility

    def side(self, side: Side) -> SideConstructibility:
        return self.left if side == "L" else self.right

    @property
    def agree(self) -> bool:
        return self.left.agree and self.right.agree

    @property
    def constructible(self) -> bool:
        return self.left.by_phi and self.right.by_phi


@dataclass(frozen=True)
class AdmissibleInterval:
    """
    phi_L range of admissible dividing points: [gamma - 2 zeta_R, 2 zeta_L] ∩ (0, gamma).

    An end is open when it was clamped to 0 or gamma.
    """

    lo: float
    hi: float
    lo_open: bool
    hi_open: bool

    def contains(self, phi_l: float, tol: float = GEOMETRIC_TOLERANCE) -> bool:
        above = phi_l > self.lo if self.lo_open else phi_l >= self.lo - tol
        below = phi_l < self.hi if self.hi_open else phi_l <= self.hi + tol
        return above and below

    def as_tuple(self) -> Tuple[float, float]:
        return self.lo, self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class CriticalSummary:
    """Everything the `critical` command reports."""

    zeta_numeric: Tuple[float, float]
    zeta_geometric: Tuple[float, float]
    zeta_original: Tuple[float, float]
    phi_l_dl: float
    phi_l_dr: float
    phi_l_dc: Optional[float]
    interval: AdmissibleInterval
    tags: Tuple[Trichotomy, Trichotomy]

    @property
    def max_path_discrepancy(self) -> float:
        values = list(zip(self.zeta_numeric, self.zeta_geometric, self.zeta_original))
        return max(max(v) - min(v) for v in values)


# =============================================================================
# ARC COORDINATES
# =============================================================================

def _tol(frame: Frame) -> float:
    return GEOMETRIC_TOLERANCE * max(1.0, frame.ridge)


def arc_position(frame: Frame, x: Point2) -> float:
    """
    Counterclockwise angle at A from B_L to ``x``.

    The window [gamma/2 - pi, gamma/2 + pi) is centered on the minor arc,
    so minor-arc points land in [0, gamma].
    """
    gamma = frame.params.gamma
    return wrap_angle(signed_angle(frame.a, frame.b_l, x, "ccw"), gamma / 2.0 - math.pi)


def phi_prime(frame: Frame, side: Side, x: Point2) -> float:
    """Major-arc coordinate phi'_sigma of ``x`` in [-gamma/2, 2*pi - gamma/2)."""
    gamma = frame.params.gamma
    pos = arc_position(frame, x)
    raw = -pos if side == "L" else pos - gamma
    return wrap_angle(raw, -gamma / 2.0)


def _check_on_circle(frame: Frame, x: Point2) -> None:
    off = abs(distance(frame.a, x) - frame.ridge)
    if off > _tol(frame):
        raise NotOnArc(f"point ({x.x:.9g}, {x.y:.9g}) is {off:.3e} off the circle c_A")


def minor_arc_phi(frame: Frame, x: Point2) -> float:
    """
    phi_L of a point on the minor arc, clamped into [0, gamma].

    Raises:
        NotOnArc: If ``x`` is off the circle or outside the minor arc.
    """
    _check_on_circle(frame, x)
    gamma = frame.params.gamma
    pos = arc_position(frame, x)
    if pos < -GEOMETRIC_TOLERANCE or pos > gamma + GEOMETRIC_TOLERANCE:
        raise NotOnArc(f"point at arc position {pos:.9g} is outside the minor arc [0, {gamma:.9g}]")
    return min(max(pos, 0.0), gamma)


def dividing_point(frame: Frame, phi_l: float) -> Point2:
    """
    Point D on the minor arc with phi_L(D) = ``phi_l``.

    Raises:
        NotOnArc: If ``phi_l`` is outside [0, gamma].
    """
    gamma = frame.params.gamma
    if phi_l < -GEOMETRIC_TOLERANCE or phi_l > gamma + GEOMETRIC_TOLERANCE:
        raise NotOnArc(f"phi_L = {phi_l:.12g} outside [0, gamma = {gamma:.12g}]")
    return frame.circle.point_at(frame.ridge_heading("L") + phi_l)


def rho_of(frame: Frame, side: Side, x: Point2) -> float:
    """rho_sigma(x): angle at C from C→A to C→x, ccw for L and cw for R."""
    return signed_angle(frame.c, frame.a, x, "ccw" if side == "L" else "cw")


def rho_from_psi(r: float, psi: float) -> float:
    """Closed form tan(rho) = sin(psi) / (r - cos(psi)); r > 1 keeps the denominator positive."""
    return math.atan2(math.sin(psi), r - math.cos(psi))


def arc_angles(frame: Frame, d: Point2) -> ArcAngles:
    """
    Measure phi, psi and rho of a minor-arc point and cross-check them.

    Raises:
        NotOnArc: If ``d`` is not on the minor arc.
        InternalInconsistency: If phi + psi != gamma_sigma or the measured
            rho disagrees with the closed form in psi.
    """
    params = frame.params
    phi_l = minor_arc_phi(frame, d)
    psi_l = signed_angle(frame.a, frame.c, d, "cw")
    rho_l = rho_of(frame, "L", d)

    residual = abs(phi_l + psi_l - params.gamma_l)
    if residual > GEOMETRIC_TOLERANCE:
        raise InternalInconsistency("phi_L + psi_L differs from gamma_L", residual)

    residual = abs(rho_l - rho_from_psi(params.r, psi_l))
    if residual > GEOMETRIC_TOLERANCE:
        raise InternalInconsistency("measured rho_L disagrees with tan rho = sin psi / (r - cos psi)", residual)

    return ArcAngles(
        phi_l=phi_l,
        phi_r=params.gamma - phi_l,
        psi_l=psi_l,
        psi_r=-psi_l,
        rho_l=rho_l,
        rho_r=-rho_l,
    )


def rho_range(params: GadgetParams, side: Side) -> Tuple[float, float]:
    """Range of rho_sigma over the minor arc."""
    o = other_side(side)
    lo = params.gamma_side(o) + params.delta(o) - HALF_PI
    hi = HALF_PI - params.gamma_side(side) - params.delta(side)
    return lo, hi


# =============================================================================
# CLOSED-FORM CRITICAL ANGLES
# =============================================================================

def saturation_excess(params: GadgetParams, side: Side) -> float:
    """beta_sigma + gamma/2 + delta_sigma' - pi; its sign picks the trichotomy case."""
    return params.beta(side) + params.gamma / 2.0 + params.delta(other_side(side)) - math.pi


def trichotomy(params: GadgetParams, side: Side) -> Trichotomy:
    excess = saturation_excess(params, side)
    if abs(excess) <= GEOMETRIC_TOLERANCE:
        return "boundary"
    return "saturated" if excess > 0.0 else "interior"


def _zeta_closed_form(params: GadgetParams, side: Side) -> float:
    # tan(zeta) = 1 / (1/c + 1/c' + (1 + d/c) / b) multiplied through so the
    # b = inf (beta - delta = pi/2) and c' = inf cases need no special branch
    h = params.gamma / 2.0
    beta = params.beta(side)
    delta = params.delta(side)
    delta_o = params.delta(other_side(side))
    both = params.delta_l + params.delta_r
    numerator = math.sin(h + delta_o) * math.sin(h) * math.sin(beta - delta)
    denominator = (
        math.cos(delta) * math.sin(beta - delta) * math.sin(params.gamma + both)
        + math.sin(h + both) * math.sin(h + delta) * math.cos(beta - delta)
    )
    return math.atan2(numerator, denominator)


def critical_numeric(params: GadgetParams) -> Tuple[float, float]:
    """
    (zeta_L, zeta_R) from the closed form.

    zeta_sigma = gamma/2 whenever beta_sigma + gamma/2 + delta_sigma' >= pi.
    """
    zetas = []
    for side in SIDES:
        if saturation_excess(params, side) >= 0.0:
            zetas.append(params.gamma / 2.0)
        else:
            zetas.append(min(_zeta_closed_form(params, side), params.gamma / 2.0))
    return zetas[0], zetas[1]


def rho_at_major_mark(params: GadgetParams, side: Side) -> float:
    """
    rho_sigma(D'_sigma) in closed form.

    D'_sigma sits 2 beta_sigma beyond B_sigma, i.e. at psi_sigma = gamma_sigma + 2 beta_sigma.
    """
    return rho_from_psi(params.r, params.gamma_side(side) + 2.0 * params.beta(side))


# =============================================================================
# GEOMETRIC CONSTRUCTION
# =============================================================================

def major_arc_marks(frame: Frame) -> Dict[Side, Dict[str, float]]:
    """
    phi'_sigma of B'_sigma, D'_sigma, B'_sigma' and B_sigma' for each side.

    Along the major arc from B_sigma the marks appear in the order
    B'_sigma, then D'_sigma and B'_sigma' in an order fixed by the
    trichotomy case, then B_sigma'.
    """
    marks: Dict[Side, Dict[str, float]] = {}
    constructed = {side: _major_marks(frame, side) for side in SIDES}
    for side in SIDES:
        o = other_side(side)
        dp, bp = constructed[side]
        _, bp_other = constructed[o]
        marks[side] = {
            f"B'_{side}": phi_prime(frame, side, bp),
            f"D'_{side}": phi_prime(frame, side, dp),
            f"B'_{o}": phi_prime(frame, side, bp_other),
            f"B_{o}": phi_prime(frame, side, frame.b(o)),
        }
    return marks


def trichotomy_from_marks(marks: Dict[Side, Dict[str, float]], side: Side) -> Trichotomy:
    """Trichotomy case read off the major-arc order of D'_sigma and B'_sigma'."""
    o = other_side(side)
    gap = marks[side][f"D'_{side}"] - marks[side][f"B'_{o}"]
    if abs(gap) <= 2.0 * GEOMETRIC_TOLERANCE:
        return "boundary"
    return "saturated" if gap > 0.0 else "interior"


def _major_marks(frame: Frame, side: Side) -> Tuple[Point2, Point2]:
    """(D'_sigma, B'_sigma) constructed by chords from B_sigma."""
    b = frame.b(side)
    # chord perpendicular to k_sigma
    dp = second_chord_point(b, frame.k(side).direction.perp(), frame.circle)
    # extension of C B_sigma beyond B_sigma; a tangent line gives B' = B
    bp = second_chord_point(b, b - frame.c, frame.circle)
    return dp, bp


def _check_mark(frame: Frame, side: Side, name: str, x: Point2, expected: float) -> None:
    measured = phi_prime(frame, side, x)
    residual = abs(measured - expected)
    if residual > GEOMETRIC_TOLERANCE:
        logger.error(f"phi'_{side}({name}) = {measured!r}, expected {expected!r}")
        raise InternalInconsistency(f"phi'_{side}({name}) misplaced", residual)


def _snap_to_arc_end(frame: Frame, phi_l: float) -> float:
    gamma = frame.params.gamma
    if abs(phi_l) <= GEOMETRIC_TOLERANCE:
        return 0.0
    if abs(phi_l - gamma) <= GEOMETRIC_TOLERANCE:
        return gamma
    return phi_l


def _critical_point(frame: Frame, side: Side, dp: Point2, tag: Trichotomy) -> Point2:
    o = other_side(side)
    gamma = frame.params.gamma
    # second end of the chord from D' toward C; t in (0, |D'C|) means it lies on segment D'C
    direction = (frame.c - dp).unit()
    t = -2.0 * direction.dot(dp - frame.a)
    hit = dp + direction * t
    on_segment = GEOMETRIC_TOLERANCE < t <= distance(dp, frame.c) + _tol(frame)
    pos = arc_position(frame, hit) if on_segment else math.nan
    in_open_arc = on_segment and GEOMETRIC_TOLERANCE < pos < gamma - GEOMETRIC_TOLERANCE

    if tag == "interior":
        if not on_segment or not (-GEOMETRIC_TOLERANCE <= pos <= gamma + GEOMETRIC_TOLERANCE):
            raise InternalInconsistency(
                f"side {side} tagged interior but segment C D'_{side} misses the minor arc"
            )
        return dividing_point(frame, _snap_to_arc_end(frame, min(max(pos, 0.0), gamma)))

    if in_open_arc:
        raise InternalInconsistency(
            f"side {side} tagged {tag} but segment C D'_{side} meets the open minor arc at {pos:.12g}"
        )
    return frame.b(o)


def critical_geometric(frame: Frame) -> CriticalData:
    """
    Critical points and angles by chord constructions on c_A.

    D'_sigma: chord from B_sigma perpendicular to k_sigma.
    B'_sigma: chord from B_sigma along C→B_sigma.
    D_sigma:  segment C D'_sigma ∩ minor arc (interior case), else B_sigma'.
    zeta_sigma = phi_sigma(D_sigma) / 2.

    Raises:
        InternalInconsistency: If a mark is misplaced or the trichotomy
            case disagrees with whether segment C D'_sigma meets the arc.
    """
    params = frame.params
    values: Dict[Side, Tuple[float, Point2, Point2, Point2, Trichotomy]] = {}

    for side in SIDES:
        dp, bp = _major_marks(frame, side)
        _check_mark(frame, side, f"D'_{side}", dp, 2.0 * params.beta(side))
        _check_mark(frame, side, f"B'_{side}", bp, 2.0 * params.delta(side))

        tag = trichotomy(params, side)
        d = _critical_point(frame, side, dp, tag)
        phi_l = minor_arc_phi(frame, d)
        phi = phi_l if side == "L" else params.gamma - phi_l
        values[side] = (phi / 2.0, d, dp, bp, tag)

    (zl, dl, dpl, bpl, tl), (zr, dr, dpr, bpr, tr) = values["L"], values["R"]
    return CriticalData(
        zeta_l=zl, zeta_r=zr, d_l=dl, d_r=dr, dp_l=dpl, dp_r=dpr, bp_l=bpl, bp_r=bpr,
        tag_l=tl, tag_r=tr,
    )


def _n_ray(frame: Frame, side: Side) -> Ray:
    params = frame.params
    h = params.gamma / 2.0
    beta, delta = params.beta(side), params.delta(side)
    if side == "L":
        heading = -HALF_PI - h + beta - delta
    else:
        heading = 3.0 * HALF_PI + h - beta + delta
    return Ray.at_heading(frame.b(side), heading)


def critical_point_original(frame: Frame, side: Side) -> Point2:
    """
    Q_sigma: first hit of the ray n_sigma on the chain A→P, then m_sigma from P.

    n_sigma leaves B_sigma with angle pi - beta_sigma + delta_sigma to B_sigma→A.

    Raises:
        NoIntersection: If n_sigma misses the chain.
    """
    n = _n_ray(frame, side)
    tol = _tol(frame)
    hits: List[Tuple[float, Point2]] = []

    if distance(frame.a, frame.p) > tol:
        seg = ray_segment_intersection(n, frame.a, frame.p, tol)
        if seg is not None:
            hits.append(seg)

    m = frame.m(side)
    params_ = line_line_parameters(n.origin, n.direction, m.origin, m.direction)
    if params_ is not None:
        t, s = params_
        if t >= -tol and s >= -tol:
            hits.append((max(t, 0.0), n.point_at(max(t, 0.0))))

    if not hits:
        raise NoIntersection(f"ray n_{side} misses segment AP and ray m_{side}")
    return min(hits, key=lambda hit: hit[0])[1]


def critical_original(frame: Frame) -> Tuple[float, float]:
    """(zeta_L, zeta_R) as the angles B_sigma A Q_sigma."""
    zetas = []
    for side in SIDES:
        q = critical_point_original(frame, side)
        zetas.append(abs(signed_angle(frame.a, frame.b(side), q)))
    return zetas[0], zetas[1]


# =============================================================================
# CONSTRUCTIBILITY AND ADMISSIBLE RANGE
# =============================================================================

def bisector_point(frame: Frame, side: Side, d: Point2) -> Point2:
    """
    E_sigma: line m_sigma ∩ bisector of angle B_sigma A D.

    Raises:
        NoIntersection: If the bisector is parallel to m_sigma.
    """
    b = frame.b(side)
    bisector = angle_bisector(frame.a, b, d)
    m = frame.m(side)
    e = line_line_intersection(bisector.origin, bisector.direction, m.origin, m.direction)
    if e is None:
        raise NoIntersection(f"bisector of angle B_{side} A D is parallel to m_{side}")
    return e


def constructible(
    params: GadgetParams,
    frame: Frame,
    d: Point2,
    zetas: Optional[Tuple[float, float]] = None,
) -> Constructibility:
    """
    Evaluate the three constructibility conditions on both sides.

    by_angle: angle between the extension of A→B_sigma and B_sigma→E_sigma <= beta - delta
    by_phi:   phi_sigma(D) <= 2 zeta_sigma
    by_psi:   beta + gamma_sigma/2 + psi_sigma/2 + rho_sigma >= pi/2

    All three are inclusive with tolerance GEOMETRIC_TOLERANCE.
    """
    angles = arc_angles(frame, d)
    zeta_l, zeta_r = zetas if zetas is not None else critical_numeric(params)
    result: Dict[Side, SideConstructibility] = {}

    for side, zeta in (("L", zeta_l), ("R", zeta_r)):
        b = frame.b(side)
        beta, delta = params.beta(side), params.delta(side)
        outward = (b - frame.a).unit()
        e = bisector_point(frame, side, d)
        if distance(b, e) <= _tol(frame):
            angle = 0.0
        else:
            angle = unsigned_angle(outward, e - b)
        angle_margin = (beta - delta) - angle
        phi_margin = 2.0 * zeta - angles.phi(side)
        psi_margin = (
            beta + params.gamma_side(side) / 2.0 + angles.psi(side) / 2.0 + angles.rho(side)
        ) - HALF_PI
        result[side] = SideConstructibility(
            by_angle=angle_margin >= -GEOMETRIC_TOLERANCE,
            by_phi=phi_margin >= -GEOMETRIC_TOLERANCE,
            by_psi=psi_margin >= -GEOMETRIC_TOLERANCE,
            angle_margin=angle_margin,
            phi_margin=phi_margin,
            psi_margin=psi_margin,
        )
    return Constructibility(left=result["L"], right=result["R"])


def admissible_interval(params: GadgetParams, critical: CriticalData) -> AdmissibleInterval:
    """[gamma - 2 zeta_R, 2 zeta_L] ∩ (0, gamma) as phi_L bounds."""
    gamma = params.gamma
    lo = gamma - 2.0 * critical.zeta_r
    hi = 2.0 * critical.zeta_l
    lo_open = lo <= GEOMETRIC_TOLERANCE
    hi_open = hi >= gamma - GEOMETRIC_TOLERANCE
    return AdmissibleInterval(
        lo=0.0 if lo_open else lo,
        hi=gamma if hi_open else hi,
        lo_open=lo_open,
        hi_open=hi_open,
    )


def critical_summary(
    params: GadgetParams,
    frame: Frame,
    phi_l_dc: Optional[float] = None,
    critical: Optional[CriticalData] = None,
) -> CriticalSummary:
    """Bundle the three zeta paths, the critical positions and the interval."""
    critical = critical or critical_geometric(frame)
    return CriticalSummary(
        zeta_numeric=critical_numeric(params),
        zeta_geometric=(critical.zeta_l, critical.zeta_r),
        zeta_original=critical_original(frame),
        phi_l_dl=2.0 * critical.zeta_l,
        phi_l_dr=params.gamma - 2.0 * critical.zeta_r,
        phi_l_dc=phi_l_dc,
        interval=admissible_interval(params, critical),
        tags=(critical.tag_l, critical.tag_r),
    )


# =============================================================================
# AGENT
# =============================================================================

class CriticalAnglesAgent(BaseAgent):
    """
    Agent that computes critical data and cross-checks the three zeta paths.

    Input: params, frame
    Output: critical, admissible_interval
    """

    def __init__(self) -> None:
        super().__init__(name="CriticalAnglesAgent")

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require(input_data, "params", "frame")
        params: GadgetParams = input_data["params"]
        frame: Frame = input_data["frame"]

        critical = critical_geometric(frame)
        summary = critical_summary(params, frame, critical=critical)
        discrepancy = summary.max_path_discrepancy
        if discrepancy > GEOMETRIC_TOLERANCE:
            logger.error(
                f"zeta paths disagree: numeric={summary.zeta_numeric}, "
                f"geometric={summary.zeta_geometric}, original={summary.zeta_original}"
            )
            raise InternalInconsistency("critical angle computations disagree", discrepancy)

        if not summary.phi_l_dr < summary.phi_l_dl:
            raise InternalInconsistency(
                "critical points out of order: phi_L(D_R) >= phi_L(D_L)",
                summary.phi_l_dr - summary.phi_l_dl,
            )

        logger.info(
            f"Critical angles: zeta_L={math.degrees(critical.zeta_l):.9f} deg ({critical.tag_l}), "
            f"zeta_R={math.degrees(critical.zeta_r):.9f} deg ({critical.tag_r})"
        )
        return {"critical": critical, "admissible_interval": summary.interval}
