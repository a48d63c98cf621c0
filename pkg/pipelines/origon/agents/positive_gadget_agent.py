"""
Positive Gadget Agent for the origon gadget pipeline.

Builds the positive gadget crease pattern for a chosen dividing point D
on the minor arc and assigns mountain/valley folds per side. A side whose
phi_sigma(D) equals 2 zeta_sigma is critical: two of its creases coincide
and are emitted once with a merged label. D = D_sigma is critical on side
sigma by construction; an explicit phi_L is critical within CRITICAL_GATE.

Integration Position:
    CriticalAnglesAgent
            ↓
    PositiveGadgetAgent   ← THIS AGENT
            ↓
    ExporterAgent

Input:  frame, critical, dividing (DividingChoice)
Output: positive_pattern (CreasePattern)
"""

import math
import re
from dataclasses import dataclass
from typing import Any, Dict, Literal, Optional, Tuple

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.agents.critical_angles_agent import (
    CriticalData,
    bisector_point,
    critical_geometric,
    dividing_point,
    minor_arc_phi,
)
from pipelines.origon.agents.frame_agent import Frame
from pipelines.origon.agents.negative_gadget_agent import DC_ID, canonical_point
from pipelines.origon.config import CRITICAL_GATE, GEOMETRIC_TOLERANCE
from pipelines.origon.contracts import (
    SIDES,
    CreasePattern,
    PatternBuilder,
    Side,
    merged_label,
    segment_label,
)
from pipelines.origon.errors import (
    DegenerateDividing,
    InternalInconsistency,
    NoIntersection,
    NotConstructible,
)
from pipelines.origon.utils.euclid import (
    Point2,
    Ray,
    distance,
    ray_segment_intersection,
    signed_angle,
)
from core.logger import get_logger

logger = get_logger(__name__)

DividingVariant = Literal["explicit", "critical_l", "critical_r", "canonical"]

# Coincident crease endpoints at a critical side may drift this far apart
MERGE_TOLERANCE = 1e-6

_PHI_PATTERN = re.compile(r"^phi-l=(?P<deg>[-+]?\d+(\.\d*)?([eE][-+]?\d+)?|[-+]?\.\d+)$")


# =============================================================================
# DIVIDING CHOICE
# =============================================================================

@dataclass(frozen=True)
class DividingChoice:
    """How D is picked: explicit phi_L (radians), a critical point, or D_c."""

    variant: DividingVariant
    phi_l: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.variant == "explicit") != (self.phi_l is not None):
            raise ValueError("phi_l is required for, and only for, the explicit variant")
        if self.phi_l is not None and not math.isfinite(self.phi_l):
            raise ValueError(f"phi_l must be finite, got {self.phi_l}")

    @classmethod
    def explicit(cls, phi_l: float) -> "DividingChoice":
        return cls("explicit", phi_l)

    @classmethod
    def critical(cls, side: Side) -> "DividingChoice":
        return cls("critical_l" if side == "L" else "critical_r")

    @classmethod
    def canonical(cls) -> "DividingChoice":
        return cls("canonical")

    @property
    def vertex_id(self) -> str:
        return DC_ID if self.variant == "canonical" else "D"

    def describe(self) -> str:
        if self.variant == "explicit":
            return f"phi-l={math.degrees(self.phi_l):.12g}"
        return self.variant.replace("_", "-")


def parse_dividing(text: str) -> DividingChoice:
    """
    Parse the command-line form: phi-l=<deg>, critical-l, critical-r, canonical.

    Raises:
        ValueError: On any other text.
    """
    value = text.strip().lower()
    if value in ("critical-l", "critical-r"):
        return DividingChoice.critical("L" if value.endswith("l") else "R")
    if value == "canonical":
        return DividingChoice.canonical()
    match = _PHI_PATTERN.match(value)
    if match is None:
        raise ValueError(
            f"Invalid dividing choice {text!r}: expected phi-l=<deg>, critical-l, critical-r or canonical"
        )
    return DividingChoice.explicit(math.radians(float(match.group("deg"))))


def resolve_dividing(
    frame: Frame, choice: DividingChoice, critical: CriticalData
) -> Tuple[float, Point2]:
    """(phi_L, D) for a dividing choice."""
    if choice.variant == "explicit":
        return choice.phi_l, dividing_point(frame, choice.phi_l)
    if choice.variant == "canonical":
        d = canonical_point(frame)
    else:
        d = critical.d("L" if choice.variant == "critical_l" else "R")
    return minor_arc_phi(frame, d), d


# =============================================================================
# CONSTRUCTION
# =============================================================================

def _hit_on_segment(ray: Ray, a: Point2, b: Point2, name: str) -> Point2:
    hit = ray_segment_intersection(ray, a, b)
    if hit is None:
        raise NoIntersection(f"construction ray for {name} misses its segment")
    return hit[1]


def _turn_toward(b: Point2, frm: Point2, to: Point2, angle: float) -> Ray:
    """Ray from b along b→frm turned by ``angle`` toward b→to."""
    sense = 1.0 if signed_angle(b, frm, to) >= 0.0 else -1.0
    return Ray(b, (frm - b).unit().rotated(sense * angle))


def _side_points(frame: Frame, side: Side, d: Point2) -> Dict[str, Point2]:
    params = frame.params
    a, b = frame.a, frame.b(side)
    e = bisector_point(frame, side, d)
    # angle A B G = pi - beta, G on segment AE
    g = _hit_on_segment(_turn_toward(b, a, e, math.pi - params.beta(side)), a, e, f"G_{side}")
    points = {"E": e, "G": g}
    if params.delta(side) > 0.0:
        # angle E B H = delta, H on segment AE
        points["H"] = _hit_on_segment(_turn_toward(b, e, a, params.delta(side)), a, e, f"H_{side}")
    return points


def _require_coincident(p: Point2, q: Point2, what: str) -> None:
    gap = distance(p, q)
    if gap > MERGE_TOLERANCE:
        raise InternalInconsistency(f"critical side: {what} should coincide", gap)


def _add_side(
    builder: PatternBuilder,
    frame: Frame,
    side: Side,
    dv: str,
    points: Dict[str, Point2],
    is_critical: bool,
) -> None:
    b, e, g, h = f"B_{side}", f"E_{side}", f"G_{side}", f"H_{side}"
    has_h = "H" in points

    builder.vertex(e, points["E"])
    builder.ray(f"j_{side}", "A", frame.j(side).direction, "mountain")
    builder.ray(f"l_{side}", b, frame.l(side).direction, "mountain")
    builder.segment(segment_label("A", b), "A", b, "mountain")
    builder.ray(f"k_{side}", b, frame.k(side).direction, "valley")
    builder.ray(f"m_{side}", e, frame.l(side).direction, "valley")
    builder.segment(segment_label("A", e), "A", e, "valley")

    if not is_critical:
        builder.vertex(g, points["G"])
        builder.segment(segment_label(b, g), b, g, "mountain")
        builder.segment(segment_label(dv, g), dv, g, "valley")
        if has_h:
            builder.vertex(h, points["H"])
            builder.segment(segment_label(b, e), b, e, "mountain")
            builder.segment(segment_label(dv, h), dv, h, "mountain")
            builder.segment(segment_label(b, h), b, h, "valley")
        else:
            builder.segment(segment_label(dv, e), dv, e, "mountain")
        return

    if has_h:
        # G and H coincide
        _require_coincident(points["G"], points["H"], f"G_{side} and H_{side}")
        builder.vertex(g, points["G"])
        builder.segment(segment_label(b, e), b, e, "mountain")
        builder.segment(
            merged_label(segment_label(dv, g), segment_label(dv, h)), dv, g, "mountain"
        )
        builder.segment(
            merged_label(segment_label(b, g), segment_label(b, h)), b, g, "valley"
        )
    else:
        # G and E coincide
        _require_coincident(points["G"], points["E"], f"G_{side} and E_{side}")
        builder.segment(
            merged_label(segment_label(b, e), segment_label(b, g)), b, e, "mountain"
        )
        builder.segment(
            merged_label(segment_label(dv, e), segment_label(dv, g)), dv, e, "mountain"
        )


def _pinned_side(choice: DividingChoice) -> Optional[Side]:
    if choice.variant == "critical_l":
        return "L"
    if choice.variant == "critical_r":
        return "R"
    return None


def _is_critical(choice: DividingChoice, side: Side, phi: float, limit: float) -> bool:
    """
    Whether the creases of ``side`` merge at D.

    A critical choice is critical on its own side only, and D_c lies strictly
    between D_R and D_L. Only an explicit phi_L is compared against the gate.
    """
    if choice.variant == "explicit":
        return abs(phi - limit) <= CRITICAL_GATE
    return side == _pinned_side(choice)


def positive_pattern(
    frame: Frame,
    choice: DividingChoice,
    critical: Optional[CriticalData] = None,
) -> CreasePattern:
    """
    Positive crease pattern for the dividing point picked by ``choice``.

    Raises:
        DegenerateDividing: If phi_L(D) is not inside (0, gamma).
        NotConstructible: If phi_sigma(D) > 2 zeta_sigma on a side.
    """
    params = frame.params
    critical = critical or critical_geometric(frame)
    phi_l, d = resolve_dividing(frame, choice, critical)

    if not (GEOMETRIC_TOLERANCE < phi_l < params.gamma - GEOMETRIC_TOLERANCE):
        raise DegenerateDividing(
            f"phi_L = {phi_l:.12g} puts D on an arc endpoint (gamma = {params.gamma:.12g})"
        )

    phis = {"L": phi_l, "R": params.gamma - phi_l}
    pinned = _pinned_side(choice)
    critical_sides = {}
    for side in SIDES:
        limit = 2.0 * critical.zeta(side)
        if side != pinned and phis[side] > limit + GEOMETRIC_TOLERANCE:
            raise NotConstructible(side, phis[side], limit)
        critical_sides[side] = _is_critical(choice, side, phis[side], limit)

    dv = choice.vertex_id
    builder = PatternBuilder("positive")
    builder.vertex("A", frame.a, "apex")
    for side in SIDES:
        builder.vertex(f"B_{side}", frame.b(side), "ridge")
    builder.vertex(dv, d, "dividing")
    builder.segment(segment_label("A", dv), "A", dv, "mountain")

    for side in SIDES:
        points = _side_points(frame, side, d)
        _add_side(builder, frame, side, dv, points, critical_sides[side])
    builder.segment(segment_label("E_L", "E_R"), "E_L", "E_R", "valley")

    return builder.build(
        {
            "gadget": "positive",
            "viewed_from": "front",
            "params_deg": params.to_degrees(),
            "dividing": {"variant": choice.variant, "phi_L": phi_l},
            "critical_sides": [side for side in SIDES if critical_sides[side]],
        }
    )


# =============================================================================
# AGENT
# =============================================================================

class PositiveGadgetAgent(BaseAgent):
    """
    Agent that builds the positive gadget for the requested dividing point.

    Input: frame, critical, dividing (defaults to canonical)
    Output: positive_pattern
    """

    def __init__(self, dividing: Optional[DividingChoice] = None) -> None:
        super().__init__(name="PositiveGadgetAgent")
        self.dividing = dividing

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require(input_data, "frame", "critical")
        choice = self.dividing or input_data.get("dividing") or DividingChoice.canonical()
        pattern = positive_pattern(input_data["frame"], choice, input_data["critical"])
        logger.info(
            f"Positive gadget ({choice.describe()}): phi_L="
            f"{math.degrees(pattern.metadata['dividing']['phi_L']):.9f} deg, "
            f"{len(pattern.creases)} creases, critical sides {pattern.metadata['critical_sides']}"
        )
        return {"positive_pattern": pattern}
