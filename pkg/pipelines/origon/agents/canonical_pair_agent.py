"""
Canonical Pair Agent for the origon gadget pipeline.

Assembles the canonical pair: the positive gadget at D = D_c and the
canonical negative gadget, both on one frame, plus the hybrid crease
pattern from which either gadget can be folded.

Hybrid creases are keyed by label. Every hybrid crease is assigned "flat"
and records its role in each gadget under fold_as (positive roles viewed
from the front, negative roles from the back). When G_sigma and G'_sigma
coincide, their creases from B_sigma merge into one.

Integration Position:
    CriticalAnglesAgent
            ↓
    CanonicalPairAgent   ← THIS AGENT
            ↓
    ExporterAgent

Input:  params, frame, critical
Output: pair (CanonicalPair)
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Optional, Set, Tuple

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.agents.critical_angles_agent import (
    CriticalData,
    critical_geometric,
    minor_arc_phi,
)
from pipelines.origon.agents.frame_agent import Frame, build_frame
from pipelines.origon.agents.negative_gadget_agent import DC_ID, canonical_point, negative_pattern
from pipelines.origon.agents.params_agent import GadgetParams
from pipelines.origon.agents.positive_gadget_agent import DividingChoice, positive_pattern
from pipelines.origon.config import GEOMETRIC_TOLERANCE
from pipelines.origon.contracts import (
    SIDES,
    Crease,
    CreasePattern,
    PatternBuilder,
    merged_label,
    segment_label,
)
from pipelines.origon.errors import BracketViolation, InternalInconsistency, InvalidPattern
from pipelines.origon.utils.euclid import distance
from core.logger import get_logger

logger = get_logger(__name__)

SHARED_VERTICES = ("A", "B_L", "B_R", DC_ID, "E_L", "E_R")


@dataclass(frozen=True)
class CanonicalPair:
    positive: CreasePattern
    negative: CreasePattern
    hybrid: CreasePattern
    bracket: Tuple[float, float, float]  # phi_L of D_R, D_c, D_L

    @property
    def bracket_margins(self) -> Tuple[float, float]:
        lo, mid, hi = self.bracket
        return mid - lo, hi - mid


# =============================================================================
# TABLE OF HYBRID CREASES
# =============================================================================

def hybrid_table(params: GadgetParams) -> Dict[str, FrozenSet[str]]:
    """
    Expected label sets: common, positive-only and negative-only.

    B_sigma E_sigma is common when delta_sigma > 0 and negative-only when
    delta_sigma = 0; D_c E_sigma is positive-only for delta_sigma = 0 and
    B_sigma H_sigma, D_c H_sigma for delta_sigma > 0.
    """
    common: Set[str] = {segment_label("E_L", "E_R")}
    positive: Set[str] = {segment_label("A", DC_ID)}
    negative: Set[str] = {segment_label("G'_L", "G'_R"), segment_label("P_L", "P_R")}

    for side in SIDES:
        b, e = f"B_{side}", f"E_{side}"
        common |= {f"j_{side}", f"k_{side}", f"l_{side}", f"m_{side}",
                   segment_label("A", b), segment_label("A", e)}
        positive |= {segment_label(b, f"G_{side}"), segment_label(DC_ID, f"G_{side}")}
        negative |= {segment_label(b, f"G'_{side}"), segment_label(b, f"P_{side}")}
        if params.delta(side) > 0.0:
            common.add(segment_label(b, e))
            positive |= {segment_label(b, f"H_{side}"), segment_label(DC_ID, f"H_{side}")}
        else:
            positive.add(segment_label(DC_ID, e))
            negative.add(segment_label(b, e))

    return {
        "common": frozenset(common),
        "positive": frozenset(positive),
        "negative": frozenset(negative),
    }


def check_hybrid_table(
    params: GadgetParams, positive: CreasePattern, negative: CreasePattern
) -> None:
    """
    Raises:
        InvalidPattern: If the label split of the pair differs from the table.
    """
    expected = hybrid_table(params)
    pos, neg = positive.labels(), negative.labels()
    actual = {"common": pos & neg, "positive": pos - neg, "negative": neg - pos}
    for row in ("common", "positive", "negative"):
        if actual[row] != expected[row]:
            missing = sorted(expected[row] - actual[row])
            extra = sorted(actual[row] - expected[row])
            raise InvalidPattern(f"hybrid {row} creases differ: missing {missing}, unexpected {extra}")


# =============================================================================
# HYBRID
# =============================================================================

def hybrid_pattern(positive: CreasePattern, negative: CreasePattern) -> CreasePattern:
    """
    Label-keyed union of a canonical pair.

    Raises:
        InternalInconsistency: If a shared vertex sits at different places
            in the two patterns.
    """
    for vid in SHARED_VERTICES:
        gap = distance(positive.point(vid), negative.point(vid))
        if gap > GEOMETRIC_TOLERANCE:
            raise InternalInconsistency(f"vertex {vid} differs between the pair's patterns", gap)

    merged_g = {
        side: distance(positive.point(f"G_{side}"), negative.point(f"G'_{side}")) <= GEOMETRIC_TOLERANCE
        for side in SIDES
    }
    rename = {f"G'_{side}": f"G_{side}" for side in SIDES if merged_g[side]}

    builder = PatternBuilder("hybrid")
    for v in positive.vertices:
        builder.vertex(v.id, v.point, v.role)
    for v in negative.vertices:
        if not positive.has_vertex(v.id) and v.id not in rename:
            builder.vertex(v.id, v.point, v.role)

    neg_by_label = {c.label: c for c in negative.creases}
    merged_pairs = {
        segment_label(f"B_{side}", f"G_{side}"): segment_label(f"B_{side}", f"G'_{side}")
        for side in SIDES
        if merged_g[side]
    }
    consumed: Set[str] = set()

    for crease in positive.creases:
        roles = [("positive", crease.assignment)]
        label = crease.label
        partner = neg_by_label.get(label) or neg_by_label.get(merged_pairs.get(label, ""))
        if partner is not None:
            roles.append(("negative", partner.assignment))
            consumed.add(partner.label)
            if partner.label != label:
                label = merged_label(label, partner.label)
        builder.add(_flat(crease, label, tuple(roles)))

    for crease in negative.creases:
        if crease.label in consumed:
            continue
        start = rename.get(crease.start, crease.start)
        end = rename.get(crease.end, crease.end) if crease.end is not None else None
        builder.add(
            Crease(
                label=crease.label,
                start=start,
                end=end,
                assignment="flat",
                direction=crease.direction,
                fold_as=(("negative", crease.assignment),),
            )
        )

    metadata = {
        "gadget": "hybrid",
        "viewed_from": "front",
        "params_deg": positive.metadata.get("params_deg", {}),
        "dividing": positive.metadata.get("dividing", {}),
        "merged_g": [side for side in SIDES if merged_g[side]],
    }
    return builder.build(metadata)


def _flat(crease: Crease, label: str, roles: Tuple) -> Crease:
    return Crease(
        label=label,
        start=crease.start,
        end=crease.end,
        assignment="flat",
        direction=crease.direction,
        fold_as=roles,
    )


# =============================================================================
# PAIR
# =============================================================================

def canonical_bracket(params: GadgetParams, critical: CriticalData, phi_l_dc: float) -> Tuple[float, float, float]:
    return params.gamma - 2.0 * critical.zeta_r, phi_l_dc, 2.0 * critical.zeta_l


def build_pair(
    params: GadgetParams,
    frame: Optional[Frame] = None,
    critical: Optional[CriticalData] = None,
) -> CanonicalPair:
    """
    Canonical pair on one frame.

    Raises:
        BracketViolation: If phi_L(D_R) < phi_L(D_c) < phi_L(D_L) fails.
    """
    frame = frame or build_frame(params)
    critical = critical or critical_geometric(frame)

    d_c = canonical_point(frame)
    bracket = canonical_bracket(params, critical, minor_arc_phi(frame, d_c))
    lo, mid, hi = bracket
    if mid - lo < -GEOMETRIC_TOLERANCE or hi - mid < -GEOMETRIC_TOLERANCE:
        logger.error(f"Bracket violated: {bracket}")
        raise BracketViolation(
            f"phi_L(D_R)={lo:.12g}, phi_L(D_c)={mid:.12g}, phi_L(D_L)={hi:.12g} not increasing"
        )

    positive = positive_pattern(frame, DividingChoice.canonical(), critical)
    negative = negative_pattern(frame, d_c)
    check_hybrid_table(params, positive, negative)
    hybrid = hybrid_pattern(positive, negative)
    return CanonicalPair(positive=positive, negative=negative, hybrid=hybrid, bracket=bracket)


class CanonicalPairAgent(BaseAgent):
    """
    Agent that assembles the canonical pair and its hybrid creases.

    Input: params, frame, critical
    Output: pair
    """

    def __init__(self) -> None:
        super().__init__(name="CanonicalPairAgent")

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require(input_data, "params", "frame", "critical")
        pair = build_pair(input_data["params"], input_data["frame"], input_data["critical"])
        lo, mid, hi = (math.degrees(x) for x in pair.bracket)
        logger.info(
            f"Canonical pair: bracket {lo:.6f} < {mid:.6f} < {hi:.6f} deg, "
            f"{len(pair.hybrid.creases)} hybrid creases"
        )
        return {"pair": pair}
