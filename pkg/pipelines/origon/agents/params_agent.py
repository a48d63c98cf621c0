"""
Parameter Validation Agent for the origon gadget pipeline.

Checks the five input angles of a gadget net against the net conditions
and derives the scalars every later construction reads: the top-face
angle gamma, its split gamma_L / gamma_R by the point C, and the radius
ratio r = |AC| / |AB|.

Integration Position:
    CLI / project file (degrees)
            ↓
    ParamsValidationAgent   ← THIS AGENT
            ↓
    FrameBuilderAgent

Input:  raw_params (RawParams, radians)
Output: params (GadgetParams)
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.config import (
    ANGLE_TOLERANCE,
    GEOMETRIC_TOLERANCE,
    RADIUS_CROSSCHECK_FLOOR,
    RIGHT_ANGLE_SNAP,
)
from pipelines.origon.contracts import Side
from pipelines.origon.errors import ConditionTag, ConditionViolation, InternalInconsistency
from core.logger import get_logger

logger = get_logger(__name__)

HALF_PI = math.pi / 2.0


# =============================================================================
# PARAMETER RECORDS
# =============================================================================

@dataclass(frozen=True)
class RawParams:
    """Five net angles in radians plus the ridge length."""

    alpha: float
    beta_l: float
    beta_r: float
    delta_l: float
    delta_r: float
    ridge_length: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta_l", "beta_r", "delta_l", "delta_r", "ridge_length"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)}")
        if self.ridge_length <= 0.0:
            raise ValueError(f"ridge_length must be positive, got {self.ridge_length}")

    @property
    def gamma(self) -> float:
        return 2.0 * math.pi - self.alpha - self.beta_l - self.beta_r

    def mirrored(self) -> "RawParams":
        """Swap the L and R sides."""
        return RawParams(
            self.alpha, self.beta_r, self.beta_l, self.delta_r, self.delta_l, self.ridge_length
        )

    def scaled(self, ridge_length: float) -> "RawParams":
        return RawParams(
            self.alpha, self.beta_l, self.beta_r, self.delta_l, self.delta_r, ridge_length
        )


@dataclass(frozen=True)
class GadgetParams:
    """
    Validated net angles with derived scalars.

    gamma_l + gamma_r == gamma exactly (gamma_r is set by subtraction).
    """

    alpha: float
    beta_l: float
    beta_r: float
    delta_l: float
    delta_r: float
    ridge_length: float
    gamma: float
    gamma_l: float
    gamma_r: float
    r: float

    def beta(self, side: Side) -> float:
        return self.beta_l if side == "L" else self.beta_r

    def delta(self, side: Side) -> float:
        return self.delta_l if side == "L" else self.delta_r

    def gamma_side(self, side: Side) -> float:
        return self.gamma_l if side == "L" else self.gamma_r

    @property
    def raw(self) -> RawParams:
        return RawParams(
            self.alpha, self.beta_l, self.beta_r, self.delta_l, self.delta_r, self.ridge_length
        )

    def to_degrees(self) -> Dict[str, float]:
        """Input angles in degrees (plus ridge length), for metadata and reports."""
        return {
            "alpha": math.degrees(self.alpha),
            "beta_L": math.degrees(self.beta_l),
            "beta_R": math.degrees(self.beta_r),
            "delta_L": math.degrees(self.delta_l),
            "delta_R": math.degrees(self.delta_r),
            "ridge_length": self.ridge_length,
        }

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def raw_params_from_degrees(
    alpha: float,
    beta_l: float,
    beta_r: float,
    delta_l: float = 0.0,
    delta_r: float = 0.0,
    ridge_length: float = 1.0,
) -> RawParams:
    """Degrees → radians; the only unit conversion in the package."""
    return RawParams(
        alpha=math.radians(alpha),
        beta_l=math.radians(beta_l),
        beta_r=math.radians(beta_r),
        delta_l=math.radians(delta_l),
        delta_r=math.radians(delta_r),
        ridge_length=ridge_length,
    )


# =============================================================================
# CONDITIONS
# =============================================================================

def condition_margins(raw: RawParams) -> Dict[ConditionTag, float]:
    """
    Signed slack of each net condition; positive means satisfied strictly.

    (i)    alpha, beta_sigma in (0, pi); beta_sigma + gamma/2 < pi;
           beta_L + beta_R + gamma/2 > pi
    (ii)   gamma > 0
    (iii.a) delta_sigma >= 0 (zero allowed, so the slack is delta itself)
    (iii.b) delta_sigma < beta_sigma on both sides
    (iii.c) gamma + delta_L + delta_R < pi
    """
    gamma = raw.gamma
    half = gamma / 2.0
    return {
        "i": min(
            raw.alpha,
            math.pi - raw.alpha,
            raw.beta_l,
            math.pi - raw.beta_l,
            raw.beta_r,
            math.pi - raw.beta_r,
            math.pi - raw.beta_l - half,
            math.pi - raw.beta_r - half,
            raw.beta_l + raw.beta_r + half - math.pi,
        ),
        "ii": gamma,
        "iii_a": min(raw.delta_l, raw.delta_r),
        "iii_b": min(raw.beta_l - raw.delta_l, raw.beta_r - raw.delta_r),
        "iii_c": math.pi - gamma - raw.delta_l - raw.delta_r,
    }


CONDITION_ORDER: Tuple[ConditionTag, ...] = ("i", "ii", "iii_a", "iii_b", "iii_c")


def _fails(tag: ConditionTag, margin: float) -> bool:
    # iii.a admits delta = 0 exactly; the rest are strict
    return margin < 0.0 if tag == "iii_a" else margin <= ANGLE_TOLERANCE


def _first_violation(raw: RawParams) -> Optional[Tuple[ConditionTag, str]]:
    margins = condition_margins(raw)
    for tag in CONDITION_ORDER:
        if _fails(tag, margins[tag]):
            gamma_deg = math.degrees(raw.gamma)
            return tag, f"slack {margins[tag]:.3e} rad (gamma = {gamma_deg:.6g} deg)"
    return None


# =============================================================================
# DERIVED SCALARS
# =============================================================================

def gamma_sides(gamma: float, delta_l: float, delta_r: float) -> Tuple[float, float]:
    """
    Split gamma at C: (gamma_L, gamma_R) with gamma_L + gamma_R == gamma.

    Uses tan(gamma_L - gamma/2) in the form multiplied through by
    cos(delta_L) cos(delta_R) cos(gamma/2). The denominator stays positive
    under the net conditions, so the atan2 form is continuous through
    delta_sigma = pi/2 and reproduces the limits gamma_sigma = 0 there.
    """
    s, c = math.sin(gamma / 2.0), math.cos(gamma / 2.0)
    numerator = s * math.sin(delta_r - delta_l)
    denominator = 2.0 * s * math.cos(delta_l) * math.cos(delta_r) + c * math.sin(delta_l + delta_r)
    gamma_l = gamma / 2.0 + math.atan2(numerator, denominator)
    return gamma_l, gamma - gamma_l


def _near_right(delta: float) -> bool:
    return abs(delta - HALF_PI) < RIGHT_ANGLE_SNAP


def gamma_sides_tangent(
    gamma: float, delta_side: float, delta_other: float
) -> Tuple[Optional[float], Optional[float]]:
    """
    tan(gamma_sigma) from the two printed tangent forms.

    First form:  (1 - cos g + sin g tan d') / (sin g + cos g tan d' + tan d)
    Second form: tan(g/2 + atan((tan d' - tan d) / (2 + (tan d + tan d') / tan(g/2))))

    Near delta = pi/2 the limit values are used (gamma_sigma = 0 when
    delta_sigma = pi/2, gamma_sigma = gamma when delta_sigma' = pi/2).
    A form whose value is not finite returns None.
    """
    if _near_right(delta_side):
        return 0.0, 0.0
    if _near_right(delta_other):
        return math.tan(gamma), math.tan(gamma)

    t, t_other = math.tan(delta_side), math.tan(delta_other)
    sg, cg = math.sin(gamma), math.cos(gamma)

    first: Optional[float] = None
    den = sg + cg * t_other + t
    if abs(den) > GEOMETRIC_TOLERANCE:
        first = (1.0 - cg + sg * t_other) / den

    second: Optional[float] = None
    inner = 2.0 + (t + t_other) / math.tan(gamma / 2.0)
    if abs(inner) > GEOMETRIC_TOLERANCE:
        angle = gamma / 2.0 + math.atan((t_other - t) / inner)
        if abs(math.cos(angle)) > GEOMETRIC_TOLERANCE:
            second = math.tan(angle)
    return first, second


def _inverse_radius_from_side(
    gamma: float, gamma_side: float, delta: float, delta_other: float
) -> float:
    if _near_right(delta):
        return math.cos(gamma) - math.sin(gamma) * math.tan(delta_other)
    return math.cos(gamma_side + delta) / math.cos(delta)


def radius_ratio(
    gamma: float, gamma_l: float, gamma_r: float, delta_l: float, delta_r: float
) -> float:
    """
    r = |AC| / |AB| = cos(delta) / cos(gamma_sigma + delta_sigma).

    Both sides are compared on 1 / r, which stays bounded as the iii.c
    slack closes and r grows without limit. The side with the larger
    |cos delta| is evaluated; the other side is checked against it whenever
    its |cos delta| clears the conditioning floor.

    Raises:
        InternalInconsistency: If the two sides disagree or r is not positive.
    """
    sides = [
        (abs(math.cos(delta_l)), gamma_l, delta_l, delta_r, "L"),
        (abs(math.cos(delta_r)), gamma_r, delta_r, delta_l, "R"),
    ]
    sides.sort(key=lambda item: item[0], reverse=True)
    (_, g1, d1, o1, s1), (cos2, g2, d2, o2, s2) = sides

    inverse = _inverse_radius_from_side(gamma, g1, d1, o1)
    if not inverse > 0.0 or not math.isfinite(inverse):
        raise InternalInconsistency(f"radius ratio from side {s1} is not positive: 1/r = {inverse}")

    if cos2 >= RADIUS_CROSSCHECK_FLOOR:
        check = _inverse_radius_from_side(gamma, g2, d2, o2)
        residual = abs(check - inverse)
        if residual > GEOMETRIC_TOLERANCE:
            logger.error(f"Radius ratio mismatch: side {s1} gives 1/r = {inverse}, side {s2} gives {check}")
            raise InternalInconsistency("radius ratio sides disagree", residual)
    return 1.0 / inverse


# =============================================================================
# VALIDATION
# =============================================================================

def validate(raw: RawParams) -> GadgetParams:
    """
    Check the net conditions and derive gamma, gamma_L, gamma_R and r.

    Raises:
        ConditionViolation: With the tag of the first failed condition, in
            the order i, ii, iii_a, iii_b, iii_c.
    """
    violation = _first_violation(raw)
    if violation is not None:
        tag, detail = violation
        raise ConditionViolation(tag, detail)

    gamma = raw.gamma
    gamma_l, gamma_r = gamma_sides(gamma, raw.delta_l, raw.delta_r)
    r = radius_ratio(gamma, gamma_l, gamma_r, raw.delta_l, raw.delta_r)
    return GadgetParams(
        alpha=raw.alpha,
        beta_l=raw.beta_l,
        beta_r=raw.beta_r,
        delta_l=raw.delta_l,
        delta_r=raw.delta_r,
        ridge_length=raw.ridge_length,
        gamma=gamma,
        gamma_l=gamma_l,
        gamma_r=gamma_r,
        r=r,
    )


def is_valid(raw: RawParams) -> bool:
    return _first_violation(raw) is None


def violated_conditions(raw: RawParams) -> List[ConditionTag]:
    """All failed condition tags, in check order (empty when valid)."""
    margins = condition_margins(raw)
    return [tag for tag in CONDITION_ORDER if _fails(tag, margins[tag])]


# =============================================================================
# AGENT
# =============================================================================

class ParamsValidationAgent(BaseAgent):
    """
    Agent that validates raw angles and derives gadget scalars.

    Input: raw_params (RawParams)
    Output: params (GadgetParams)
    """

    def __init__(self) -> None:
        super().__init__(name="ParamsValidationAgent")

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require(input_data, "raw_params")
        raw = input_data["raw_params"]
        if not isinstance(raw, RawParams):
            raise TypeError(f"raw_params must be RawParams, got {type(raw).__name__}")

        params = validate(raw)
        logger.info(
            f"Parameters valid: gamma={math.degrees(params.gamma):.6f} deg, "
            f"gamma_L={math.degrees(params.gamma_l):.6f} deg, r={params.r:.9f}"
        )
        return {"params": params}
