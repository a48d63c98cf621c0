"""
Frame Builder Agent for the origon gadget pipeline.

Embeds the gadget net in the plane and runs the ruler-and-compass steps
that place the point C, the point P and the pleat rays.

Embedding:
    A at the origin, the bisector of angle B_L A B_R along -y, B_L on the
    -x side. The minor arc from B_L to B_R runs counterclockwise.

Integration Position:
    ParamsValidationAgent
            ↓
    FrameBuilderAgent   ← THIS AGENT
            ↓
    CriticalAnglesAgent / NegativeGadgetAgent

Input:  params (GadgetParams)
Output: frame (Frame)
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Tuple

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.agents.params_agent import GadgetParams
from pipelines.origon.config import GEOMETRIC_TOLERANCE
from pipelines.origon.contracts import Side
from pipelines.origon.errors import InternalInconsistency
from pipelines.origon.utils.euclid import (
    ORIGIN,
    Circle,
    Point2,
    Ray,
    distance,
    line_line_intersection,
    signed_angle,
)
from core.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Frame:
    """
    The embedded net.

    j_*: top-face / side-face boundaries from A.
    l_*: mountain pleat rays from B_sigma.
    m_*: valley pleat rays from P, parallel to l_*.
    k_*: side-face outer edges from B_sigma (see k_rays).
    """

    params: GadgetParams
    a: Point2
    b_l: Point2
    b_r: Point2
    c: Point2
    p: Point2
    j_l: Ray
    j_r: Ray
    l_l: Ray
    l_r: Ray
    m_l: Ray
    m_r: Ray
    circle: Circle

    def b(self, side: Side) -> Point2:
        return self.b_l if side == "L" else self.b_r

    def j(self, side: Side) -> Ray:
        return self.j_l if side == "L" else self.j_r

    def l(self, side: Side) -> Ray:  # noqa: E743
        return self.l_l if side == "L" else self.l_r

    def m(self, side: Side) -> Ray:
        return self.m_l if side == "L" else self.m_r

    def k(self, side: Side) -> Ray:
        k_l, k_r = k_rays(self)
        return k_l if side == "L" else k_r

    @property
    def k_l(self) -> Ray:
        return k_rays(self)[0]

    @property
    def k_r(self) -> Ray:
        return k_rays(self)[1]

    @property
    def ridge(self) -> float:
        return self.params.ridge_length

    def ridge_heading(self, side: Side) -> float:
        """Polar angle of A→B_sigma."""
        half = self.params.gamma / 2.0
        return -math.pi / 2.0 - half if side == "L" else -math.pi / 2.0 + half


def _perpendicular_line(through: Point2, ray: Ray) -> Tuple[Point2, Point2]:
    return through, ray.direction.perp()


def k_rays(frame: Frame) -> Tuple[Ray, Ray]:
    """
    Outer edges of the side faces.

    k_sigma leaves B_sigma parallel to j_sigma, so the side face A B_sigma
    k_sigma j_sigma is a trapezoid with angle pi - beta_sigma at B_sigma.
    """
    return Ray(frame.b_l, frame.j_l.direction), Ray(frame.b_r, frame.j_r.direction)


def build_frame(params: GadgetParams) -> Frame:
    """
    Place A, B_L, B_R, construct C and P, and lay out the rays.

    Raises:
        InternalInconsistency: If the measured angles B_sigma A C or the
            ratio |AC| / |AB| disagree with the closed forms in params.
    """
    ridge = params.ridge_length
    half = params.gamma / 2.0
    a = ORIGIN
    b_l = Point2(-math.sin(half), -math.cos(half)) * ridge
    b_r = Point2(math.sin(half), -math.cos(half)) * ridge
    heading_l = -math.pi / 2.0 - half
    heading_r = -math.pi / 2.0 + half

    # delta_L turns clockwise from A→B_L, delta_R counterclockwise from A→B_R
    l_l = Ray.at_heading(b_l, heading_l - params.delta_l)
    l_r = Ray.at_heading(b_r, heading_r + params.delta_r)
    j_l = Ray.at_heading(a, heading_l - params.beta_l)
    j_r = Ray.at_heading(a, heading_r + params.beta_r)

    c = line_line_intersection(*_perpendicular_line(b_l, l_l), *_perpendicular_line(b_r, l_r))
    if c is None:
        raise InternalInconsistency("perpendiculars to the pleat rays are parallel")

    # m_sigma: perpendicular bisector of B_sigma C, which is parallel to l_sigma
    mid_l = (b_l + c) * 0.5
    mid_r = (b_r + c) * 0.5
    p = line_line_intersection(mid_l, l_l.direction, mid_r, l_r.direction)
    if p is None:
        raise InternalInconsistency("perpendicular bisectors of B_L C and B_R C are parallel")

    frame = Frame(
        params=params,
        a=a,
        b_l=b_l,
        b_r=b_r,
        c=c,
        p=p,
        j_l=j_l,
        j_r=j_r,
        l_l=l_l,
        l_r=l_r,
        m_l=Ray(p, l_l.direction),
        m_r=Ray(p, l_r.direction),
        circle=Circle(a, ridge),
    )
    _check_frame(frame)
    return frame


def _check_frame(frame: Frame) -> None:
    params = frame.params
    measured_l = signed_angle(frame.a, frame.b_l, frame.c, "ccw")
    measured_r = signed_angle(frame.a, frame.b_r, frame.c, "cw")
    for side, measured, expected in (
        ("L", measured_l, params.gamma_l),
        ("R", measured_r, params.gamma_r),
    ):
        if abs(measured - expected) > GEOMETRIC_TOLERANCE:
            logger.error(f"gamma_{side}: measured {measured!r}, closed form {expected!r}")
            raise InternalInconsistency(
                f"angle B_{side} A C disagrees with gamma_{side}", abs(measured - expected)
            )

    ratio = distance(frame.a, frame.c) / frame.ridge
    if abs(ratio - params.r) > GEOMETRIC_TOLERANCE * max(1.0, params.r):
        raise InternalInconsistency("|AC| / |AB| disagrees with r", abs(ratio - params.r))


class FrameBuilderAgent(BaseAgent):
    """
    Agent that embeds the net and constructs C, P and the pleat rays.

    Input: params
    Output: frame
    """

    def __init__(self) -> None:
        super().__init__(name="FrameBuilderAgent")

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require(input_data, "params")
        frame = build_frame(input_data["params"])
        logger.info(
            f"Frame built: C=({frame.c.x:.9f}, {frame.c.y:.9f}), "
            f"P=({frame.p.x:.9f}, {frame.p.y:.9f})"
        )
        return {"frame": frame}
