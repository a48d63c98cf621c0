"""
Named parameter sets and an independent critical-angle oracle for tests.

Angles are in degrees, ordered (alpha, beta_L, beta_R, delta_L, delta_R).
"""

import math
from typing import Callable, Dict, Tuple

from pipelines.origon.agents.params_agent import GadgetParams, RawParams, raw_params_from_degrees, validate

Degrees = Tuple[float, float, float, float, float]

SYMMETRIC_RIGHT: Degrees = (90.0, 90.0, 90.0, 0.0, 0.0)
ASYMMETRIC: Degrees = (100.0, 80.0, 70.0, 10.0, 0.0)
SATURATED_LEFT: Degrees = (90.0, 120.0, 70.0, 0.0, 60.0)
RIGHT_ANGLE_TILTED: Degrees = (100.0, 90.0, 90.0, 10.0, 20.0)
OBTUSE_BOTH: Degrees = (80.0, 100.0, 110.0, 15.0, 25.0)

# beta_L + gamma/2 + delta_R == pi exactly: D_L lands on B_R
BOUNDARY_LEFT: Degrees = (90.0, 120.0, 70.0, 0.0, 20.0)

# gamma + delta_L + delta_R within 1e-4 deg of pi; r is close to 1e6
NEAR_FLAT: Degrees = (60.0, 90.0, 90.0, 35.0, 24.9999)
NEAR_FLAT_OBLIQUE: Degrees = (100.0, 85.0, 95.0, 45.0, 54.9999)

# delta_L 1e-4 deg short of a right angle, with right angles at B_L and B_R
NEAR_RIGHT_DELTA: Degrees = (100.0, 90.0, 90.0, 89.9999, 9.0)

# Violates iii.b on the right side (delta_R == beta_R)
VIOLATES_III_B: Degrees = (90.0, 120.0, 70.0, 0.0, 70.0)

VALID_SETS: Dict[str, Degrees] = {
    "symmetric_right": SYMMETRIC_RIGHT,
    "asymmetric": ASYMMETRIC,
    "saturated_left": SATURATED_LEFT,
    "right_angle_tilted": RIGHT_ANGLE_TILTED,
    "obtuse_both": OBTUSE_BOTH,
}

# Symmetric right-angle set: zeta = atan(1/2), r = sqrt(2)
SYMMETRIC_ZETA = math.atan(0.5)
SYMMETRIC_R = math.sqrt(2.0)


def raw_from(angles: Degrees, ridge_length: float = 1.0) -> RawParams:
    """RawParams from a degree tuple."""
    return raw_params_from_degrees(*angles, ridge_length=ridge_length)


def params_from(angles: Degrees, ridge_length: float = 1.0) -> GadgetParams:
    """Validated params from a degree tuple."""
    return validate(raw_from(angles, ridge_length))


def _bisect(f: Callable[[float], float], lo: float, hi: float, steps: int = 200) -> float:
    f_lo = f(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2.0
        f_mid = f(mid)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def zeta_by_bisection(params: GadgetParams, side: str) -> float:
    """
    Critical angle from the psi/rho constructibility margin alone.

    The margin beta + gamma_sigma/2 + psi_sigma/2 + rho_sigma - pi/2 falls
    as phi_sigma grows; zeta is half the phi where it crosses zero, or
    gamma/2 when it stays non-negative over the whole arc.
    """
    gamma = params.gamma
    beta = params.beta_l if side == "L" else params.beta_r
    gamma_side = params.gamma_l if side == "L" else params.gamma_r

    def margin(phi: float) -> float:
        psi = gamma_side - phi
        rho = math.atan2(math.sin(psi), params.r - math.cos(psi))
        return beta + gamma_side / 2.0 + psi / 2.0 + rho - math.pi / 2.0

    if margin(gamma) >= 0.0:
        return gamma / 2.0
    return _bisect(margin, 0.0, gamma) / 2.0
