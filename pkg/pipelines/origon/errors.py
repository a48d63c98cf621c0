"""
Exception hierarchy for the origon pipeline.

Every domain failure derives from OrigonError so the pipeline runner can
let it through unwrapped and the CLI can map it to an exit status:

    ConditionViolation               → exit 2 (user input)
    NotConstructible, DegenerateDividing → exit 3 (bad dividing choice)
    everything else                  → exit 1 (geometry bug / inconsistency)
"""

from typing import Literal, Optional

ConditionTag = Literal["i", "ii", "iii_a", "iii_b", "iii_c"]
Side = Literal["L", "R"]


class OrigonError(Exception):
    """Base class for all origon domain errors."""

    exit_code = 1


class DegeneratePoint(OrigonError):
    """A construction leg is shorter than the geometric tolerance."""


class ConditionViolation(OrigonError):
    """The five input angles violate one of the net conditions."""

    exit_code = 2

    def __init__(self, tag: ConditionTag, detail: str = "") -> None:
        self.tag = tag
        self.detail = detail
        message = f"condition {self.display_tag} violated"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)

    @property
    def display_tag(self) -> str:
        """Tag in dotted form (iii_b → iii.b)."""
        return self.tag.replace("_", ".")


class InternalInconsistency(OrigonError):
    """Two computation paths that must agree did not."""

    def __init__(self, message: str, residual: Optional[float] = None) -> None:
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)


class NotOnArc(OrigonError):
    """A dividing point is not on the minor arc between B_L and B_R."""


class NoIntersection(OrigonError):
    """A construction ray misses the object it must hit."""


class NotConstructible(OrigonError):
    """The dividing point lies beyond the critical angle of one side."""

    exit_code = 3

    def __init__(self, side: Side, phi: float, limit: float) -> None:
        self.side = side
        self.phi = phi
        self.limit = limit
        super().__init__(
            f"side {side} not constructible: phi_{side} = {phi:.12g} exceeds 2*zeta_{side} = {limit:.12g}"
        )


class DegenerateDividing(OrigonError):
    """The dividing point coincides with an arc endpoint."""

    exit_code = 3


class SolutionOutOfRange(OrigonError):
    """The canonical equation's solution left its open interval."""


class BracketViolation(OrigonError):
    """phi_L(D_R) < phi_L(D_c) < phi_L(D_L) failed."""


class InvalidPattern(OrigonError):
    """A crease pattern breaks a structural invariant."""


class SamplingExhausted(OrigonError):
    """Rejection sampling gave up before finding valid parameters."""
