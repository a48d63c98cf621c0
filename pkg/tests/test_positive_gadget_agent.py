"""
Tests for the positive gadget crease pattern.

Tests verify:
- Mountain/valley assignment for delta = 0 and delta > 0 sides
- Merged creases on a critical side
- Construction points G and H on segment AE
- Rejection of non-constructible and degenerate dividing points
- Parsing of the command-line dividing choice
"""

import math

import pytest

from pipelines.origon.agents.critical_angles_agent import critical_geometric, dividing_point
from pipelines.origon.agents.frame_agent import build_frame
from pipelines.origon.agents.positive_gadget_agent import (
    DividingChoice,
    PositiveGadgetAgent,
    parse_dividing,
    positive_pattern,
)
from pipelines.origon.errors import DegenerateDividing, NotConstructible
from pipelines.origon.utils.euclid import distance_to_line, signed_angle, unsigned_angle

from fixtures.sample_params import (
    ASYMMETRIC,
    NEAR_FLAT,
    NEAR_RIGHT_DELTA,
    SATURATED_LEFT,
    SYMMETRIC_RIGHT,
    SYMMETRIC_ZETA,
    params_from,
)

# Assignment at phi_L = gamma/2 on the symmetric right-angle net (both sides delta = 0)
SYMMETRIC_MOUNTAINS = {
    "j_L", "j_R", "l_L", "l_R", "AB_L", "AB_R", "AD",
    "B_LG_L", "B_RG_R", "DE_L", "DE_R",
}
SYMMETRIC_VALLEYS = {
    "k_L", "k_R", "m_L", "m_R", "AE_L", "AE_R", "E_LE_R", "DG_L", "DG_R",
}


def _build(angles, choice):
    frame = build_frame(params_from(angles))
    critical = critical_geometric(frame)
    return frame, positive_pattern(frame, choice, critical)


# =============================================================================
# ASSIGNMENT
# =============================================================================

class TestAssignment:
    """Tests for the mountain/valley assignment."""

    def test_symmetric_midpoint(self):
        _, cp = _build(SYMMETRIC_RIGHT, DividingChoice.explicit(math.pi / 4.0))
        assert cp.labels_with("mountain") == SYMMETRIC_MOUNTAINS
        assert cp.labels_with("valley") == SYMMETRIC_VALLEYS
        assert cp.viewed_from == "front"
        assert cp.metadata["critical_sides"] == []

    def test_symmetric_points(self):
        _, cp = _build(SYMMETRIC_RIGHT, DividingChoice.explicit(math.pi / 4.0))
        assert cp.point("D").y == pytest.approx(-1.0)
        assert cp.point("E_L").x == pytest.approx(-0.5)
        assert cp.point("E_L").y == pytest.approx(-(0.5 + math.sqrt(0.5)))

    def test_tilted_side_adds_h(self):
        # delta_L > 0 on the asymmetric net, delta_R = 0
        _, cp = _build(ASYMMETRIC, DividingChoice.canonical())
        assert {"B_LE_L", "D_cH_L"} <= cp.labels_with("mountain")
        assert {"B_LH_L", "D_cG_L"} <= cp.labels_with("valley")
        assert "D_cE_R" in cp.labels_with("mountain")
        assert not cp.has_vertex("H_R")
        assert "B_RE_R" not in cp.labels()

    def test_rays_have_directions(self):
        _, cp = _build(ASYMMETRIC, DividingChoice.canonical())
        for label in ("j_L", "k_R", "l_L", "m_R"):
            crease = cp.crease(label)
            assert crease.is_ray
            assert crease.direction is not None


# =============================================================================
# CONSTRUCTION POINTS
# =============================================================================

class TestConstructionPoints:
    """Tests for E_sigma, G_sigma and H_sigma."""

    def test_e_on_bisector_and_pleat(self):
        frame, cp = _build(ASYMMETRIC, DividingChoice.explicit(math.radians(50.0)))
        d = cp.point("D")
        for side in ("L", "R"):
            e = cp.point(f"E_{side}")
            assert signed_angle(frame.a, frame.b(side), e) == pytest.approx(
                signed_angle(frame.a, e, d), abs=1e-9
            )
            assert distance_to_line(e, frame.p, frame.m(side).direction) == pytest.approx(0.0, abs=1e-9)

    def test_g_angle_is_supplement_of_beta(self):
        frame, cp = _build(ASYMMETRIC, DividingChoice.explicit(math.radians(50.0)))
        params = frame.params
        for side in ("L", "R"):
            b = frame.b(side)
            angle = unsigned_angle(frame.a - b, cp.point(f"G_{side}") - b)
            assert angle == pytest.approx(math.pi - params.beta(side))

    def test_h_angle_is_delta(self):
        frame, cp = _build(ASYMMETRIC, DividingChoice.explicit(math.radians(50.0)))
        b = frame.b_l
        angle = unsigned_angle(cp.point("E_L") - b, cp.point("H_L") - b)
        assert angle == pytest.approx(frame.params.delta_l)


# =============================================================================
# CRITICAL SIDES
# =============================================================================

class TestCriticalSide:
    """Tests for merged creases at a critical dividing point."""

    def test_flat_side_merges_g_into_e(self):
        _, cp = _build(SYMMETRIC_RIGHT, DividingChoice.critical("L"))
        assert cp.metadata["critical_sides"] == ["L"]
        assert cp.metadata["dividing"]["phi_L"] == pytest.approx(2.0 * SYMMETRIC_ZETA)
        assert {"B_LE_L=B_LG_L", "DE_L=DG_L"} <= cp.labels_with("mountain")
        assert not cp.has_vertex("G_L")
        assert cp.has_vertex("G_R")

    def test_tilted_side_merges_g_into_h(self):
        _, cp = _build(ASYMMETRIC, DividingChoice.critical("L"))
        assert cp.metadata["critical_sides"] == ["L"]
        assert "DG_L=DH_L" in cp.labels_with("mountain")
        assert "B_LG_L=B_LH_L" in cp.labels_with("valley")
        assert "B_LE_L" in cp.labels_with("mountain")
        assert not cp.has_vertex("H_L")

    def test_right_critical_point(self):
        _, cp = _build(ASYMMETRIC, DividingChoice.critical("R"))
        assert cp.metadata["critical_sides"] == ["R"]
        assert "B_RE_R=B_RG_R" in cp.labels()

    def test_explicit_phi_at_critical_angle_merges(self):
        _, cp = _build(SYMMETRIC_RIGHT, DividingChoice.explicit(2.0 * SYMMETRIC_ZETA))
        assert cp.metadata["critical_sides"] == ["L"]
        assert "B_LE_L=B_LG_L" in cp.labels()

    def test_explicit_phi_short_of_critical_angle_keeps_creases(self):
        _, cp = _build(SYMMETRIC_RIGHT, DividingChoice.explicit(2.0 * SYMMETRIC_ZETA - 1e-6))
        assert cp.metadata["critical_sides"] == []
        assert {"B_LE_L", "B_LG_L"} <= cp.labels()

    @pytest.mark.parametrize("angles", [NEAR_RIGHT_DELTA, NEAR_FLAT])
    def test_canonical_point_is_never_critical(self, angles):
        _, cp = _build(angles, DividingChoice.canonical())
        assert cp.metadata["critical_sides"] == []
        assert not any("=" in label for label in cp.labels())


# =============================================================================
# REJECTIONS
# =============================================================================

class TestRejections:
    """Tests for dividing points the positive gadget cannot use."""

    def test_beyond_critical_not_constructible(self):
        with pytest.raises(NotConstructible) as exc_info:
            _build(SYMMETRIC_RIGHT, DividingChoice.explicit(math.radians(60.0)))
        assert exc_info.value.side == "L"
        assert exc_info.value.exit_code == 3

    def test_short_side_not_constructible(self):
        with pytest.raises(NotConstructible) as exc_info:
            _build(SYMMETRIC_RIGHT, DividingChoice.explicit(math.radians(30.0)))
        assert exc_info.value.side == "R"

    def test_arc_endpoint_is_degenerate(self):
        with pytest.raises(DegenerateDividing):
            _build(SATURATED_LEFT, DividingChoice.explicit(0.0))

    def test_saturated_critical_point_is_degenerate(self):
        with pytest.raises(DegenerateDividing):
            _build(SATURATED_LEFT, DividingChoice.critical("L"))


# =============================================================================
# DIVIDING CHOICE
# =============================================================================

class TestDividingChoice:
    """Tests for parse_dividing and DividingChoice."""

    def test_parse_explicit(self):
        choice = parse_dividing("phi-l=45")
        assert choice.variant == "explicit"
        assert choice.phi_l == pytest.approx(math.pi / 4.0)

    @pytest.mark.parametrize(
        "text,variant",
        [("critical-l", "critical_l"), ("critical-r", "critical_r"), ("canonical", "canonical"), (" Canonical ", "canonical")],
    )
    def test_parse_named(self, text, variant):
        assert parse_dividing(text).variant == variant

    @pytest.mark.parametrize("text", ["phi=45", "phi-l=", "critical", "phi-l=abc"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError) as exc_info:
            parse_dividing(text)
        assert "Invalid dividing choice" in str(exc_info.value)

    def test_explicit_requires_phi(self):
        with pytest.raises(ValueError):
            DividingChoice("explicit")

    def test_vertex_id(self):
        assert DividingChoice.canonical().vertex_id == "D_c"
        assert DividingChoice.critical("R").vertex_id == "D"


# =============================================================================
# AGENT
# =============================================================================

class TestPositiveGadgetAgent:
    """Tests for the agent contract."""

    def test_agent_defaults_to_canonical(self):
        frame = build_frame(params_from(ASYMMETRIC))
        result = PositiveGadgetAgent().run({"frame": frame, "critical": critical_geometric(frame)})
        cp = result["positive_pattern"]
        assert cp.metadata["dividing"]["variant"] == "canonical"
        assert cp.has_vertex("D_c")

    def test_agent_uses_context_choice(self):
        frame = build_frame(params_from(SYMMETRIC_RIGHT))
        result = PositiveGadgetAgent().run(
            {
                "frame": frame,
                "critical": critical_geometric(frame),
                "dividing": DividingChoice.explicit(math.pi / 4.0),
            }
        )
        assert result["positive_pattern"].point("D") == dividing_point(frame, math.pi / 4.0)
