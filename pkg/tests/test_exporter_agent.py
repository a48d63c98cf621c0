"""
Tests for FOLD and SVG export.

Tests verify:
- FOLD key layout, edge assignment letters and truncated rays
- Three-frame FOLD document for a canonical pair
- Structural checks on malformed patterns
- Back-to-front mirroring
- SVG paths, dash styles, labels and mirror symmetry
- Agent file output
"""

import math
import re

import pytest

from pipelines.origon.agents.canonical_pair_agent import build_pair
from pipelines.origon.agents.exporter_agent import (
    ExporterAgent,
    RenderOptions,
    check_pattern,
    crease_diameter,
    fmt,
    mirror_to_front,
    output_paths,
    parse_fold,
    to_fold,
    to_fold_pair,
    to_svg,
)
from pipelines.origon.agents.frame_agent import build_frame
from pipelines.origon.agents.negative_gadget_agent import negative_pattern
from pipelines.origon.agents.positive_gadget_agent import DividingChoice, positive_pattern
from pipelines.origon.contracts import Crease, PatternBuilder
from pipelines.origon.errors import InvalidPattern
from pipelines.origon.utils.euclid import Point2, distance

from fixtures.sample_params import ASYMMETRIC, SYMMETRIC_RIGHT, params_from

_NUMBER = re.compile(r"-?\d+(?:\.\d+)?(?:e-?\d+)?")


@pytest.fixture
def symmetric_positive():
    frame = build_frame(params_from(SYMMETRIC_RIGHT))
    return positive_pattern(frame, DividingChoice.explicit(math.pi / 4.0))


@pytest.fixture
def asymmetric_negative():
    return negative_pattern(build_frame(params_from(ASYMMETRIC)))


def _segments(svg: str):
    segments = []
    for d in re.findall(r'<path[^>]* d="([^"]+)"', svg):
        x1, y1, x2, y2 = (float(v) for v in _NUMBER.findall(d))
        segments.append(((x1, y1), (x2, y2)))
    return segments


# =============================================================================
# FOLD
# =============================================================================

class TestFold:
    """Tests for single-pattern FOLD documents."""

    def test_key_layout(self, symmetric_positive):
        doc = parse_fold(to_fold(symmetric_positive))
        assert doc["file_spec"] == 1.1
        assert doc["file_classes"] == ["singleModel"]
        assert doc["frame_classes"] == ["creasePattern"]
        assert doc["origon:gadget"] == "positive"
        assert doc["origon:viewed_from"] == "front"
        assert doc["origon:params"]["alpha"] == pytest.approx(90.0)

    def test_edges_sorted_by_label(self, symmetric_positive):
        doc = parse_fold(to_fold(symmetric_positive))
        roles = doc["origon:edge_roles"]
        assert roles == sorted(roles)
        assert len(doc["edges_vertices"]) == len(roles) == 20
        assert doc["origon:vertex_ids"] == sorted(doc["origon:vertex_ids"])

    def test_assignment_letters(self, symmetric_positive):
        doc = parse_fold(to_fold(symmetric_positive))
        letters = dict(zip(doc["origon:edge_roles"], doc["edges_assignment"]))
        assert letters["AD"] == "M"
        assert letters["E_LE_R"] == "V"
        assert doc["edges_assignment"].count("M") == 11
        assert doc["edges_assignment"].count("V") == 9

    def test_rays_end_at_truncated_vertices(self, symmetric_positive):
        doc = parse_fold(to_fold(symmetric_positive))
        ids = doc["origon:vertex_ids"]
        truncated = set(doc["origon:truncated_vertices"])
        # eight rays: j, k, l, m on each side
        assert len(truncated) == 8
        assert {ids[i] for i in truncated} == {f"{ray}_{side}~end" for ray in "jklm" for side in "LR"}
        for label, (_, end) in zip(doc["origon:edge_roles"], doc["edges_vertices"]):
            assert (end in truncated) == (label[0] in "jklm" and label[1] == "_")

    def test_truncated_vertices_on_boundary_circle(self, symmetric_positive):
        opts = RenderOptions(boundary_margin=3.0)
        doc = parse_fold(to_fold(symmetric_positive, opts))
        for i in doc["origon:truncated_vertices"]:
            x, y = doc["vertices_coords"][i]
            assert math.hypot(x, y) == pytest.approx(3.0, rel=1e-9)

    def test_default_boundary_scales_with_pattern(self, symmetric_positive):
        doc = parse_fold(to_fold(symmetric_positive))
        radius = 1.5 * crease_diameter(symmetric_positive)
        i = doc["origon:truncated_vertices"][0]
        assert math.hypot(*doc["vertices_coords"][i]) == pytest.approx(radius, rel=1e-9)

    def test_deterministic_output(self, asymmetric_negative):
        assert to_fold(asymmetric_negative) == to_fold(asymmetric_negative)

    def test_fmt_drops_negative_zero(self):
        assert str(fmt(-0.0)) == "0.0"
        assert fmt(1.0 / 3.0) == 0.333333333333


class TestFoldPair:
    """Tests for the three-frame pair document."""

    def test_frames(self):
        pair = build_pair(params_from(ASYMMETRIC))
        doc = parse_fold(to_fold_pair(pair))
        assert doc["origon:gadget"] == "hybrid"
        assert set(doc["edges_assignment"]) == {"F"}
        assert [f["origon:gadget"] for f in doc["file_frames"]] == ["positive", "negative"]
        assert all(f["frame_parent"] == 0 for f in doc["file_frames"])
        assert doc["file_frames"][1]["origon:viewed_from"] == "back"

    def test_fold_as_letters(self):
        pair = build_pair(params_from(SYMMETRIC_RIGHT))
        doc = parse_fold(to_fold_pair(pair))
        roles = dict(zip(doc["origon:edge_roles"], doc["origon:edge_fold_as"]))
        assert roles["E_LE_R"] == {"positive": "V", "negative": "M"}
        assert roles["AD_c"] == {"positive": "M"}


# =============================================================================
# CHECKS AND TRANSFORMS
# =============================================================================

class TestPatternChecks:
    """Tests for check_pattern and mirror_to_front."""

    def test_empty_pattern_rejected(self):
        cp = PatternBuilder("positive").vertex("A", Point2(0.0, 0.0)).build()
        with pytest.raises(InvalidPattern) as exc_info:
            check_pattern(cp)
        assert "no creases" in str(exc_info.value)

    def test_zero_length_segment_rejected(self):
        cp = (
            PatternBuilder("positive")
            .vertex("A", Point2(0.0, 0.0))
            .vertex("B", Point2(0.0, 0.0))
            .segment("AB", "A", "B", "mountain")
            .build()
        )
        with pytest.raises(InvalidPattern) as exc_info:
            to_fold(cp)
        assert "zero length" in str(exc_info.value)

    def test_unknown_endpoint_rejected(self):
        cp = PatternBuilder("positive").vertex("A", Point2(0.0, 0.0)).segment("AX", "A", "X", "valley").build()
        with pytest.raises(InvalidPattern):
            check_pattern(cp)

    def test_ray_without_direction_rejected(self):
        cp = (
            PatternBuilder("positive")
            .vertex("A", Point2(0.0, 0.0))
            .add(Crease("j", "A", None, "mountain"))
            .build()
        )
        with pytest.raises(InvalidPattern) as exc_info:
            check_pattern(cp)
        assert "no direction" in str(exc_info.value)

    def test_duplicate_label_rejected_by_builder(self):
        builder = PatternBuilder("positive").vertex("A", Point2(0.0, 0.0)).vertex("B", Point2(1.0, 0.0))
        builder.segment("AB", "A", "B", "mountain")
        with pytest.raises(ValueError):
            builder.segment("AB", "B", "A", "valley")

    def test_mirror_to_front(self, asymmetric_negative):
        front = mirror_to_front(asymmetric_negative)
        assert front.viewed_from == "front"
        assert front.metadata["mirrored"] is True
        assert front.point("B_L").x == pytest.approx(-asymmetric_negative.point("B_L").x)
        assert front.crease("AB_L").assignment == "mountain"
        assert front.crease("E_LE_R").assignment == "valley"

    def test_front_pattern_unchanged(self, symmetric_positive):
        assert mirror_to_front(symmetric_positive) is symmetric_positive

    def test_front_view_option(self, asymmetric_negative):
        doc = parse_fold(to_fold(asymmetric_negative, RenderOptions(front_view=True)))
        assert doc["origon:viewed_from"] == "front"


# =============================================================================
# SVG
# =============================================================================

class TestSvg:
    """Tests for SVG rendering."""

    def test_one_path_per_crease(self, symmetric_positive):
        svg = to_svg(symmetric_positive)
        assert svg.count("<path") == len(symmetric_positive.creases)
        assert "<text" not in svg

    def test_labels(self, symmetric_positive):
        svg = to_svg(symmetric_positive, RenderOptions(label_points=True))
        # A, B_L, B_R, D, E_L, E_R, G_L, G_R
        assert svg.count("<text") == 8

    def test_construction_vertex_not_labeled(self, asymmetric_negative):
        svg = to_svg(asymmetric_negative, RenderOptions(label_points=True))
        assert ">B'<" not in svg
        assert svg.count("<text") == len(asymmetric_negative.vertices) - 1

    def test_dash_styles(self, symmetric_positive):
        svg = to_svg(symmetric_positive)
        assert 'stroke-dasharray="9,3,2,3"' in svg
        assert 'stroke-dasharray="6,4"' in svg
        assert 'data-label="AD"' in svg

    def test_style_override(self, symmetric_positive):
        opts = RenderOptions.from_dict({"valley_style": {"stroke": "#00ff00"}, "unknown": 1})
        svg = to_svg(symmetric_positive, opts)
        assert "#00ff00" in svg
        assert opts.valley_style["dasharray"] == "6,4"

    def test_symmetric_pattern_renders_symmetric(self, symmetric_positive):
        segments = _segments(to_svg(symmetric_positive))
        assert len(segments) == 20
        for (x1, y1), (x2, y2) in segments:
            mirrored = [
                s for s in segments
                if (distance(Point2(*s[0]), Point2(-x1, y1)) < 1e-6 and distance(Point2(*s[1]), Point2(-x2, y2)) < 1e-6)
                or (distance(Point2(*s[0]), Point2(-x2, y2)) < 1e-6 and distance(Point2(*s[1]), Point2(-x1, y1)) < 1e-6)
            ]
            assert mirrored

    def test_invalid_options(self):
        with pytest.raises(ValueError):
            RenderOptions(units_per_ridge=0.0)
        with pytest.raises(ValueError):
            RenderOptions(boundary_margin=-1.0)


# =============================================================================
# AGENT
# =============================================================================

class TestExporterAgent:
    """Tests for the agent contract and file output."""

    def test_pair_fold_written(self, tmp_path):
        pair = build_pair(params_from(ASYMMETRIC))
        out = tmp_path / "nested" / "pair.fold"
        result = ExporterAgent("fold", out=out).run({"pair": pair})
        assert out.exists()
        assert result["export_status"]["documents"] == ["pair"]
        assert result["export_status"]["written"] == {"pair": str(out)}
        assert len(parse_fold(out.read_text(encoding="utf-8"))["file_frames"]) == 2

    def test_pair_svg_writes_three_files(self, tmp_path):
        pair = build_pair(params_from(SYMMETRIC_RIGHT))
        out = tmp_path / "pair.svg"
        ExporterAgent("svg", out=out).run({"pair": pair})
        assert out.exists()
        assert (tmp_path / "pair.positive.svg").exists()
        assert (tmp_path / "pair.negative.svg").exists()

    def test_in_memory_documents(self, asymmetric_negative):
        result = ExporterAgent("fold").run({"negative_pattern": asymmetric_negative})
        assert list(result["documents"]) == ["negative"]
        assert result["export_status"]["written"] == {}
        assert result["export_status"]["total_bytes"] > 0

    def test_nothing_to_export(self):
        with pytest.raises(ValueError) as exc_info:
            ExporterAgent("svg").run({"params": None})
        assert "Pipeline contract violation" in str(exc_info.value)

    def test_invalid_format(self):
        with pytest.raises(ValueError):
            ExporterAgent("png")

    def test_output_paths(self, tmp_path):
        paths = output_paths(tmp_path / "x.svg", ["hybrid", "positive"], "svg")
        assert paths["hybrid"] == tmp_path / "x.svg"
        assert paths["positive"] == tmp_path / "x.positive.svg"
