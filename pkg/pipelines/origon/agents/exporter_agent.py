"""Export agent for the origon gadget pipeline: FOLD and SVG documents."""

import json
from dataclasses import dataclass, field, replace
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple

import drawsvg as draw

from pipelines.core.base_agent import BaseAgent
from pipelines.origon.agents.canonical_pair_agent import CanonicalPair
from pipelines.origon.config import (
    BORDER_STYLE,
    DEFAULT_MARGIN_FACTOR,
    DEFAULT_UNITS_PER_RIDGE,
    FILE_CREATOR,
    FLAT_STYLE,
    FOLD_FILE_SPEC,
    FOLD_KEY_PREFIX,
    FOLD_SIGNIFICANT_DIGITS,
    GEOMETRIC_TOLERANCE,
    LABEL_FONT_SIZE,
    MOUNTAIN_STYLE,
    SVG_PADDING_UNITS,
    VALLEY_STYLE,
)
from pipelines.origon.contracts import (
    FOLD_ASSIGNMENT,
    SWAPPED_ASSIGNMENT,
    Crease,
    CreasePattern,
    Vertex,
)
from pipelines.origon.errors import InvalidPattern
from pipelines.origon.utils.euclid import ORIGIN, Circle, Point2, Ray, distance, ray_circle_intersections
from core.logger import get_logger

logger = get_logger(__name__)

ExportFormat = Literal["fold", "svg"]

StrokeStyle = Mapping[str, Any]

TRUNCATED_SUFFIX = "~end"


@dataclass(frozen=True)
class RenderOptions:
    """
    Rendering knobs shared by the FOLD and SVG writers.

    boundary_margin is the radius (ridge units, around A) where rays are cut;
    None means DEFAULT_MARGIN_FACTOR times the diameter of the pattern's
    crease vertices.
    """

    mountain_style: StrokeStyle = field(default_factory=lambda: dict(MOUNTAIN_STYLE))
    valley_style: StrokeStyle = field(default_factory=lambda: dict(VALLEY_STYLE))
    border_style: StrokeStyle = field(default_factory=lambda: dict(BORDER_STYLE))
    flat_style: StrokeStyle = field(default_factory=lambda: dict(FLAT_STYLE))
    boundary_margin: Optional[float] = None
    label_points: bool = False
    units_per_ridge: float = DEFAULT_UNITS_PER_RIDGE
    front_view: bool = False

    def __post_init__(self) -> None:
        if self.boundary_margin is not None and not self.boundary_margin > 0.0:
            raise ValueError(f"boundary_margin must be positive, got {self.boundary_margin}")
        if not self.units_per_ridge > 0.0:
            raise ValueError(f"units_per_ridge must be positive, got {self.units_per_ridge}")

    @classmethod
    def from_dict(cls, data: Optional[Mapping[str, Any]]) -> "RenderOptions":
        """Build from a project-file mapping; unknown keys are ignored."""
        data = dict(data or {})
        known = {
            "boundary_margin", "label_points", "units_per_ridge", "front_view",
            "mountain_style", "valley_style", "border_style", "flat_style",
        }
        kwargs = {k: v for k, v in data.items() if k in known}
        for key in ("mountain_style", "valley_style", "border_style", "flat_style"):
            if key in kwargs:
                base = dict(getattr(cls(), key))
                base.update(kwargs[key])
                kwargs[key] = base
        return cls(**kwargs)

    def style(self, assignment: str) -> StrokeStyle:
        return {
            "mountain": self.mountain_style,
            "valley": self.valley_style,
            "border": self.border_style,
            "flat": self.flat_style,
        }[assignment]


def fmt(x: float) -> float:
    """Round to FOLD_SIGNIFICANT_DIGITS and drop negative zero."""
    return float(f"{x:.{FOLD_SIGNIFICANT_DIGITS}g}") + 0.0


# =============================================================================
# PATTERN CHECKS AND TRANSFORMS
# =============================================================================

def check_pattern(cp: CreasePattern) -> None:
    """
    Raises:
        InvalidPattern: On an empty pattern, duplicate ids or labels, a
            missing endpoint, a ray without direction or a zero-length segment.
    """
    if not cp.creases:
        raise InvalidPattern(f"{cp.kind} pattern has no creases")
    ids = [v.id for v in cp.vertices]
    if len(set(ids)) != len(ids):
        raise InvalidPattern(f"{cp.kind} pattern has duplicate vertex ids")
    labels = [c.label for c in cp.creases]
    if len(set(labels)) != len(labels):
        raise InvalidPattern(f"{cp.kind} pattern has duplicate crease labels")

    points = {v.id: v.point for v in cp.vertices}
    for crease in cp.creases:
        if crease.assignment not in FOLD_ASSIGNMENT:
            raise InvalidPattern(f"crease {crease.label} has unknown assignment {crease.assignment!r}")
        if crease.start not in points:
            raise InvalidPattern(f"crease {crease.label} starts at unknown vertex {crease.start!r}")
        if crease.is_ray:
            if crease.direction is None:
                raise InvalidPattern(f"ray crease {crease.label} has no direction")
            continue
        if crease.end not in points:
            raise InvalidPattern(f"crease {crease.label} ends at unknown vertex {crease.end!r}")
        if distance(points[crease.start], points[crease.end]) <= GEOMETRIC_TOLERANCE:
            raise InvalidPattern(f"crease {crease.label} has zero length")


def mirror_to_front(cp: CreasePattern) -> CreasePattern:
    """
    Front view of a pattern developed from the back: x → -x, mountain ↔ valley.

    Front-view patterns are returned unchanged.
    """
    if cp.viewed_from != "back":
        return cp
    vertices = tuple(Vertex(v.id, v.point.mirrored(), v.role) for v in cp.vertices)
    creases = tuple(
        replace(
            c,
            assignment=SWAPPED_ASSIGNMENT[c.assignment],
            direction=c.direction.mirrored() if c.direction is not None else None,
        )
        for c in cp.creases
    )
    metadata = dict(cp.metadata)
    metadata["viewed_from"] = "front"
    metadata["mirrored"] = True
    return CreasePattern(kind=cp.kind, vertices=vertices, creases=creases, metadata=metadata)


def crease_diameter(cp: CreasePattern) -> float:
    """Largest distance between vertices that carry creases."""
    used = {c.start for c in cp.creases} | {c.end for c in cp.creases if c.end is not None}
    points = [v.point for v in cp.vertices if v.id in used]
    spans = [distance(p, q) for p, q in combinations(points, 2)]
    return max(spans, default=1.0) or 1.0


def boundary_radius(cp: CreasePattern, opts: RenderOptions) -> float:
    if opts.boundary_margin is not None:
        return opts.boundary_margin
    return DEFAULT_MARGIN_FACTOR * crease_diameter(cp)


def _ray_end(start: Point2, direction: Point2, radius: float) -> Point2:
    ray = Ray(start, direction.unit())
    hits = ray_circle_intersections(ray, Circle(ORIGIN, radius))
    if hits and distance(hits[-1], start) > GEOMETRIC_TOLERANCE:
        return hits[-1]
    # start on or outside the boundary: cut at one boundary radius
    return ray.point_at(radius)


@dataclass(frozen=True)
class Flattened:
    """Pattern with rays cut at the boundary; vertices by id, edges by label."""

    ids: List[str]
    coords: List[Point2]
    edges: List[Tuple[int, int]]
    creases: List[Crease]
    truncated: List[int]
    radius: float


def flatten(cp: CreasePattern, opts: RenderOptions) -> Flattened:
    check_pattern(cp)
    radius = boundary_radius(cp, opts)
    points: Dict[str, Point2] = {v.id: v.point for v in cp.vertices}
    creases = sorted(cp.creases, key=lambda c: c.label)

    synthetic = set()
    ends: Dict[str, str] = {}
    for crease in creases:
        if crease.is_ray:
            end_id = f"{crease.label}{TRUNCATED_SUFFIX}"
            points[end_id] = _ray_end(points[crease.start], crease.direction, radius)
            synthetic.add(end_id)
            ends[crease.label] = end_id
        else:
            ends[crease.label] = crease.end

    ids = sorted(points)
    index = {vid: i for i, vid in enumerate(ids)}
    return Flattened(
        ids=ids,
        coords=[points[vid] for vid in ids],
        edges=[(index[c.start], index[ends[c.label]]) for c in creases],
        creases=creases,
        truncated=[index[vid] for vid in ids if vid in synthetic],
        radius=radius,
    )


def _prepare(cp: CreasePattern, opts: RenderOptions) -> CreasePattern:
    return mirror_to_front(cp) if opts.front_view else cp


# =============================================================================
# FOLD
# =============================================================================

def _key(name: str) -> str:
    return f"{FOLD_KEY_PREFIX}:{name}"


def fold_frame(cp: CreasePattern, opts: Optional[RenderOptions] = None) -> Dict[str, Any]:
    """FOLD frame dictionary (without the file_* keys)."""
    opts = opts or RenderOptions()
    cp = _prepare(cp, opts)
    flat = flatten(cp, opts)

    frame: Dict[str, Any] = {
        "frame_title": f"{cp.kind} gadget",
        "frame_classes": ["creasePattern"],
        "vertices_coords": [[fmt(p.x), fmt(p.y)] for p in flat.coords],
        "edges_vertices": [list(e) for e in flat.edges],
        "edges_assignment": [FOLD_ASSIGNMENT[c.assignment] for c in flat.creases],
        _key("edge_roles"): [c.label for c in flat.creases],
        _key("vertex_ids"): flat.ids,
        _key("truncated_vertices"): flat.truncated,
        _key("viewed_from"): cp.viewed_from,
        _key("gadget"): cp.kind,
        _key("params"): {k: fmt(v) for k, v in cp.metadata.get("params_deg", {}).items()},
    }
    if cp.kind == "hybrid":
        frame[_key("edge_fold_as")] = [
            {gadget: FOLD_ASSIGNMENT[role] for gadget, role in c.fold_as} for c in flat.creases
        ]
    return frame


def _file_header() -> Dict[str, Any]:
    return {
        "file_spec": FOLD_FILE_SPEC,
        "file_creator": FILE_CREATOR,
        "file_classes": ["singleModel"],
    }


def _dump(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def to_fold(cp: CreasePattern, opts: Optional[RenderOptions] = None) -> str:
    """
    FOLD 1.1 document for one pattern.

    Raises:
        InvalidPattern: If the pattern fails check_pattern.
    """
    document = _file_header()
    document.update(fold_frame(cp, opts))
    return _dump(document)


def to_fold_pair(pair: CanonicalPair, opts: Optional[RenderOptions] = None) -> str:
    """Hybrid as the top-level frame; positive and negative under file_frames."""
    document = _file_header()
    document.update(fold_frame(pair.hybrid, opts))
    frames = []
    for cp in (pair.positive, pair.negative):
        frame = fold_frame(cp, opts)
        frame["frame_parent"] = 0
        frames.append(frame)
    document["file_frames"] = frames
    return _dump(document)


def parse_fold(text: str) -> Dict[str, Any]:
    return json.loads(text)


# =============================================================================
# SVG
# =============================================================================

def _path(a: Point2, b: Point2, style: StrokeStyle, crease: Crease, scale: float) -> draw.Path:
    kwargs = {
        "stroke": style["stroke"],
        "stroke_width": style["stroke_width"],
        "fill": "none",
        "class_": crease.assignment,
        "data_label": crease.label,
    }
    if style.get("dasharray"):
        kwargs["stroke_dasharray"] = style["dasharray"]
    path = draw.Path(**kwargs)
    # SVG y grows downward
    return path.M(fmt(a.x * scale), fmt(-a.y * scale)).L(fmt(b.x * scale), fmt(-b.y * scale))


def to_svg(cp: CreasePattern, opts: Optional[RenderOptions] = None) -> str:
    """
    SVG diagram: one path per crease, styled by assignment.

    Raises:
        InvalidPattern: If the pattern fails check_pattern.
    """
    opts = opts or RenderOptions()
    cp = _prepare(cp, opts)
    flat = flatten(cp, opts)
    scale = opts.units_per_ridge
    half = flat.radius * scale + SVG_PADDING_UNITS
    size = fmt(2.0 * half)

    d = draw.Drawing(size, size, origin=(fmt(-half), fmt(-half)))
    for crease, (i, j) in zip(flat.creases, flat.edges):
        d.append(_path(flat.coords[i], flat.coords[j], opts.style(crease.assignment), crease, scale))

    if opts.label_points:
        truncated = set(flat.truncated)
        roles = {v.id: v.role for v in cp.vertices}
        for k, (vid, p) in enumerate(zip(flat.ids, flat.coords)):
            if k in truncated or roles.get(vid) == "construction":
                continue
            d.append(
                draw.Text(
                    vid,
                    LABEL_FONT_SIZE,
                    fmt(p.x * scale + 2.0),
                    fmt(-p.y * scale - 2.0),
                    fill="#000000",
                    font_family="sans-serif",
                )
            )
    return d.as_svg()


# =============================================================================
# AGENT
# =============================================================================

def documents_for(context: Mapping[str, Any], fmt_name: ExportFormat, opts: RenderOptions) -> Dict[str, str]:
    """Documents for whatever the pipeline produced, keyed by role."""
    if "pair" in context:
        pair: CanonicalPair = context["pair"]
        if fmt_name == "fold":
            return {"pair": to_fold_pair(pair, opts)}
        return {
            "hybrid": to_svg(pair.hybrid, opts),
            "positive": to_svg(pair.positive, opts),
            "negative": to_svg(pair.negative, opts),
        }
    for key, role in (("positive_pattern", "positive"), ("negative_pattern", "negative")):
        if key in context:
            render = to_fold if fmt_name == "fold" else to_svg
            return {role: render(context[key], opts)}
    raise ValueError("Pipeline contract violation: nothing to export")


def output_paths(out: Path, roles: List[str], fmt_name: ExportFormat) -> Dict[str, Path]:
    """Main document at ``out``; extra SVG documents next to it with a role suffix."""
    if len(roles) == 1:
        return {roles[0]: out}
    paths = {roles[0]: out}
    for role in roles[1:]:
        paths[role] = out.with_name(f"{out.stem}.{role}{out.suffix or '.' + fmt_name}")
    return paths


class ExporterAgent(BaseAgent):
    """
    Agent that renders crease patterns to FOLD or SVG.

    Writes to ``out`` when given, creating only its parent directories.

    Input: pair | positive_pattern | negative_pattern
    Output: documents, export_status
    """

    def __init__(
        self,
        fmt_name: ExportFormat = "fold",
        options: Optional[RenderOptions] = None,
        out: Optional[Path] = None,
    ) -> None:
        super().__init__(name="ExporterAgent")
        if fmt_name not in ("fold", "svg"):
            raise ValueError(f"Invalid export format {fmt_name!r}")
        self.fmt_name = fmt_name
        self.options = options or RenderOptions()
        self.out = Path(out) if out is not None else None

    def run(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        documents = documents_for(input_data, self.fmt_name, self.options)
        written: Dict[str, str] = {}
        if self.out is not None:
            self.out.parent.mkdir(parents=True, exist_ok=True)
            for role, path in output_paths(self.out, list(documents), self.fmt_name).items():
                path.write_text(documents[role], encoding="utf-8")
                written[role] = str(path)
                logger.info(f"  {role}: {path}")

        export_status = {
            "format": self.fmt_name,
            "documents": sorted(documents),
            "written": written,
            "total_bytes": sum(len(doc.encode("utf-8")) for doc in documents.values()),
        }
        logger.info(f"Export created: {len(documents)} {self.fmt_name} document(s)")
        return {"documents": documents, "export_status": export_status}
