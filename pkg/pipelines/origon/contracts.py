"""
Crease Pattern Contract.

Shared schema for every agent that produces or consumes crease patterns:
the positive and negative gadget builders, the canonical pair assembler
and the exporters.

CRITICAL INVARIANTS:
- Vertex ids are stable strings (A, B_L, D, E_R, G'_L, ...), unique per pattern
- Crease labels are unique per pattern; merged creases carry "X=Y" labels
- A crease either joins two vertices or is a ray (end is None, direction set)
- Coordinates are in ridge-length units with A at the origin
- Patterns are immutable values; transformations return new patterns

Usage:
    Builders assemble vertices and creases with PatternBuilder, then call
    build(); exporters read the frozen CreasePattern only.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Literal, Mapping, Optional, Tuple

from pipelines.origon.utils.euclid import Point2


# =============================================================================
# SIDE AND ASSIGNMENT DEFINITIONS
# =============================================================================

Side = Literal["L", "R"]

SIDES: Tuple[Side, Side] = ("L", "R")

Assignment = Literal[
    "mountain",  # folded away from the viewer of the stated side
    "valley",    # folded toward the viewer
    "border",    # paper edge
    "flat",      # precreased only; fold direction chosen later (hybrid)
]

GadgetKind = Literal["positive", "negative", "hybrid"]

ViewedFrom = Literal["front", "back"]

# FOLD edges_assignment letters
FOLD_ASSIGNMENT: Dict[str, str] = {
    "mountain": "M",
    "valley": "V",
    "border": "B",
    "flat": "F",
}

SWAPPED_ASSIGNMENT: Dict[str, Assignment] = {
    "mountain": "valley",
    "valley": "mountain",
    "border": "border",
    "flat": "flat",
}


def other_side(side: Side) -> Side:
    return "R" if side == "L" else "L"


# =============================================================================
# PATTERN ELEMENTS
# =============================================================================

@dataclass(frozen=True)
class Vertex:
    """Named point of a crease pattern."""
    id: str
    point: Point2
    role: str  # apex | ridge | dividing | crease | construction


@dataclass(frozen=True)
class Crease:
    """
    One labeled crease.

    Segment creases join ``start`` and ``end``. Ray creases (pleat rays and
    face boundaries running to the paper edge) leave ``start`` along
    ``direction`` and have ``end = None``.
    """
    label: str
    start: str
    end: Optional[str]
    assignment: Assignment
    direction: Optional[Point2] = None
    fold_as: Tuple[Tuple[str, Assignment], ...] = ()

    @property
    def is_ray(self) -> bool:
        return self.end is None


@dataclass(frozen=True)
class CreasePattern:
    """Vertices, labeled creases and metadata of one gadget (or a hybrid)."""
    kind: GadgetKind
    vertices: Tuple[Vertex, ...]
    creases: Tuple[Crease, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def vertex(self, vertex_id: str) -> Vertex:
        for v in self.vertices:
            if v.id == vertex_id:
                return v
        raise KeyError(f"no vertex {vertex_id!r} in {self.kind} pattern")

    def point(self, vertex_id: str) -> Point2:
        return self.vertex(vertex_id).point

    def crease(self, label: str) -> Crease:
        for c in self.creases:
            if c.label == label:
                return c
        raise KeyError(f"no crease {label!r} in {self.kind} pattern")

    def has_vertex(self, vertex_id: str) -> bool:
        return any(v.id == vertex_id for v in self.vertices)

    def labels(self) -> FrozenSet[str]:
        return frozenset(c.label for c in self.creases)

    def labels_with(self, assignment: Assignment) -> FrozenSet[str]:
        return frozenset(c.label for c in self.creases if c.assignment == assignment)

    @property
    def viewed_from(self) -> ViewedFrom:
        return self.metadata.get("viewed_from", "front")


# =============================================================================
# BUILDER
# =============================================================================

class PatternBuilder:
    """Mutable accumulator used by the gadget constructions."""

    def __init__(self, kind: GadgetKind) -> None:
        self.kind = kind
        self._vertices: Dict[str, Vertex] = {}
        self._creases: Dict[str, Crease] = {}

    def vertex(self, vertex_id: str, point: Point2, role: str = "crease") -> "PatternBuilder":
        if vertex_id in self._vertices:
            raise ValueError(f"duplicate vertex id {vertex_id!r}")
        self._vertices[vertex_id] = Vertex(vertex_id, point, role)
        return self

    def segment(self, label: str, start: str, end: str, assignment: Assignment) -> "PatternBuilder":
        return self._add(Crease(label, start, end, assignment))

    def ray(self, label: str, start: str, direction: Point2, assignment: Assignment) -> "PatternBuilder":
        return self._add(Crease(label, start, None, assignment, direction=direction))

    def add(self, crease: Crease) -> "PatternBuilder":
        return self._add(crease)

    def _add(self, crease: Crease) -> "PatternBuilder":
        if crease.label in self._creases:
            raise ValueError(f"duplicate crease label {crease.label!r}")
        self._creases[crease.label] = crease
        return self

    def build(self, metadata: Optional[Mapping[str, Any]] = None) -> CreasePattern:
        return CreasePattern(
            kind=self.kind,
            vertices=tuple(self._vertices.values()),
            creases=tuple(self._creases.values()),
            metadata=dict(metadata or {}),
        )


def segment_label(a: str, b: str) -> str:
    """Crease label of segment ab, written as the two ids run together (AB_L, E_LE_R)."""
    return f"{a}{b}"


def merged_label(*labels: str) -> str:
    return "=".join(labels)


def sorted_labels(labels: FrozenSet[str]) -> List[str]:
    return sorted(labels)
