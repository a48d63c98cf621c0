"""Origon gadget pipeline construction.

Supports three kinds:
    positive: one positive gadget at a chosen dividing point
    negative: the canonical negative gadget
    pair:     the canonical pair and its hybrid crease pattern
"""

import os
from pathlib import Path
from typing import List, Literal, Optional

from pipelines.core.base_agent import BaseAgent
from pipelines.core.runner import PipelineRunner
from pipelines.origon.agents.canonical_pair_agent import CanonicalPairAgent
from pipelines.origon.agents.critical_angles_agent import CriticalAnglesAgent
from pipelines.origon.agents.exporter_agent import ExporterAgent, ExportFormat, RenderOptions
from pipelines.origon.agents.frame_agent import FrameBuilderAgent
from pipelines.origon.agents.negative_gadget_agent import NegativeGadgetAgent
from pipelines.origon.agents.params_agent import ParamsValidationAgent
from pipelines.origon.agents.positive_gadget_agent import DividingChoice, PositiveGadgetAgent
from pipelines.origon.config import PIPELINE_NAME
from pipelines.origon.errors import OrigonError
from core.logger import get_logger

logger = get_logger(__name__)


__all__ = [
    "build_pipeline",
    "build_analysis_pipeline",
    "PIPELINE_NAME",
    "VALID_KINDS",
    "get_pipeline_kind",
]


# =============================================================================
# KIND CONFIGURATION
# =============================================================================

VALID_KINDS = frozenset(["positive", "negative", "pair"])

DEFAULT_KIND = "pair"

PipelineKind = Literal["positive", "negative", "pair"]


def get_pipeline_kind(cli_kind: Optional[str] = None) -> PipelineKind:
    """
    Determine the gadget kind from CLI or environment.

    Priority order:
        1. CLI argument (if provided)
        2. ORIGON_KIND environment variable
        3. Default fallback: "pair"

    Raises:
        ValueError: If kind is not in VALID_KINDS.
    """
    if cli_kind is not None:
        kind = cli_kind.lower().strip()
    elif os.getenv("ORIGON_KIND"):
        kind = os.getenv("ORIGON_KIND", "").lower().strip()
    else:
        kind = DEFAULT_KIND

    if kind not in VALID_KINDS:
        raise ValueError(
            f"Invalid pipeline kind: '{kind}'. "
            f"Allowed kinds: {sorted(VALID_KINDS)}"
        )

    return kind  # type: ignore


# =============================================================================
# PIPELINE BUILDERS
# =============================================================================

def build_pipeline(
    kind: PipelineKind = DEFAULT_KIND,
    dividing: Optional[DividingChoice] = None,
    fmt: Optional[ExportFormat] = None,
    options: Optional[RenderOptions] = None,
    out: Optional[Path] = None,
) -> PipelineRunner:
    """
    Build the gadget pipeline for ``kind``.

    Pipeline flow:
        ParamsValidationAgent → params
        FrameBuilderAgent → frame
        CriticalAnglesAgent → critical, admissible_interval   (positive, pair)
        PositiveGadgetAgent → positive_pattern                (positive)
        NegativeGadgetAgent → negative_pattern, canonical     (negative)
        CanonicalPairAgent → pair                             (pair)
        ExporterAgent → documents, export_status              (when fmt is set)

    Args:
        kind: positive | negative | pair.
        dividing: Dividing point for the positive kind (default canonical).
        fmt: fold | svg; None leaves the patterns in the context unexported.
        options: Render options for the exporter.
        out: File written by the exporter; None keeps documents in memory.

    Returns:
        PipelineRunner that lets OrigonError through unwrapped.
    """
    if kind not in VALID_KINDS:
        raise ValueError(f"Invalid pipeline kind: '{kind}'")

    agents: List[BaseAgent] = [ParamsValidationAgent(), FrameBuilderAgent()]
    if kind == "positive":
        agents += [CriticalAnglesAgent(), PositiveGadgetAgent(dividing=dividing)]
    elif kind == "negative":
        agents.append(NegativeGadgetAgent())
    else:
        agents += [CriticalAnglesAgent(), CanonicalPairAgent()]

    if fmt is not None:
        agents.append(ExporterAgent(fmt_name=fmt, options=options, out=out))

    logger.info(f"Building {kind.upper()} gadget pipeline")
    return PipelineRunner(
        name=f"{PIPELINE_NAME}_{kind.upper()}",
        agents=agents,
        passthrough=(OrigonError,),
    )


def build_analysis_pipeline() -> PipelineRunner:
    """
    Validation, frame and critical angles only (the `critical` command).

    Pipeline flow:
        ParamsValidationAgent → params
        FrameBuilderAgent → frame
        CriticalAnglesAgent → critical, admissible_interval
    """
    return PipelineRunner(
        name=f"{PIPELINE_NAME}_CRITICAL",
        agents=[ParamsValidationAgent(), FrameBuilderAgent(), CriticalAnglesAgent()],
        passthrough=(OrigonError,),
    )
