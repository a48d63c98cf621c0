"""Agents for the origon gadget pipeline."""

from pipelines.origon.agents.params_agent import ParamsValidationAgent
from pipelines.origon.agents.frame_agent import FrameBuilderAgent
from pipelines.origon.agents.critical_angles_agent import CriticalAnglesAgent
from pipelines.origon.agents.positive_gadget_agent import PositiveGadgetAgent
from pipelines.origon.agents.negative_gadget_agent import NegativeGadgetAgent
from pipelines.origon.agents.canonical_pair_agent import CanonicalPairAgent
from pipelines.origon.agents.exporter_agent import ExporterAgent

__all__ = [
    "ParamsValidationAgent",
    "FrameBuilderAgent",
    "CriticalAnglesAgent",
    "PositiveGadgetAgent",
    "NegativeGadgetAgent",
    "CanonicalPairAgent",
    "ExporterAgent",
]
