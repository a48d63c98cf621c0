"""Origon gadget pipeline - crease patterns for origami extrusion gadgets."""

from pipelines.origon.config import PIPELINE_NAME

__all__ = ["PIPELINE_NAME"]
