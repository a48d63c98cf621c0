"""Geometry utilities for the origon pipeline."""
