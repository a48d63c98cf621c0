"""
Fixtures package for gadget testing.

Provides named parameter sets and independent reference values.
"""

from fixtures.sample_params import VALID_SETS, params_from, raw_from

__all__ = [
    "VALID_SETS",
    "params_from",
    "raw_from",
]
