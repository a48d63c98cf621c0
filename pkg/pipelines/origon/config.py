"""Configuration constants for the origon gadget pipeline."""

from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Pipeline identification
PIPELINE_NAME = "ORIGON_GADGET_PIPELINE"
FILE_CREATOR = "origon-gadget-factory"

# =============================================================================
# NUMERIC TOLERANCES (unit ridge length, radians)
# =============================================================================

# "Point on arc", "intersection exists", zero-length edge and frame checks
GEOMETRIC_TOLERANCE = 1e-9

# Strictness margin for the parameter conditions
ANGLE_TOLERANCE = 1e-12

# Band around delta = pi/2 where the tangent forms switch to their limits
RIGHT_ANGLE_SNAP = 1e-8

# |phi_sigma - 2 zeta_sigma| at or below this marks a side as critical
CRITICAL_GATE = 1e-9

# V1 - r V2 below this in magnitude means the canonical equation degenerates
CANONICAL_DENOMINATOR_FLOOR = 1e-12

# Conditioning guard for the radius-ratio cross-check (|cos delta| floor)
RADIUS_CROSSCHECK_FLOOR = 1e-4

# =============================================================================
# SWEEP DEFAULTS
# =============================================================================

# ORIGON_SWEEP_SAMPLES / _SEED / _WORKERS are applied in verify.load_sweep_config
SAMPLING_MARGIN = 1e-6
MAX_REJECTIONS = 10**6
DEFAULT_SWEEP_SAMPLES = 1000
DEFAULT_SWEEP_SEED = 20240601
DEFAULT_SWEEP_WORKERS = 1
DEFAULT_SWEEP_TOLERANCE = 1e-9

# Smallest condition margin of the right-angle companion of a sample
COMPANION_MARGIN = 1e-3

# Step just inside and just outside D_sigma for the constructibility-flag check
CRITICAL_STEP_OFFSET = 1e-6

# =============================================================================
# EXPORT DEFAULTS
# =============================================================================

FOLD_FILE_SPEC = 1.1
FOLD_SIGNIFICANT_DIGITS = 12
DEFAULT_UNITS_PER_RIDGE = 100.0
DEFAULT_MARGIN_FACTOR = 1.5
SVG_PADDING_UNITS = 10.0
LABEL_FONT_SIZE = 8.0

# Stroke descriptors: color, width (SVG units), dash pattern ("" = solid)
MOUNTAIN_STYLE = {"stroke": "#d62728", "stroke_width": 1.2, "dasharray": "9,3,2,3"}
VALLEY_STYLE = {"stroke": "#1f77b4", "stroke_width": 1.2, "dasharray": "6,4"}
BORDER_STYLE = {"stroke": "#000000", "stroke_width": 1.5, "dasharray": ""}
FLAT_STYLE = {"stroke": "#7f7f7f", "stroke_width": 0.8, "dasharray": "2,2"}

# Namespaced FOLD keys
FOLD_KEY_PREFIX = "origon"

# Named run configurations
PROJECTS_PATH = Path("projects")
ACCEPTANCE_PROJECT = "acceptance"
DEMO_PROJECT = "demo"
