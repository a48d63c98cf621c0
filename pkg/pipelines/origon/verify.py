"""
Randomized sweep over the gadget parameter space.

Samples valid parameter sets from a seeded numpy Generator and runs named
checks on each one. Every check returns one number:

    equality     residual, passes when <= tolerance
    inequality   margin, passes when > 0
    flag         0.0 when a set of predicates agree, 1.0 otherwise

The report keeps the worst value of every check and the parameters that
produced it. A check that raises counts as failed with an infinite
residual (or -inf margin); the sweep itself never raises for a failed check.

Parameter sets are drawn up front in the calling process, and each sample's
extra random draws come from a Generator seeded with (seed, index), so
results do not depend on the worker count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np

from pipelines.origon.agents.canonical_pair_agent import build_pair
from pipelines.origon.agents.critical_angles_agent import (
    CriticalData,
    arc_angles,
    constructible,
    critical_geometric,
    critical_summary,
    dividing_point,
    major_arc_marks,
    minor_arc_phi,
    rho_at_major_mark,
    rho_of,
    trichotomy,
    trichotomy_from_marks,
)
from pipelines.origon.agents.frame_agent import Frame, build_frame
from pipelines.origon.agents.negative_gadget_agent import (
    CanonicalSolution,
    bcd_angles,
    canonical_geometric,
    canonical_numeric,
    negative_pattern,
)
from pipelines.origon.agents.params_agent import GadgetParams, RawParams, condition_margins, validate
from pipelines.origon.config import (
    ACCEPTANCE_PROJECT,
    COMPANION_MARGIN,
    CRITICAL_STEP_OFFSET,
    DEFAULT_SWEEP_SAMPLES,
    DEFAULT_SWEEP_SEED,
    DEFAULT_SWEEP_TOLERANCE,
    DEFAULT_SWEEP_WORKERS,
    GEOMETRIC_TOLERANCE,
    MAX_REJECTIONS,
    PROJECTS_PATH,
    SAMPLING_MARGIN,
)
from pipelines.origon.contracts import SIDES
from pipelines.origon.errors import SamplingExhausted
from pipelines.origon.utils.euclid import Point2, distance, distance_to_line, midpoint, wrap_angle
from core.config_loader import load_project_config, resolve_setting
from core.logger import get_logger

logger = get_logger(__name__)

CheckKind = Literal["equality", "inequality", "flag"]

HALF_PI = math.pi / 2.0


# =============================================================================
# CONFIGURATION AND REPORT
# =============================================================================

@dataclass(frozen=True)
class SweepConfig:
    samples: int = DEFAULT_SWEEP_SAMPLES
    seed: int = DEFAULT_SWEEP_SEED
    tolerance: float = DEFAULT_SWEEP_TOLERANCE
    checks: Tuple[str, ...] = ()  # empty means every check
    workers: int = DEFAULT_SWEEP_WORKERS

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.tolerance < 0.0 or not math.isfinite(self.tolerance):
            raise ValueError(f"tolerance must be a finite non-negative number, got {self.tolerance}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        unknown = sorted(set(self.checks) - set(CHECKS))
        if unknown:
            raise ValueError(f"Unknown sweep checks: {unknown}. Known: {sorted(CHECKS)}")

    @property
    def enabled(self) -> Tuple[str, ...]:
        return tuple(name for name in CHECKS if not self.checks or name in self.checks)


@dataclass
class CheckResult:
    name: str
    kind: CheckKind
    attempted: int = 0
    passed: int = 0
    worst: Optional[float] = None
    worst_params: Optional[Dict[str, float]] = None
    worst_index: Optional[int] = None

    @property
    def failed(self) -> int:
        return self.attempted - self.passed

    def record(self, index: int, value: float, ok: bool, params: GadgetParams) -> None:
        self.attempted += 1
        self.passed += int(ok)
        if self.worst is None or _is_worse(self.kind, value, self.worst):
            self.worst = value
            self.worst_params = params.to_degrees()
            self.worst_index = index


@dataclass
class SweepReport:
    config: SweepConfig
    checks: Dict[str, CheckResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed == c.attempted for c in self.checks.values())

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks.values() if c.failed]


def _is_worse(kind: CheckKind, value: float, current: float) -> bool:
    # strict comparison keeps the earliest sample on ties
    return value < current if kind == "inequality" else value > current


def _passes(kind: CheckKind, value: float, tolerance: float) -> bool:
    if kind == "inequality":
        return value > 0.0
    if kind == "flag":
        return value == 0.0
    return value <= tolerance


# =============================================================================
# SAMPLING
# =============================================================================

_SAMPLED_CONDITIONS = ("i", "ii", "iii_b", "iii_c")


def sample_params(rng: np.random.Generator) -> GadgetParams:
    """
    Rejection-sample one valid parameter set.

    alpha, beta_sigma ~ U(0, pi); delta_sigma ~ U[0, beta_sigma). A draw is
    kept when every strict condition holds with slack >= SAMPLING_MARGIN.

    Raises:
        SamplingExhausted: After MAX_REJECTIONS rejected draws.
    """
    for _ in range(MAX_REJECTIONS):
        alpha, beta_l, beta_r = rng.uniform(0.0, math.pi, size=3)
        delta_l = rng.uniform(0.0, beta_l)
        delta_r = rng.uniform(0.0, beta_r)
        raw = RawParams(float(alpha), float(beta_l), float(beta_r), float(delta_l), float(delta_r))
        margins = condition_margins(raw)
        if all(margins[tag] >= SAMPLING_MARGIN for tag in _SAMPLED_CONDITIONS):
            return validate(raw)
    raise SamplingExhausted(f"no valid parameter set after {MAX_REJECTIONS} draws")


def right_angle_companion(params: GadgetParams) -> GadgetParams:
    """
    Same alpha with beta_L = beta_R = pi/2; deltas shrunk to stay valid.

    With right angles gamma = pi - alpha, and the conditions reduce to
    delta_L + delta_R < alpha and delta_sigma < pi/2. The deltas are scaled
    so both slacks are at least COMPANION_MARGIN, or alpha / 2 when alpha is
    too narrow for that.
    """
    margin = min(COMPANION_MARGIN, params.alpha / 2.0)
    budget = params.alpha - margin
    total = params.delta_l + params.delta_r
    shrink = min(1.0, budget / total) if total > 0.0 else 1.0
    cap = HALF_PI - margin
    return validate(
        RawParams(
            params.alpha,
            HALF_PI,
            HALF_PI,
            min(params.delta_l * shrink, cap),
            min(params.delta_r * shrink, cap),
        )
    )


# =============================================================================
# PER-SAMPLE STATE
# =============================================================================

class _Sample:
    """Lazily built constructions shared by the checks of one sample."""

    def __init__(self, params: GadgetParams, rng: np.random.Generator) -> None:
        self.params = params
        self.rng = rng

    @cached_property
    def frame(self) -> Frame:
        return build_frame(self.params)

    @cached_property
    def critical(self) -> CriticalData:
        return critical_geometric(self.frame)

    @cached_property
    def canonical(self) -> CanonicalSolution:
        return canonical_numeric(self.params)

    @cached_property
    def d_c(self) -> Point2:
        return canonical_geometric(self.frame)[0]

    def random_phi(self) -> float:
        gamma = self.params.gamma
        return float(self.rng.uniform(CRITICAL_STEP_OFFSET, gamma - CRITICAL_STEP_OFFSET))


# =============================================================================
# CHECKS
# =============================================================================

def _critical_three_way(s: _Sample) -> float:
    return critical_summary(s.params, s.frame, critical=s.critical).max_path_discrepancy


def _critical_sum(s: _Sample) -> float:
    return s.critical.zeta_l + s.critical.zeta_r - s.params.gamma / 2.0


def _constructibility_flags(s: _Sample) -> float:
    gamma = s.params.gamma
    zl, zr = s.critical.zeta_l, s.critical.zeta_r
    phis = [s.random_phi()]
    for edge in (2.0 * zl, gamma - 2.0 * zr):
        phis += [edge - CRITICAL_STEP_OFFSET, edge + CRITICAL_STEP_OFFSET]
    for phi in phis:
        if not (GEOMETRIC_TOLERANCE < phi < gamma - GEOMETRIC_TOLERANCE):
            continue
        d = dividing_point(s.frame, phi)
        if not constructible(s.params, s.frame, d, (zl, zr)).agree:
            logger.debug(f"constructibility flags disagree at phi_L={phi!r}")
            return 1.0
    return 0.0


def _angle_gap(a: float, b: float) -> float:
    return abs(wrap_angle(a - b))


def _rho_preserved(s: _Sample) -> float:
    residual = 0.0
    for side in SIDES:
        dp = s.critical.dp(side)
        at_mark = rho_of(s.frame, side, dp)
        residual = max(residual, _angle_gap(rho_at_major_mark(s.params, side), at_mark))
        if s.critical.tag(side) == "interior":
            residual = max(residual, _angle_gap(rho_of(s.frame, side, s.critical.d(side)), at_mark))
    return residual


def _major_arc_marks(s: _Sample) -> float:
    marks = major_arc_marks(s.frame)
    residual = 0.0
    for side in SIDES:
        if trichotomy_from_marks(marks, side) != trichotomy(s.params, side):
            return math.inf
        residual = max(
            residual,
            abs(marks[side][f"B'_{side}"] - 2.0 * s.params.delta(side)),
            abs(marks[side][f"D'_{side}"] - 2.0 * s.params.beta(side)),
        )
    return residual


def _canonical_residual(s: _Sample) -> float:
    sol = s.canonical
    lhs = (sol.v1 - s.params.r * sol.v2) * math.tan(sol.rho_l)
    return sol.residual(s.params.r) / max(1.0, abs(lhs), abs(sol.w))


def _canonical_coincidence(s: _Sample) -> float:
    return abs(minor_arc_phi(s.frame, s.d_c) - s.canonical.phi_l)


def _canonical_ray_agreement(s: _Sample) -> float:
    rho = s.canonical.rho_l
    bcd = bcd_angles(s.params)
    return max(
        abs(bcd.rho_l - rho),
        abs(bcd.rho_r - rho),
        _angle_gap(rho_of(s.frame, "L", s.d_c), rho),
    )


def _g_prime_perpendicular(s: _Sample) -> float:
    cp = negative_pattern(s.frame, s.d_c)
    b_prime = cp.point("B'")
    g_dir = (cp.point("G'_R") - cp.point("G'_L")).unit()
    e_l, e_r = cp.point("E_L"), cp.point("E_R")
    e_dir = (e_r - e_l).unit()
    cd = (s.d_c - s.frame.c).unit()
    return max(
        abs(g_dir.dot((s.frame.c - b_prime).unit())),
        abs(e_dir.dot(cd)),
        distance_to_line(midpoint(s.frame.c, s.d_c), e_l, e_dir),
    )


def _canonical_bracket(s: _Sample) -> float:
    pair = build_pair(s.params, s.frame, s.critical)
    return min(pair.bracket_margins)


def _right_angle_reduction(s: _Sample) -> float:
    pair = build_pair(right_angle_companion(s.params))
    return max(
        distance(pair.positive.point(f"G_{side}"), pair.negative.point(f"G'_{side}"))
        for side in SIDES
    )


def _half_angle_identity(s: _Sample) -> float:
    r = s.params.r
    angles = arc_angles(s.frame, dividing_point(s.frame, s.random_phi()))
    residual = 0.0
    for side in SIDES:
        half = angles.psi(side) / 2.0
        rhs = math.atan((r + 1.0) / (r - 1.0) * math.tan(half))
        # both sides live in (-pi/2, pi/2); compare modulo pi
        gap = wrap_angle(2.0 * (half + angles.rho(side) - rhs)) / 2.0
        residual = max(residual, abs(gap))
    return residual


CHECKS: Dict[str, Tuple[CheckKind, Callable[[_Sample], float]]] = {
    "critical_three_way": ("equality", _critical_three_way),
    "critical_sum_exceeds_half_gamma": ("inequality", _critical_sum),
    "constructibility_flags_agree": ("flag", _constructibility_flags),
    "rho_preserved_at_critical": ("equality", _rho_preserved),
    "major_arc_marks": ("equality", _major_arc_marks),
    "canonical_residual": ("equality", _canonical_residual),
    "canonical_coincidence": ("equality", _canonical_coincidence),
    "canonical_ray_agreement": ("equality", _canonical_ray_agreement),
    "g_prime_perpendicular": ("equality", _g_prime_perpendicular),
    "canonical_bracket": ("inequality", _canonical_bracket),
    "right_angle_pair_reduction": ("equality", _right_angle_reduction),
    "half_angle_identity": ("equality", _half_angle_identity),
}


# =============================================================================
# SWEEP
# =============================================================================

def evaluate_sample(params: GadgetParams, index: int, seed: int, names: Sequence[str]) -> Dict[str, float]:
    """Value of every named check on one sample."""
    sample = _Sample(params, np.random.default_rng([seed, index]))
    values: Dict[str, float] = {}
    for name in names:
        kind, check = CHECKS[name]
        try:
            values[name] = float(check(sample))
        except Exception as e:  # a raising check is a failed check
            logger.debug(f"sample {index}: {name} raised {type(e).__name__}: {e}")
            values[name] = -math.inf if kind == "inequality" else math.inf
    return values


def _evaluate_star(args: Tuple[GadgetParams, int, int, Tuple[str, ...]]) -> Dict[str, float]:
    return evaluate_sample(*args)


def draw_samples(samples: int, seed: int) -> List[GadgetParams]:
    rng = np.random.default_rng(seed)
    return [sample_params(rng) for _ in range(samples)]


def run_sweep(cfg: SweepConfig) -> SweepReport:
    """Run every enabled check on cfg.samples parameter sets."""
    names = cfg.enabled
    logger.info(
        f"Sweep started: {cfg.samples} samples, seed {cfg.seed}, "
        f"{len(names)} checks, {cfg.workers} worker(s)"
    )
    population = draw_samples(cfg.samples, cfg.seed)
    jobs = [(params, index, cfg.seed, names) for index, params in enumerate(population)]

    if cfg.workers > 1:
        chunk = max(1, len(jobs) // (cfg.workers * 4))
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_evaluate_star, jobs, chunksize=chunk))
    else:
        results = [_evaluate_star(job) for job in jobs]

    report = SweepReport(config=cfg, checks={name: CheckResult(name, CHECKS[name][0]) for name in names})
    for index, (params, values) in enumerate(zip(population, results)):
        for name in names:
            result = report.checks[name]
            value = values[name]
            result.record(index, value, _passes(result.kind, value, cfg.tolerance), params)

    for result in report.failures():
        logger.warning(
            f"Check {result.name}: {result.failed}/{result.attempted} failed, "
            f"worst {result.worst!r} at sample {result.worst_index} {result.worst_params}"
        )
    logger.info(f"Sweep finished: {'PASS' if report.passed else 'FAIL'}")
    return report


def format_report(report: SweepReport) -> str:
    """One line per check: name attempted passed worst_residual; then the verdict."""
    lines = []
    for result in report.checks.values():
        worst = "nan" if result.worst is None else f"{result.worst:.3e}"
        lines.append(f"{result.name} {result.attempted} {result.passed} {worst}")
    lines.append(f"overall {'pass' if report.passed else 'fail'}")
    return "\n".join(lines)


# =============================================================================
# CONFIG RESOLUTION
# =============================================================================

def load_sweep_config(
    project: Optional[str] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerance: Optional[float] = None,
    workers: Optional[int] = None,
    checks: Optional[Sequence[str]] = None,
    base_path: Any = PROJECTS_PATH,
) -> SweepConfig:
    """
    SweepConfig from CLI values, environment, an optional project file and defaults.

    Priority: CLI > ORIGON_SWEEP_* environment > projects/<project>/project.yaml > default.
    """
    yaml_cfg: Mapping[str, Any] = {}
    if project is not None:
        yaml_cfg = load_project_config(project, base_path).get("sweep", {}) or {}
    yaml_cfg = dict(yaml_cfg)

    chosen_checks = checks if checks is not None else yaml_cfg.get("checks") or ()
    return SweepConfig(
        samples=resolve_setting("samples", samples, "ORIGON_SWEEP_SAMPLES", yaml_cfg, DEFAULT_SWEEP_SAMPLES, int),
        seed=resolve_setting("seed", seed, "ORIGON_SWEEP_SEED", yaml_cfg, DEFAULT_SWEEP_SEED, int),
        tolerance=resolve_setting("tolerance", tolerance, None, yaml_cfg, DEFAULT_SWEEP_TOLERANCE, float),
        workers=resolve_setting("workers", workers, "ORIGON_SWEEP_WORKERS", yaml_cfg, DEFAULT_SWEEP_WORKERS, int),
        checks=tuple(chosen_checks),
    )


def acceptance_config() -> SweepConfig:
    return load_sweep_config(ACCEPTANCE_PROJECT)
