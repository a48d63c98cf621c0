#!/usr/bin/env python
"""
CLI entry point for the origon gadget pipeline.

Subcommands:
    validate      check the five angles against the net conditions
    critical      critical angles, critical points, canonical point, admissible interval
    construct     one gadget (--kind positive|negative|pair) as FOLD, SVG or a crease report
    pair          the canonical pair with its hybrid crease pattern
    verify        randomized sweep over the parameter space
    export-demo   FOLD and SVG files for the sets in projects/demo/project.yaml

Angles are given in degrees on the command line and converted once.

Exit status:
    0   success
    1   internal inconsistency (two computations that must agree did not)
    2   parameter condition violated
    3   dividing point not constructible
    64  usage error

Options via environment variables:
    ORIGON_KIND=negative       default for construct --kind (CLI takes priority)
    ORIGON_SWEEP_SAMPLES=1000  sweep sample count
    ORIGON_SWEEP_SEED=...      sweep seed
    ORIGON_SWEEP_WORKERS=4     sweep process count
    ORIGON_LOG_LEVEL=DEBUG     log level (logs go to stderr)
"""

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

# Add project root to path for direct script execution
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from rich.console import Console

from pipelines.origon.agents.critical_angles_agent import critical_summary, minor_arc_phi
from pipelines.origon.agents.exporter_agent import (
    RenderOptions,
    to_fold_pair,
    to_svg,
)
from pipelines.origon.agents.canonical_pair_agent import build_pair
from pipelines.origon.agents.negative_gadget_agent import canonical_point
from pipelines.origon.agents.params_agent import RawParams, raw_params_from_degrees, validate
from pipelines.origon.agents.positive_gadget_agent import parse_dividing
from pipelines.origon.config import DEMO_PROJECT, PIPELINE_NAME, PROJECTS_PATH
from pipelines.origon.contracts import CreasePattern
from pipelines.origon.errors import OrigonError
from pipelines.origon.pipeline import (
    VALID_KINDS,
    build_analysis_pipeline,
    build_pipeline,
    get_pipeline_kind,
)
from pipelines.origon.verify import format_report, load_sweep_config, run_sweep
from core.config_loader import load_project_config
from core.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 64

SUBCOMMANDS = ("validate", "critical", "construct", "pair", "verify", "export-demo")


class UsageExitParser(argparse.ArgumentParser):
    """ArgumentParser that exits with status 64 on usage errors."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _dividing(text: str):
    try:
        return parse_dividing(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


# =============================================================================
# ARGUMENTS
# =============================================================================

def _add_angles(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("net angles (degrees)")
    group.add_argument("--alpha", type=_finite_float, required=True, help="angle alpha")
    group.add_argument("--beta-l", type=_finite_float, required=True, help="angle beta_L")
    group.add_argument("--beta-r", type=_finite_float, required=True, help="angle beta_R")
    group.add_argument("--delta-l", type=_finite_float, default=0.0, help="angle delta_L (default: 0)")
    group.add_argument("--delta-r", type=_finite_float, default=0.0, help="angle delta_R (default: 0)")
    group.add_argument("--ridge", type=_finite_float, default=1.0, help="ridge length |AB| (default: 1)")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=["fold", "svg", "report"],
        default="fold",
        help="output format (default: fold)",
    )
    parser.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    parser.add_argument("--front-view", action="store_true", help="mirror back-side developments to the front")
    parser.add_argument("--labels", action="store_true", help="label vertices in SVG output")


def build_parser() -> argparse.ArgumentParser:
    parser = UsageExitParser(
        prog="origon",
        description=f"{PIPELINE_NAME} - crease patterns for origami extrusion gadgets",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Critical angles of the symmetric right-angle gadget
  origon critical --alpha 90 --beta-l 90 --beta-r 90

  # Canonical pair as a three-frame FOLD file
  origon pair --alpha 100 --beta-l 80 --beta-r 70 --delta-l 10 --format fold --out pair.fold

  # Positive gadget at the left critical point, as SVG
  origon construct --kind positive --dividing critical-l --format svg --alpha 90 --beta-l 90 --beta-r 90
        """,
    )
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}", parser_class=UsageExitParser)
    sub.required = True

    p = sub.add_parser("validate", help="check the net conditions")
    _add_angles(p)

    p = sub.add_parser("critical", help="critical angles and admissible interval")
    _add_angles(p)

    p = sub.add_parser("construct", help="build one gadget")
    _add_angles(p)
    p.add_argument("--kind", choices=sorted(VALID_KINDS), default=None, help="gadget kind (default: pair, or ORIGON_KIND)")
    p.add_argument(
        "--dividing",
        type=_dividing,
        default=None,
        help="phi-l=<deg> | critical-l | critical-r | canonical (positive kind; default canonical)",
    )
    _add_output(p)

    p = sub.add_parser("pair", help="canonical pair and hybrid pattern")
    _add_angles(p)
    _add_output(p)

    p = sub.add_parser("verify", help="randomized parameter sweep")
    p.add_argument("--samples", type=_positive_int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=_finite_float, default=None, help="equality tolerance")
    p.add_argument("--workers", type=_positive_int, default=None)
    p.add_argument("--checks", default=None, help="comma-separated check names (default: all)")
    p.add_argument("--project", default=None, help="project folder holding a sweep section")

    p = sub.add_parser("export-demo", help="render the demo parameter sets")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--project", default=DEMO_PROJECT, help=f"project folder (default: {DEMO_PROJECT})")

    return parser


# =============================================================================
# COMMANDS
# =============================================================================

def _raw(args: argparse.Namespace) -> RawParams:
    return raw_params_from_degrees(
        args.alpha, args.beta_l, args.beta_r, args.delta_l, args.delta_r, args.ridge
    )


def _deg(x: float) -> str:
    return f"{math.degrees(x):.10f}"


def _cmd_validate(args: argparse.Namespace, out: Console) -> int:
    params = validate(_raw(args))
    out.out("valid")
    out.out(f"gamma {_deg(params.gamma)}")
    out.out(f"gamma_L {_deg(params.gamma_l)}")
    out.out(f"gamma_R {_deg(params.gamma_r)}")
    out.out(f"r {params.r:.10f}")
    return EXIT_OK


def _cmd_critical(args: argparse.Namespace, out: Console) -> int:
    context = build_analysis_pipeline().run({"raw_params": _raw(args)})
    params, frame, critical = context["params"], context["frame"], context["critical"]
    phi_l_dc = minor_arc_phi(frame, canonical_point(frame))
    summary = critical_summary(params, frame, phi_l_dc=phi_l_dc, critical=critical)
    interval = summary.interval
    lo_bracket = "(" if interval.lo_open else "["
    hi_bracket = ")" if interval.hi_open else "]"

    out.out(f"zeta_L {_deg(critical.zeta_l)}")
    out.out(f"zeta_R {_deg(critical.zeta_r)}")
    out.out(f"phi_L(D_L) {_deg(summary.phi_l_dl)}")
    out.out(f"phi_L(D_R) {_deg(summary.phi_l_dr)}")
    out.out(f"phi_L(D_c) {_deg(phi_l_dc)}")
    out.out(f"interval {lo_bracket}{_deg(interval.lo)}, {_deg(interval.hi)}{hi_bracket}")
    out.out(f"trichotomy_L {summary.tags[0]}")
    out.out(f"trichotomy_R {summary.tags[1]}")
    return EXIT_OK


def _report_lines(cp: CreasePattern) -> List[str]:
    lines = [f"# {cp.kind} (viewed from {cp.viewed_from})"]
    for crease in sorted(cp.creases, key=lambda c: c.label):
        end = crease.end if crease.end is not None else "->"
        roles = " ".join(f"{g}:{a}" for g, a in crease.fold_as)
        lines.append(f"{crease.label} {crease.start} {end} {crease.assignment} {roles}".rstrip())
    return lines


def _emit(context: Dict[str, Any], args: argparse.Namespace, out: Console) -> None:
    if args.format == "report":
        patterns = []
        if "pair" in context:
            pair = context["pair"]
            patterns = [pair.positive, pair.negative, pair.hybrid]
        else:
            patterns = [context[k] for k in ("positive_pattern", "negative_pattern") if k in context]
        text = "\n".join(line for cp in patterns for line in _report_lines(cp))
        if args.out is not None:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            args.out.write_text(text + "\n", encoding="utf-8")
        else:
            out.out(text)
        return
    if args.out is None:
        for document in context["documents"].values():
            out.out(document, end="")


def _run_kind(kind: str, args: argparse.Namespace, out: Console) -> int:
    fmt_name = None if args.format == "report" else args.format
    options = RenderOptions(label_points=args.labels, front_view=args.front_view)
    dividing = getattr(args, "dividing", None)
    if dividing is not None and kind != "positive":
        logger.warning(f"--dividing applies to the positive kind only; ignored for {kind}")
    pipeline = build_pipeline(kind, dividing=dividing, fmt=fmt_name, options=options, out=args.out)
    context = pipeline.run({"raw_params": _raw(args)})
    _emit(context, args, out)
    return EXIT_OK


def _cmd_construct(args: argparse.Namespace, out: Console) -> int:
    return _run_kind(get_pipeline_kind(args.kind), args, out)


def _cmd_pair(args: argparse.Namespace, out: Console) -> int:
    return _run_kind("pair", args, out)


def _cmd_verify(args: argparse.Namespace, out: Console) -> int:
    checks: Optional[Sequence[str]] = None
    if args.checks:
        checks = [name.strip() for name in args.checks.split(",") if name.strip()]
    cfg = load_sweep_config(
        project=args.project,
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tol,
        workers=args.workers,
        checks=checks,
    )
    report = run_sweep(cfg)
    out.out(format_report(report))
    return EXIT_OK if report.passed else 1


def _cmd_export_demo(args: argparse.Namespace, out: Console) -> int:
    project = load_project_config(args.project, PROJECTS_PATH)
    options = RenderOptions.from_dict(project.get("render"))
    sets = project.get("parameter_sets") or []
    if not sets:
        raise ValueError(f"project {args.project!r} lists no parameter_sets")

    args.out.mkdir(parents=True, exist_ok=True)
    for entry in sets:
        name = entry["name"]
        raw = raw_params_from_degrees(
            entry["alpha"],
            entry["beta_l"],
            entry["beta_r"],
            entry.get("delta_l", 0.0),
            entry.get("delta_r", 0.0),
            entry.get("ridge_length", 1.0),
        )
        pair = build_pair(validate(raw))
        (args.out / f"{name}.fold").write_text(to_fold_pair(pair, options), encoding="utf-8")
        for role, cp in (("hybrid", pair.hybrid), ("positive", pair.positive), ("negative", pair.negative)):
            (args.out / f"{name}.{role}.svg").write_text(to_svg(cp, options), encoding="utf-8")
        logger.info(f"Demo set {name}: 4 files written to {args.out}")
        out.out(name)
    return EXIT_OK


COMMANDS = {
    "validate": _cmd_validate,
    "critical": _cmd_critical,
    "construct": _cmd_construct,
    "pair": _cmd_pair,
    "verify": _cmd_verify,
    "export-demo": _cmd_export_demo,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns the exit status; domain errors map to their exit codes.
    """
    args = build_parser().parse_args(argv)
    console = Console(file=sys.stdout, markup=False, highlight=False, soft_wrap=True, emoji=False)

    try:
        return COMMANDS[args.command](args, console)
    except OrigonError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
