"""Subcommand implementations. Each returns the report text and the exit status."""
from __future__ import annotations

import argparse
import logging
from pathlib import Path

from src.associator.certificate import nonexistence_certificate
from src.associator.equations import hexagon_residuals, pentagon_residual, standard_r
from src.associator.models import PropertiesReport, ResidualReport
from src.associator.properties import check_properties
from src.associator.records import series_lines
from src.associator.solver import solve_degree2
from src.cli.formatters import render
from src.cli.models import DimsReport, DimsRow, EnumerateReport
from src.config import KtgConfig
from src.diagram.enumerate import enumerate_diagrams
from src.diagram.text_format import format_inline
from src.graph_ops.element import GradedElement
from src.graph_ops.pipeline import parse_pipeline, run_pipeline
from src.graph_ops.sweep import sweep
from src.relations.cache import default_store
from src.relations.generators import all_relations
from src.relations.quotient import randomized_dim
from src.skeleton.text_format import load_skeleton
from src.strand_algebra.series import Series, dump_series, load_series

logger = logging.getLogger(__name__)

Result = tuple[str, int]


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Input not found: {p}")
    return p


def cmd_dims(args: argparse.Namespace, config: KtgConfig) -> Result:
    s = load_skeleton(args.skeleton)
    degrees = list(range(args.degree + 1))
    store = default_store()
    cells = store.precompute(s, degrees, workers=config.workers)
    report = DimsReport(skeleton=args.skeleton)
    for q in cells:
        row = DimsRow(
            degree=q.degree,
            diagrams=len(enumerate_diagrams(s, q.degree)),
            relations=len(all_relations(s, q.degree)),
            dimension=q.dim,
        )
        if args.verify:
            row.randomized_dimension = randomized_dim(s, q.degree)
            report.consistent = report.consistent and row.randomized_dimension == row.dimension
        report.rows.append(row)
    return render(report, "dims", config.report_format), 0 if report.consistent else 1


def cmd_enumerate(args: argparse.Namespace, config: KtgConfig) -> Result:
    s = load_skeleton(args.skeleton)
    diagrams = enumerate_diagrams(s, args.degree)
    report = EnumerateReport(
        skeleton=args.skeleton,
        degree=args.degree,
        count=len(diagrams),
        diagrams=[format_inline(d) for d in diagrams],
    )
    return render(report, "enumerate", config.report_format), 0


def cmd_reduce(args: argparse.Namespace, config: KtgConfig) -> Result:
    element = GradedElement.load(_existing(args.input))
    return element.reduced().dump(), 0


def _emit_value(value) -> str:
    if isinstance(value, Series):
        return dump_series(value)
    return value.dump()


def cmd_apply(args: argparse.Namespace, config: KtgConfig) -> Result:
    element = GradedElement.load(_existing(args.input))
    stages = parse_pipeline(args.ops, source="--ops")
    return _emit_value(run_pipeline(element=element, stages=stages)), 0


def cmd_sweep(args: argparse.Namespace, config: KtgConfig) -> Result:
    element = GradedElement.load(_existing(args.input))
    tree = [t for t in args.tree.split(",") if t]
    return dump_series(sweep(element.value, tree, max_degree=element.max_degree)), 0


def _residual_report(name: str, residual: Series) -> ResidualReport:
    return ResidualReport(
        equation=name,
        max_degree=residual.max_degree,
        terms=series_lines(residual),
        vanishes=residual.is_zero(),
    )


def cmd_check_pentagon(args: argparse.Namespace, config: KtgConfig) -> Result:
    phi = load_series(_existing(args.phi))
    report = _residual_report("pentagon", pentagon_residual(phi))
    return render(report, "check-pentagon", config.report_format), 0 if report.vanishes else 1


def cmd_check_hexagon(args: argparse.Namespace, config: KtgConfig) -> Result:
    phi = load_series(_existing(args.phi))
    r = load_series(_existing(args.r)) if args.r else standard_r(phi.max_degree)
    h1, h2 = hexagon_residuals(phi, r)
    reports = [_residual_report("hexagon", h1), _residual_report("hexagon (R^21)^-1", h2)]
    text = "".join(render(rep, f"check-hexagon {i}", config.report_format) for i, rep in enumerate(reports, start=1))
    return text, 0 if all(rep.vanishes for rep in reports) else 1


def cmd_solve_degree2(args: argparse.Namespace, config: KtgConfig) -> Result:
    result = solve_degree2()
    return render(result.report, "solve-degree2", config.report_format), 0 if result.report.status == "PASS" else 1


def cmd_properties(args: argparse.Namespace, config: KtgConfig) -> Result:
    if args.phi:
        target = load_series(_existing(args.phi))
    else:
        target = solve_degree2().family
        if target is None:
            return render(PropertiesReport(), "properties", config.report_format), 1
    report = check_properties(target)
    # on the family the report lists sub-family conditions and is not a pass/fail check
    code = 1 if args.phi and report.status != "PASS" else 0
    return render(report, "properties", config.report_format), code


def cmd_certify(args: argparse.Namespace, config: KtgConfig) -> Result:
    report = nonexistence_certificate()
    return render(report, "certify-nonexistence", config.report_format), 0 if report.status == "PASS" else 1


COMMANDS = {
    "dims": cmd_dims,
    "enumerate": cmd_enumerate,
    "reduce": cmd_reduce,
    "apply": cmd_apply,
    "sweep": cmd_sweep,
    "check-pentagon": cmd_check_pentagon,
    "check-hexagon": cmd_check_hexagon,
    "solve-degree2": cmd_solve_degree2,
    "properties": cmd_properties,
    "certify-nonexistence": cmd_certify,
}
