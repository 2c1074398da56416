"""Command-line surface.

Subcommands: classify, check, wsd, lift, gen, dichotomic.  Exit codes:
0 on success, 2 on any input problem (missing file, parse error, bad
dimensions), and 3 when a proven equivalence between the independent
supportedness tests fails - code 3 signals a bug in this package, not
a property of the instance.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .classify import (
    CrossCheckReport,
    Label,
    classify_all,
    cross_check,
)
from .dichotomic import dichotomic_extremes
from .errors import ConsistencyError, ValidationError
from .instances import (
    Instance,
    enumerate_instance,
    generate_assignment,
    generate_knapsack,
    generate_points,
    lift_zero_objective,
    parse_instance,
    serialize_instance,
)
from .outcomes import OutcomeSet
from .ratlp import format_rational
from .render import svg_objective_space, svg_weight_space
from .weightspace import WeightCell, cell_interval, decompose

LABEL_ORDER = (
    Label.EXTREME_SUPPORTED,
    Label.SUPPORTED,
    Label.WEAKLY_SUPPORTED_ONLY,
    Label.UNSUPPORTED,
    Label.DOMINATED,
)


@dataclass(frozen=True)
class ReportRow:
    point_id: str
    coords: tuple[Fraction, ...]
    multiplicity: int
    label: str
    frontier: bool
    boundary: bool
    weak_witness: Optional[tuple[Fraction, ...]]
    strict_witness: Optional[tuple[Fraction, ...]]


@dataclass(frozen=True)
class Report:
    """Classification report: digest, per-point rows, cross-check
    verdicts and timing.  Digest counts always equal the row tallies."""

    objectives: int
    point_count: int
    label_counts: Mapping[str, int]
    rows: tuple[ReportRow, ...]
    checks: CrossCheckReport
    elapsed_seconds: float

    def __post_init__(self):
        tally: dict[str, int] = {}
        for row in self.rows:
            tally[row.label] = tally.get(row.label, 0) + 1
        if tally != dict(self.label_counts):
            raise ConsistencyError("report digest disagrees with its rows")


def build_report(outcome_set: OutcomeSet) -> Report:
    start = time.perf_counter()
    classifications = classify_all(outcome_set)
    checks = cross_check(outcome_set)
    elapsed = time.perf_counter() - start
    rows = []
    counts: dict[str, int] = {}
    for c in classifications:
        pt = outcome_set.get(c.point_id)
        counts[c.label.value] = counts.get(c.label.value, 0) + 1
        rows.append(
            ReportRow(
                point_id=c.point_id,
                coords=pt.coords,
                multiplicity=outcome_set.multiplicity[c.point_id],
                label=c.label.value,
                frontier=c.frontier,
                boundary=c.boundary,
                weak_witness=None if c.weak_witness is None else c.weak_witness.values,
                strict_witness=None
                if c.strict_witness is None
                else c.strict_witness.values,
            )
        )
    return Report(
        objectives=outcome_set.p,
        point_count=len(outcome_set),
        label_counts=counts,
        rows=tuple(rows),
        checks=checks,
        elapsed_seconds=elapsed,
    )


def _vector_json(vec):
    return None if vec is None else [format_rational(v) for v in vec]


def report_to_json(report: Report) -> dict:
    return {
        "digest": {
            "objectives": report.objectives,
            "points": report.point_count,
            "counts": {
                label.value: report.label_counts.get(label.value, 0)
                for label in LABEL_ORDER
            },
        },
        "points": [
            {
                "id": row.point_id,
                "coords": _vector_json(row.coords),
                "multiplicity": row.multiplicity,
                "label": row.label,
                "frontier": row.frontier,
                "boundary": row.boundary,
                "weak_witness": _vector_json(row.weak_witness),
                "strict_witness": _vector_json(row.strict_witness),
            }
            for row in report.rows
        ],
        "cross_check": cross_check_to_json(report.checks),
        "elapsed_seconds": round(report.elapsed_seconds, 6),
    }


def cross_check_to_json(checks: CrossCheckReport) -> dict:
    return {
        "all_ok": checks.all_ok,
        "points": [
            {
                "id": c.point_id,
                "weakly_supported": c.weakly_supported,
                "on_boundary": c.on_boundary,
                "supported": c.supported,
                "on_frontier": c.on_frontier,
                "boundary_equivalence_ok": c.boundary_equivalence_ok,
                "frontier_equivalence_ok": c.frontier_equivalence_ok,
                "biobjective_collapse_ok": c.biobjective_collapse_ok,
            }
            for c in checks.checks
        ],
    }


def _coords_str(coords) -> str:
    return "(" + ", ".join(str(format_rational(c)) for c in coords) + ")"


def _witness_str(vec) -> str:
    return "-" if vec is None else _coords_str(vec)


def report_to_table(report: Report) -> str:
    lines = [
        f"instance: {report.objectives} objectives, {report.point_count} points"
    ]
    digest = ", ".join(
        f"{label.value}={report.label_counts.get(label.value, 0)}"
        for label in LABEL_ORDER
        if report.label_counts.get(label.value)
    )
    lines.append(f"counts: {digest}")
    header = ("id", "coords", "label", "frontier", "boundary", "weak", "strict")
    table = [header]
    for row in report.rows:
        table.append(
            (
                row.point_id,
                _coords_str(row.coords),
                row.label,
                "yes" if row.frontier else "no",
                "yes" if row.boundary else "no",
                _witness_str(row.weak_witness),
                _witness_str(row.strict_witness),
            )
        )
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    verdict = "all equivalences hold" if report.checks.all_ok else "VIOLATIONS FOUND"
    lines.append(f"cross-check: {verdict} ({len(report.checks.checks)} points)")
    lines.append(f"elapsed: {report.elapsed_seconds:.3f}s")
    return "\n".join(lines) + "\n"


def cross_check_to_table(checks: CrossCheckReport) -> str:
    lines = []
    for c in checks.checks:
        collapse = (
            "-" if c.biobjective_collapse_ok is None
            else ("ok" if c.biobjective_collapse_ok else "FAIL")
        )
        lines.append(
            f"{c.point_id}: weight-witness={'yes' if c.weakly_supported else 'no'} "
            f"boundary={'yes' if c.on_boundary else 'no'} "
            f"[{'ok' if c.boundary_equivalence_ok else 'FAIL'}]  "
            f"positive-witness={'yes' if c.supported else 'no'} "
            f"frontier={'yes' if c.on_frontier else 'no'} "
            f"[{'ok' if c.frontier_equivalence_ok else 'FAIL'}]  "
            f"biobjective-collapse=[{collapse}]"
        )
    lines.append(
        "verdict: PASS" if checks.all_ok else "verdict: FAIL (implementation bug)"
    )
    return "\n".join(lines) + "\n"


def wsd_to_json(cells: Sequence[WeightCell], p: int) -> dict:
    doc_cells = []
    for cell in cells:
        entry = {
            "id": cell.point_id,
            "full_dimensional": cell.is_full_dimensional,
            "hrep": [
                {
                    "coeffs": _vector_json(con.coeffs),
                    "relation": con.relation,
                    "rhs": format_rational(con.rhs),
                }
                for con in cell.hrep
            ],
            "projected_vertices": None
            if cell.projected_vertices is None
            else [_vector_json(v) for v in cell.projected_vertices],
        }
        if p == 2:
            interval = cell_interval(cell)
            entry["interval"] = None if interval is None else _vector_json(interval)
        doc_cells.append(entry)
    return {"objectives": p, "cells": doc_cells}


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _load_outcomes(path: str) -> OutcomeSet:
    return enumerate_instance(_load_instance(path))


def _json_dumps(doc) -> str:
    import json

    return json.dumps(doc, indent=2) + "\n"


def _cmd_classify(args) -> int:
    outcomes = _load_outcomes(args.path)
    report = build_report(outcomes)
    if args.format == "json":
        _write_text(None, _json_dumps(report_to_json(report)))
    else:
        _write_text(None, report_to_table(report))
    if args.svg:
        if outcomes.p == 2:
            classifications = classify_all(outcomes)
            _write_text(args.svg, svg_objective_space(outcomes, classifications))
        else:
            print(
                f"note: objective-space figure needs 2 objectives, instance has "
                f"{outcomes.p}; no SVG written",
                file=sys.stderr,
            )
    return 0 if report.checks.all_ok else 3


def _cmd_check(args) -> int:
    outcomes = _load_outcomes(args.path)
    checks = cross_check(outcomes)
    if args.format == "json":
        _write_text(None, _json_dumps(cross_check_to_json(checks)))
    else:
        _write_text(None, cross_check_to_table(checks))
    return 0 if checks.all_ok else 3


def _cmd_wsd(args) -> int:
    outcomes = _load_outcomes(args.path)
    cells = decompose(outcomes)
    _write_text(args.out, _json_dumps(wsd_to_json(cells, outcomes.p)))
    if args.svg:
        if outcomes.p in (2, 3):
            _write_text(args.svg, svg_weight_space(cells, outcomes.p))
        else:
            print(
                f"note: weight-space figure needs 2 or 3 objectives, instance "
                f"has {outcomes.p}; no SVG written",
                file=sys.stderr,
            )
    return 0


def _cmd_lift(args) -> int:
    outcomes = _load_outcomes(args.path)
    _write_text(args.out, serialize_instance(lift_zero_objective(outcomes)))
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "knapsack":
        instance = generate_knapsack(args.size, args.objectives, args.seed)
    elif args.kind == "assignment":
        instance = generate_assignment(args.size, args.objectives, args.seed)
    else:
        instance = generate_points(args.size, args.objectives, args.seed)
    _write_text(args.out, serialize_instance(instance))
    return 0


def _cmd_dichotomic(args) -> int:
    outcomes = _load_outcomes(args.path)
    result = dichotomic_extremes(outcomes)
    if args.format == "json":
        doc = {
            "extremes": [
                {
                    "id": pt.id,
                    "coords": _vector_json(pt.coords),
                    "witness": _vector_json(lam.values),
                }
                for pt, lam in zip(result.extremes, result.witness_weights)
            ],
            "oracle_calls": result.oracle_calls,
        }
        _write_text(None, _json_dumps(doc))
    else:
        lines = [
            f"{pt.id}  {_coords_str(pt.coords)}  witness {_coords_str(lam.values)}"
            for pt, lam in zip(result.extremes, result.witness_weights)
        ]
        lines.append(f"extremes: {len(result.extremes)}, oracle calls: {result.oracle_calls}")
        _write_text(None, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndsupport",
        description="Exact supportedness classification of finite outcome sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("table", "json"), default="table",
            help="output format (default: table)",
        )

    p_classify = sub.add_parser(
        "classify", help="label every point of an instance"
    )
    p_classify.add_argument("path", help="instance file (explicit set or spec)")
    add_format(p_classify)
    p_classify.add_argument(
        "--svg", metavar="PATH", help="also draw the bi-objective outcome plot"
    )
    p_classify.set_defaults(func=_cmd_classify)

    p_check = sub.add_parser(
        "check", help="verify the proven equivalences between the tests"
    )
    p_check.add_argument("path")
    add_format(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_wsd = sub.add_parser(
        "wsd", help="weight-space decomposition document (and figure)"
    )
    p_wsd.add_argument("path")
    p_wsd.add_argument("--out", metavar="PATH", help="document path (default stdout)")
    p_wsd.add_argument("--svg", metavar="PATH", help="figure path (p = 2 or 3)")
    p_wsd.set_defaults(func=_cmd_wsd)

    p_lift = sub.add_parser(
        "lift", help="append a constant zero objective to an instance"
    )
    p_lift.add_argument("path")
    p_lift.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    p_lift.set_defaults(func=_cmd_lift)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance")
    p_gen.add_argument("kind", choices=("knapsack", "assignment", "points"))
    p_gen.add_argument("size", type=int, help="items / agents / point count")
    p_gen.add_argument(
        "objectives", type=int, nargs="?", default=2, help="objective count (default 2)"
    )
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    p_gen.set_defaults(func=_cmd_gen)

    p_dich = sub.add_parser(
        "dichotomic", help="bi-objective extreme points by dichotomic search"
    )
    p_dich.add_argument("path")
    add_format(p_dich)
    p_dich.set_defaults(func=_cmd_dichotomic)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    raise SystemExit(main())
