"""Command-line front end.

Subcommands cover the whole pipeline: panel validation, weighting, scoring,
system comparison, damage estimation, campaign efficiency, attack trees,
concordance curves, the combined report, and figure export.  Exit codes are
a fixed contract: 0 success, 1 input error, 2 inadequate expert panel.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .attack import (
    AttackModelError,
    ZombieCampaign,
    build_attack_tree,
    count_scenarios,
    enumerate_scenarios,
    load_catalog,
    zombie_efficiency,
)
from .concordance import ConcordanceError, concordance, concordance_grid
from .damage import (
    DamageError,
    DamageInput,
    DamageVariant,
    TanhParams,
    coefficients_piecewise,
    coefficients_tanh,
    damage_grid,
)
from .model import ProjectError, load_project, validate_project
from .plots import export_curves_files, export_damage_files
from .report import build_report, fmt, render_report_csv, render_report_text, render_table
from .scoring import (
    ScoringError,
    average_score,
    build_score_function,
    compare_systems,
    comprehensive_score,
    degree_of_security,
    membership_security,
)
from .weighting import WeightingError, prioritize

FORMATS = ("text", "json", "csv")
FORMAT_ENV = "SECRATE_FORMAT"

DEFAULT_S_SPEC = "0:2000:41"
DEFAULT_V_SPEC = "1:1e7:log15"
DEFAULT_N_SPEC = "2..10"
DEFAULT_M_SPEC = "1..10"

_ERRORS = (ProjectError, WeightingError, ConcordanceError, ScoringError,
           DamageError, AttackModelError)


class CliError(ValueError):
    """Invalid command line or unusable input; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise CliError(message)


def _default_format() -> str:
    value = os.environ.get(FORMAT_ENV, "text")
    if value not in FORMATS:
        raise CliError(
            f"{FORMAT_ENV}={value!r} is not a valid format (expected one of {FORMATS})")
    return value


def parse_points(spec: str) -> list[float]:
    """Parse a point spec: a single value, ``start:stop:count`` (linear) or
    ``start:stop:logCOUNT`` (log-spaced)."""
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop = float(parts[0]), float(parts[1])
        tail = parts[2]
        if tail.lower().startswith("log"):
            count = int(tail[3:])
            if count < 1:
                raise ValueError
            if start <= 0 or stop <= 0:
                raise CliError(f"log-spaced range '{spec}' needs positive endpoints")
            values = np.logspace(math.log10(start), math.log10(stop), count)
        else:
            count = int(tail)
            if count < 1:
                raise ValueError
            values = np.linspace(start, stop, count)
        return [float(x) for x in values]
    except CliError:
        raise
    except ValueError:
        raise CliError(
            f"bad range '{spec}' (expected VALUE, START:STOP:COUNT or "
            f"START:STOP:logCOUNT)") from None


def parse_int_range(spec: str) -> list[int]:
    """Parse an integer range ``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in spec:
            low_text, high_text = spec.split("..", 1)
            low, high = int(low_text), int(high_text)
            if high < low:
                raise ValueError
            return list(range(low, high + 1))
        return [int(spec)]
    except ValueError:
        raise CliError(f"bad integer range '{spec}' (expected N or A..B)") from None


def _emit_csv(header: list[str], rows: list[list[object]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit_json(data: object) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _load_checked(path: str):
    project = load_project(path, strict=False)
    problems = validate_project(project)
    return project, problems


def _cmd_validate(args) -> int:
    project, problems = _load_checked(args.project)
    if problems:
        for p in problems:
            print(f"diagnostic: {p}", file=sys.stderr)
        return 1
    if project.ranks is None:
        raise CliError(f"project '{project.id}' has no rank table to validate")
    threshold = args.threshold if args.threshold is not None else project.config.threshold
    conc = concordance(project.ranks, threshold=threshold)
    verdict = "ADEQUATE" if conc.adequate else "INADEQUATE"

    if args.format == "json":
        _emit_json({
            "project": project.id,
            "characteristics": list(conc.characteristics),
            "rank_sums": list(conc.rank_sums),
            "r_total": conc.r_total,
            "r_avg": conc.r_avg,
            "deviations": list(conc.deviations),
            "s_sq": conc.s_sq,
            "w": conc.w,
            "threshold": conc.threshold,
            "verdict": verdict,
        })
    elif args.format == "csv":
        rows: list[list[object]] = [
            ["concordance", cid, "rank_sum", rs]
            for cid, rs in zip(conc.characteristics, conc.rank_sums)
        ]
        rows += [
            ["concordance", cid, "deviation", d]
            for cid, d in zip(conc.characteristics, conc.deviations)
        ]
        rows += [
            ["concordance", "panel", "s_sq", conc.s_sq],
            ["concordance", "panel", "w", conc.w],
            ["concordance", "panel", "threshold", conc.threshold],
            ["concordance", "panel", "verdict", verdict],
        ]
        _emit_csv(["section", "item", "field", "value"], rows)
    else:
        print(f"project: {project.id}")
        print("panel concordance")
        for line in render_table(
            ["characteristic", "rank sum", "deviation"],
            [[cid, str(rs), fmt(d)] for cid, rs, d
             in zip(conc.characteristics, conc.rank_sums, conc.deviations)],
        ):
            print(line)
        print(f"  total rank sum: {conc.r_total}")
        print(f"  sum of squared deviations: {fmt(conc.s_sq)}")
        print(f"  coefficient: {fmt(conc.w)}")
        print(f"  threshold: {fmt(conc.threshold)}")
        print(f"  verdict: {verdict}")
    return 0 if conc.adequate else 2


def _cmd_weigh(args) -> int:
    project = load_project(args.project)
    weights = prioritize(project.characteristic_ids, project.experts,
                         project.judgments, project.config.aggregation)
    if args.format == "json":
        _emit_json({
            "project": project.id,
            "characteristics": list(weights.characteristics),
            "b": list(weights.b),
            "phi": list(weights.phi),
            "b2": list(weights.b2),
            "w": list(weights.w),
        })
    elif args.format == "csv":
        _emit_csv(
            ["characteristic", "b", "phi", "b2", "w"],
            [[cid, b, phi, b2, w] for cid, b, phi, b2, w
             in zip(weights.characteristics, weights.b, weights.phi,
                    weights.b2, weights.w)],
        )
    else:
        print(f"project: {project.id}")
        print("importance weights")
        for line in render_table(
            ["characteristic", "b", "phi", "b2", "w"],
            [[cid, fmt(b), fmt(phi), fmt(b2), fmt(w)] for cid, b, phi, b2, w
             in zip(weights.characteristics, weights.b, weights.phi,
                    weights.b2, weights.w)],
        ):
            print(line)
    return 0


def _score_rows(project, method: str, systems) -> list[tuple[str, float | None]]:
    if method == "membership":
        rows = []
        for s in systems:
            value = None
            if s.memberships:
                value = membership_security(
                    list(s.memberships.values()), project.config.membership_mode)
            rows.append((s.id, value))
        return rows

    weights = prioritize(project.characteristic_ids, project.experts,
                         project.judgments, project.config.aggregation)
    functions = {c.id: build_score_function(c) for c in project.characteristics}
    rows = []
    for s in systems:
        covered = all(c.id in s.intervals for c in project.characteristics)
        value = None
        if covered and method == "degree":
            g = [average_score(functions[c.id], *s.intervals[c.id])
                 for c in project.characteristics]
            value = degree_of_security(list(weights.w), g)
        elif covered and method == "comprehensive":
            value = comprehensive_score(project, s, weights).s_star
        rows.append((s.id, value))
    return rows


def _cmd_score(args) -> int:
    project = load_project(args.project)
    if args.method == "comprehensive" and project.n < 3:
        raise CliError(
            f"comprehensive method requires N >= 3 characteristics (got {project.n})")
    if args.system is not None:
        try:
            systems = [project.system(args.system)]
        except KeyError:
            raise CliError(f"unknown system '{args.system}'") from None
    else:
        systems = list(project.systems)
    if not systems:
        raise CliError(f"project '{project.id}' defines no systems")

    rows = _score_rows(project, args.method, systems)
    if args.system is not None and rows[0][1] is None:
        raise CliError(
            f"system '{args.system}' lacks the inputs for method '{args.method}'")

    if args.format == "json":
        _emit_json({
            "project": project.id,
            "method": args.method,
            "scores": [{"system": sid, "value": value} for sid, value in rows],
        })
    elif args.format == "csv":
        _emit_csv(["system", "method", "value"],
                  [[sid, args.method, value if value is not None else ""]
                   for sid, value in rows])
    else:
        print(f"project: {project.id}")
        print(f"method: {args.method}")
        for line in render_table(
            ["system", "score"],
            [[sid, fmt(value) if value is not None else "n/a"] for sid, value in rows],
        ):
            print(line)
    return 0


def _cmd_compare(args) -> int:
    project = load_project(args.project)
    weights = prioritize(project.characteristic_ids, project.experts,
                         project.judgments, project.config.aggregation)
    ranking = compare_systems(project, weights)
    if args.format == "json":
        _emit_json({
            "project": project.id,
            "ranking": [{"system": sid, "score": score} for sid, score in ranking],
        })
    elif args.format == "csv":
        _emit_csv(["rank", "system", "score"],
                  [[i, sid, score] for i, (sid, score) in enumerate(ranking, start=1)])
    else:
        print(f"project: {project.id}")
        print("ranking by comprehensive score")
        for i, (sid, score) in enumerate(ranking, start=1):
            print(f"  {i}. {sid}  {fmt(score)}")
    return 0


def _tanh_params(args) -> TanhParams:
    if getattr(args, "v_scale", None) is not None:
        return TanhParams(v_scale=args.v_scale)
    return TanhParams()


def _cmd_damage(args) -> int:
    inp = DamageInput(s=args.s, v=args.v)
    variant = DamageVariant(args.variant)
    if variant is DamageVariant.PIECEWISE:
        coef = coefficients_piecewise(inp)
    else:
        coef = coefficients_tanh(inp, _tanh_params(args))
    if args.format == "json":
        _emit_json({"s": inp.s, "v": inp.v, "variant": variant.value,
                    "s_coef": coef.s_coef, "v_coef": coef.v_coef, "r": coef.r})
    elif args.format == "csv":
        _emit_csv(["s", "v", "variant", "s_coef", "v_coef", "r"],
                  [[inp.s, inp.v, variant.value, coef.s_coef, coef.v_coef, coef.r]])
    else:
        print(f"variant: {variant.value}")
        print(f"s_coef = {fmt(coef.s_coef)}")
        print(f"v_coef = {fmt(coef.v_coef)}")
        print(f"r = {fmt(coef.r)}")
    return 0


def _cmd_damage_grid(args) -> int:
    s_points = parse_points(args.s)
    v_points = parse_points(args.v)
    rows = damage_grid(s_points, v_points, _tanh_params(args))
    if args.format == "json":
        _emit_json([
            {"s": r.s, "v": r.v, "r_piecewise": r.r_piecewise, "r_tanh": r.r_tanh}
            for r in rows
        ])
    elif args.format == "csv":
        _emit_csv(["s", "v", "r_piecewise", "r_tanh"],
                  [[r.s, r.v, r.r_piecewise, r.r_tanh] for r in rows])
    else:
        for line in render_table(
            ["s", "v", "r_piecewise", "r_tanh"],
            [[fmt(r.s), fmt(r.v), fmt(r.r_piecewise), fmt(r.r_tanh)] for r in rows],
            indent="",
        ):
            print(line)
    return 0


def _cmd_zombie(args) -> int:
    campaign = ZombieCampaign(n=args.n, s=args.s, dt=args.dt, c=args.cost)
    e = zombie_efficiency(campaign)
    if args.format == "json":
        _emit_json({"n": campaign.n, "s": campaign.s, "dt": campaign.dt,
                    "cost": campaign.c, "efficiency": e})
    elif args.format == "csv":
        _emit_csv(["n", "s", "dt", "cost", "efficiency"],
                  [[campaign.n, campaign.s, campaign.dt, campaign.c, e]])
    else:
        print(f"efficiency = {fmt(e)} per second per money unit")
    return 0


def _cmd_attack_tree(args) -> int:
    catalog = load_catalog(args.catalog)
    tree = build_attack_tree(catalog, args.goal)
    total = count_scenarios(tree)

    if args.format == "json":
        data = {
            "goal": tree.goal_id,
            "object": tree.object,
            "purpose": tree.purpose,
            "offender": dict(sorted(tree.offender.items())),
            "sub_targets": [
                {"id": st.id, "stage": st.stage, "actions": [a.id for a in st.actions]}
                for st in tree.sub_targets
            ],
            "scenario_count": total,
        }
        if args.enumerate:
            data["scenarios"] = [
                [a.id for a in scenario] for scenario in enumerate_scenarios(tree)
            ]
        _emit_json(data)
    elif args.format == "csv":
        if args.enumerate:
            _emit_csv(["scenario", "actions"],
                      [[i, "|".join(a.id for a in scenario)]
                       for i, scenario in enumerate(enumerate_scenarios(tree), start=1)])
        else:
            _emit_csv(["sub_target", "stage", "alternatives"],
                      [[st.id, st.stage, "|".join(a.id for a in st.actions)]
                       for st in tree.sub_targets])
    else:
        print(f"goal: {tree.goal_id} (object: {tree.object or 'n/a'}, "
              f"purpose: {tree.purpose or 'n/a'})")
        if tree.offender:
            meta = " ".join(f"{k}={v}" for k, v in sorted(tree.offender.items()))
            print(f"offender: {meta}")
        print("sub-targets:")
        for st in tree.sub_targets:
            print(f"  {st.id} [{st.stage}]: " + " | ".join(a.id for a in st.actions))
        print(f"scenarios: {total}")
        if args.enumerate:
            for scenario in enumerate_scenarios(tree):
                print("  " + " -> ".join(a.id for a in scenario))
    return 0


def _cmd_curves(args) -> int:
    points = concordance_grid(args.s, parse_int_range(args.n), parse_int_range(args.m))
    if args.format == "json":
        _emit_json([
            {"n": p.n, "m": p.m, "w": p.w, "clamped": p.clamped} for p in points
        ])
    elif args.format == "csv":
        _emit_csv(["n", "m", "w"], [[p.n, p.m, p.w] for p in points])
    else:
        for line in render_table(
            ["n", "m", "w", "clamped"],
            [[str(p.n), str(p.m), fmt(p.w), "yes" if p.clamped else ""] for p in points],
            indent="",
        ):
            print(line)
    return 0


def _cmd_report(args) -> int:
    project = load_project(args.project)
    report = build_report(project, threshold=args.threshold, force=args.force)

    if args.format == "json":
        _emit_json(report.to_dict())
    elif args.format == "csv":
        sys.stdout.write(render_report_csv(report))
    else:
        sys.stdout.write(render_report_text(report))

    if args.plots is not None and report.exit_code == 0:
        out_dir = Path(args.plots)
        written = export_damage_files(
            parse_points(DEFAULT_S_SPEC), parse_points(DEFAULT_V_SPEC), out_dir)
        written += export_curves_files(
            report.concordance.s_sq,
            parse_int_range(DEFAULT_N_SPEC), parse_int_range(DEFAULT_M_SPEC), out_dir)
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return report.exit_code


def _cmd_export_plots(args) -> int:
    out_dir = Path(args.out)
    if args.kind == "fig2":
        written = export_damage_files(
            parse_points(args.s), parse_points(args.v), out_dir, _tanh_params(args))
    else:
        s_sq = args.s_sq
        if s_sq is None:
            project = load_project(args.project)
            if project.ranks is None:
                raise CliError(
                    "fig3 needs --s-sq or a project with a rank table")
            s_sq = concordance(project.ranks).s_sq
        written = export_curves_files(
            s_sq, parse_int_range(args.n), parse_int_range(args.m), out_dir)
    for path in written:
        print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=_default_format(),
                        help="output format (default: text, or $SECRATE_FORMAT)")
    common.add_argument("--force", action="store_true",
                        help="proceed past an inadequate expert panel")
    common.add_argument("--threshold", type=float, default=None,
                        help="panel adequacy threshold (default: project config)")

    parser = _Parser(prog="secrate",
                     description="Security rating metrics for distributed systems.")
    parser.add_argument("--version", action="version", version=f"secrate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common],
                       help="check project invariants and panel concordance")
    p.add_argument("project")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("weigh", parents=[common],
                       help="derive importance weights from pairwise judgments")
    p.add_argument("project")
    p.set_defaults(handler=_cmd_weigh)

    p = sub.add_parser("score", parents=[common], help="score systems by one method")
    p.add_argument("project")
    p.add_argument("--method", required=True,
                   choices=["membership", "degree", "comprehensive"])
    p.add_argument("--system", default=None, help="score a single system")
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("compare", parents=[common],
                       help="rank systems by comprehensive score")
    p.add_argument("project")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("damage", parents=[common], help="expected damage for one threat")
    p.add_argument("--s", type=float, required=True, help="attacks per year")
    p.add_argument("--v", type=float, required=True, help="loss in money units (>= 1)")
    p.add_argument("--variant", choices=["piecewise", "tanh"], default="tanh")
    p.add_argument("--v-scale", type=float, default=None,
                   help="loss divisor of the tanh variant (default 5e5)")
    p.set_defaults(handler=_cmd_damage)

    p = sub.add_parser("damage-grid", parents=[common],
                       help="damage surface over attack-rate and loss grids")
    p.add_argument("--s", default=DEFAULT_S_SPEC,
                   help="attack-rate points as START:STOP:COUNT or START:STOP:logCOUNT")
    p.add_argument("--v", default=DEFAULT_V_SPEC, help="loss points, same syntax")
    p.add_argument("--v-scale", type=float, default=None)
    p.set_defaults(handler=_cmd_damage_grid)

    p = sub.add_parser("zombie", parents=[common], help="campaign efficiency")
    p.add_argument("--n", type=int, required=True, help="servers attacked")
    p.add_argument("--s", type=int, required=True, help="computers per server")
    p.add_argument("--dt", type=float, required=True, help="controlled-state time (s)")
    p.add_argument("--cost", type=float, required=True, help="campaign cost")
    p.set_defaults(handler=_cmd_zombie)

    p = sub.add_parser("attack-tree", parents=[common],
                       help="build an attack tree from a catalog")
    p.add_argument("catalog")
    p.add_argument("--goal", required=True)
    p.add_argument("--enumerate", action="store_true",
                   help="list every scenario (Cartesian product of alternatives)")
    p.set_defaults(handler=_cmd_attack_tree)

    p = sub.add_parser("curves", parents=[common],
                       help="concordance coefficient over panel shapes")
    p.add_argument("--s", type=float, required=True,
                   help="sum of squared rank deviations")
    p.add_argument("--n", default=DEFAULT_N_SPEC, help="characteristic counts, A..B")
    p.add_argument("--m", default=DEFAULT_M_SPEC, help="expert counts, A..B")
    p.set_defaults(handler=_cmd_curves)

    p = sub.add_parser("report", parents=[common],
                       help="full report: panel gate, weights, scores, ranking")
    p.add_argument("project")
    p.add_argument("--plots", default=None, metavar="DIR",
                   help="also export figure CSV+PNG files into DIR")
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("export-plots", parents=[common],
                       help="write figure data (CSV) and renderings (PNG)")
    p.add_argument("project")
    p.add_argument("--kind", required=True, choices=["fig2", "fig3"])
    p.add_argument("--out", default=".", metavar="DIR")
    p.add_argument("--s", default=DEFAULT_S_SPEC, help="fig2: attack-rate points")
    p.add_argument("--v", default=DEFAULT_V_SPEC, help="fig2: loss points")
    p.add_argument("--v-scale", type=float, default=None)
    p.add_argument("--s-sq", type=float, default=None,
                   help="fig3: sum of squared deviations (default: from project ranks)")
    p.add_argument("--n", default=DEFAULT_N_SPEC, help="fig3: characteristic counts")
    p.add_argument("--m", default=DEFAULT_M_SPEC, help="fig3: expert counts")
    p.set_defaults(handler=_cmd_export_plots)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
