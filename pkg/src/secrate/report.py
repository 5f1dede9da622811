"""Full assessment report: panel gate, weights, per-system scores, ranking.

The report sequence is fixed: the expert panel is checked for concordance
first, and only an adequate (or explicitly forced) panel proceeds to
weighting and scoring.  Everything here is a pure function of the project
contents and the flags, so identical inputs render byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import __version__
from .concordance import ConcordanceReport, concordance
from .model import AssessmentProject, ProjectError
from .scoring import (
    average_score,
    build_score_function,
    comprehensive_score,
    degree_of_security,
    membership_security,
)
from .weighting import WeightVector, prioritize


def fmt(value: float) -> str:
    """Render a number with six significant digits for text output."""
    return f"{value:.6g}"


@dataclass(frozen=True)
class SystemScores:
    """Per-method scores of one system; ``None`` marks missing inputs."""

    system_id: str
    membership: float | None
    degree: float | None
    comprehensive: float | None


@dataclass(frozen=True)
class Report:
    project_id: str
    tool_version: str
    threshold: float
    forced: bool
    concordance: ConcordanceReport
    weights: WeightVector | None
    systems: tuple[SystemScores, ...]
    ranking: tuple[tuple[str, float], ...]

    @property
    def gate_passed(self) -> bool:
        return self.concordance.adequate

    @property
    def exit_code(self) -> int:
        return 0 if (self.gate_passed or self.forced) else 2

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "project": self.project_id,
            "tool_version": self.tool_version,
            "threshold": self.threshold,
            "forced": self.forced,
            "concordance": {
                "characteristics": list(self.concordance.characteristics),
                "rank_sums": list(self.concordance.rank_sums),
                "r_total": self.concordance.r_total,
                "r_avg": self.concordance.r_avg,
                "deviations": list(self.concordance.deviations),
                "s_sq": self.concordance.s_sq,
                "w": self.concordance.w,
                "adequate": self.concordance.adequate,
            },
            "verdict": "ADEQUATE" if self.gate_passed else "INADEQUATE",
        }
        if self.weights is not None:
            data["weights"] = {
                "characteristics": list(self.weights.characteristics),
                "b": list(self.weights.b),
                "phi": list(self.weights.phi),
                "b2": list(self.weights.b2),
                "w": list(self.weights.w),
            }
            data["systems"] = [
                {
                    "system": s.system_id,
                    "membership": s.membership,
                    "degree": s.degree,
                    "comprehensive": s.comprehensive,
                }
                for s in self.systems
            ]
            data["ranking"] = [
                {"system": sid, "score": score} for sid, score in self.ranking
            ]
        return data


def _score_systems(project: AssessmentProject, weights: WeightVector) -> list[SystemScores]:
    functions = {c.id: build_score_function(c) for c in project.characteristics}
    results = []
    for system in project.systems:
        membership = None
        if system.memberships:
            membership = membership_security(
                list(system.memberships.values()), project.config.membership_mode)

        # The degree method needs a per-characteristic score for the system;
        # the mean of the score function over the achieved interval serves.
        degree = None
        if all(c.id in system.intervals for c in project.characteristics):
            g = [
                average_score(functions[c.id], *system.intervals[c.id])
                for c in project.characteristics
            ]
            degree = degree_of_security(list(weights.w), g)

        comp = None
        if project.n >= 3 and all(c.id in system.intervals for c in project.characteristics):
            comp = comprehensive_score(project, system, weights).s_star

        results.append(SystemScores(
            system_id=system.id, membership=membership,
            degree=degree, comprehensive=comp,
        ))
    return results


def build_report(
    project: AssessmentProject,
    threshold: float | None = None,
    force: bool = False,
) -> Report:
    """Assemble the report, gating on panel concordance first.

    With an inadequate panel and ``force`` unset, the weighting and scoring
    sections stay empty and the report's exit code is 2.
    """
    if project.ranks is None:
        raise ProjectError(
            f"project '{project.id}' has no rank table; the panel cannot be "
            f"validated and no report can be produced")
    gate_threshold = project.config.threshold if threshold is None else threshold
    conc = concordance(project.ranks, threshold=gate_threshold)

    weights = None
    systems: tuple[SystemScores, ...] = ()
    ranking: tuple[tuple[str, float], ...] = ()
    if conc.adequate or force:
        weights = prioritize(
            project.characteristic_ids, project.experts, project.judgments,
            project.config.aggregation)
        scored = _score_systems(project, weights)
        systems = tuple(scored)
        ranking = tuple(sorted(
            ((s.system_id, s.comprehensive) for s in scored if s.comprehensive is not None),
            key=lambda item: (-item[1], item[0]),
        ))

    return Report(
        project_id=project.id,
        tool_version=__version__,
        threshold=gate_threshold,
        forced=force,
        concordance=conc,
        weights=weights,
        systems=systems,
        ranking=ranking,
    )


def render_table(headers: list[str], rows: list[list[str]], indent: str = "  ") -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [indent + "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append(indent + "  ".join(
            cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return lines


def render_report_text(report: Report) -> str:
    conc = report.concordance
    lines = [
        f"project: {report.project_id}",
        f"tool: secrate {report.tool_version}",
        "",
        "panel concordance",
    ]
    lines += render_table(
        ["characteristic", "rank sum", "deviation"],
        [[cid, str(rs), fmt(d)]
         for cid, rs, d in zip(conc.characteristics, conc.rank_sums, conc.deviations)],
    )
    lines += [
        f"  total rank sum: {conc.r_total}",
        f"  average rank sum: {fmt(conc.r_avg)}",
        f"  sum of squared deviations: {fmt(conc.s_sq)}",
        f"  coefficient: {fmt(conc.w)}",
        f"  threshold: {fmt(report.threshold)}",
        f"  verdict: {'ADEQUATE' if conc.adequate else 'INADEQUATE'}",
    ]

    if report.weights is None:
        lines += ["", "panel inadequate: weighting and scoring skipped"]
        return "\n".join(lines) + "\n"
    if report.forced and not conc.adequate:
        lines += ["", "panel inadequate: proceeding anyway (forced)"]

    wv = report.weights
    lines += ["", "importance weights"]
    lines += render_table(
        ["characteristic", "b", "phi", "b2", "w"],
        [[cid, fmt(b), fmt(phi), fmt(b2), fmt(w)]
         for cid, b, phi, b2, w in zip(wv.characteristics, wv.b, wv.phi, wv.b2, wv.w)],
    )

    if report.systems:
        lines += ["", "system scores"]
        lines += render_table(
            ["system", "membership", "degree", "comprehensive"],
            [[s.system_id,
              fmt(s.membership) if s.membership is not None else "n/a",
              fmt(s.degree) if s.degree is not None else "n/a",
              fmt(s.comprehensive) if s.comprehensive is not None else "n/a"]
             for s in report.systems],
        )

    if report.ranking:
        lines += ["", "ranking"]
        for place, (sid, score) in enumerate(report.ranking, start=1):
            lines.append(f"  {place}. {sid}  {fmt(score)}")

    return "\n".join(lines) + "\n"


def render_report_csv(report: Report) -> str:
    """Long-format CSV: one row per reported quantity."""
    rows = [("section", "item", "field", "value")]
    rows.append(("meta", report.project_id, "tool_version", report.tool_version))
    rows.append(("meta", report.project_id, "threshold", repr(report.threshold)))
    conc = report.concordance
    for cid, rs, d in zip(conc.characteristics, conc.rank_sums, conc.deviations):
        rows.append(("concordance", cid, "rank_sum", repr(rs)))
        rows.append(("concordance", cid, "deviation", repr(d)))
    rows.append(("concordance", "panel", "s_sq", repr(conc.s_sq)))
    rows.append(("concordance", "panel", "w", repr(conc.w)))
    rows.append(("concordance", "panel", "verdict",
                 "ADEQUATE" if conc.adequate else "INADEQUATE"))
    if report.weights is not None:
        wv = report.weights
        for cid, b, phi, b2, w in zip(wv.characteristics, wv.b, wv.phi, wv.b2, wv.w):
            rows.append(("weights", cid, "b", repr(b)))
            rows.append(("weights", cid, "phi", repr(phi)))
            rows.append(("weights", cid, "b2", repr(b2)))
            rows.append(("weights", cid, "w", repr(w)))
        for s in report.systems:
            for label, value in (("membership", s.membership), ("degree", s.degree),
                                 ("comprehensive", s.comprehensive)):
                rows.append(("scores", s.system_id, label,
                             repr(value) if value is not None else ""))
        for place, (sid, score) in enumerate(report.ranking, start=1):
            rows.append(("ranking", sid, str(place), repr(score)))
    return "\n".join(",".join(row) for row in rows) + "\n"
