"""Core data model for security assessment projects.

An assessment project bundles everything one evaluation needs: the measured
characteristics with their expert score points, the expert panel, pairwise
importance judgments, an optional rank table, the assessed systems, and an
incident history.  Projects live in JSON files; :func:`load_project` parses
and cross-checks one, :func:`validate_project` reports every violated
invariant without raising.  All types are immutable records and every
operation here is a pure function, so loaded projects can be shared freely
across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

METHODS = ("membership", "degree", "comprehensive")

# Nominal panel-agreement threshold and the tolerated +/- 20 % band around it.
THRESHOLD_DEFAULT = 0.67
THRESHOLD_BAND = (0.536, 0.804)

# Comprehensive scoring is only meaningful from three characteristics up.
MIN_COMPREHENSIVE_CHARACTERISTICS = 3


class ProjectError(ValueError):
    """A project file failed to parse, resolve, or satisfy its invariants."""


class Relation(Enum):
    """Pairwise importance symbol assigned by a single expert."""

    GREATER = ">"
    EQUAL = "="
    LESS = "<"

    @classmethod
    def parse(cls, token: str) -> "Relation":
        normalized = str(token).strip().lower()
        aliases = {
            ">": cls.GREATER, "greater": cls.GREATER, "gt": cls.GREATER,
            "=": cls.EQUAL, "equal": cls.EQUAL, "eq": cls.EQUAL,
            "<": cls.LESS, "less": cls.LESS, "lt": cls.LESS,
        }
        if normalized not in aliases:
            raise ProjectError(f"unknown relation symbol {token!r} (expected '>', '=' or '<')")
        return aliases[normalized]

    def flipped(self) -> "Relation":
        if self is Relation.GREATER:
            return Relation.LESS
        if self is Relation.LESS:
            return Relation.GREATER
        return Relation.EQUAL


class AggregationRule(Enum):
    """How per-expert pair values reduce to one comparison-matrix entry."""

    SNAP = "snap"
    MEAN = "mean"


class MembershipMode(Enum):
    """Scalar reduction applied to a system's requirement memberships."""

    MEAN = "mean"
    MIN = "min"


@dataclass(frozen=True)
class Characteristic:
    """One assessed security parameter.

    ``x_min``/``x_av``/``x_max`` bound and subdivide the parameter's global
    feasible range; ``g_min``/``g_av``/``g_max`` are the expert scores
    sampled at those three points.  Units are carried as opaque labels.
    """

    id: str
    name: str
    unit: str
    x_min: float
    x_av: float
    x_max: float
    g_min: float
    g_av: float
    g_max: float


@dataclass(frozen=True)
class SystemProfile:
    """One assessed system: achieved value interval per characteristic.

    ``intervals`` maps a characteristic id to the ``(begin, end)`` sub-range
    the system actually achieves; ``memberships`` optionally maps security
    requirement names to satisfaction degrees in [0, 1].
    """

    id: str
    intervals: dict[str, tuple[float, float]]
    memberships: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class PairwiseJudgment:
    """One expert's importance comparison of two characteristics."""

    expert: str
    left: str
    right: str
    relation: Relation


@dataclass(frozen=True)
class RankTable:
    """Per-expert rankings of the characteristics.

    ``ranks`` maps an expert id to that expert's rank per characteristic id.
    Each row must be a strict permutation of 1..N: ties are rejected because
    the concordance statistic used downstream carries no tie correction.
    """

    characteristics: tuple[str, ...]
    experts: tuple[str, ...]
    ranks: dict[str, dict[str, int]]

    @property
    def n(self) -> int:
        return len(self.characteristics)

    @property
    def m(self) -> int:
        return len(self.experts)

    def row(self, expert: str) -> list[int]:
        """Ranks of one expert, in canonical characteristic order."""
        assigned = self.ranks[expert]
        return [assigned[cid] for cid in self.characteristics]


@dataclass(frozen=True)
class IncidentRecord:
    """One observed security breach with its monetary loss."""

    year: int
    loss: float


@dataclass(frozen=True)
class ProjectConfig:
    """Thresholds and mode switches for an assessment run."""

    aggregation: AggregationRule = AggregationRule.SNAP
    membership_mode: MembershipMode = MembershipMode.MEAN
    threshold: float = THRESHOLD_DEFAULT
    methods: tuple[str, ...] = ()


@dataclass(frozen=True)
class AssessmentProject:
    """A fully resolved assessment project.

    The order of ``characteristics`` is canonical: index positions 1..N used
    by the weighting, concordance and scoring operations all derive from it.
    """

    id: str
    characteristics: tuple[Characteristic, ...]
    experts: tuple[str, ...]
    judgments: tuple[PairwiseJudgment, ...]
    ranks: RankTable | None
    systems: tuple[SystemProfile, ...]
    incidents: tuple[IncidentRecord, ...]
    config: ProjectConfig

    @property
    def n(self) -> int:
        return len(self.characteristics)

    @property
    def characteristic_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.characteristics)

    def characteristic(self, cid: str) -> Characteristic:
        for c in self.characteristics:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def system(self, sid: str) -> SystemProfile:
        for s in self.systems:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready dictionary; round-trips through :func:`loads_project`."""
        data: dict[str, Any] = {
            "id": self.id,
            "characteristics": [
                {
                    "id": c.id,
                    "name": c.name,
                    "unit": c.unit,
                    "x": {"min": c.x_min, "av": c.x_av, "max": c.x_max},
                    "g": {"min": c.g_min, "av": c.g_av, "max": c.g_max},
                }
                for c in self.characteristics
            ],
            "experts": list(self.experts),
            "judgments": [
                {"expert": j.expert, "left": j.left, "right": j.right,
                 "relation": j.relation.value}
                for j in self.judgments
            ],
            "systems": [
                {
                    "id": s.id,
                    "intervals": {cid: list(iv) for cid, iv in s.intervals.items()},
                    **({"memberships": dict(s.memberships)} if s.memberships else {}),
                }
                for s in self.systems
            ],
            "incidents": [{"year": r.year, "loss": r.loss} for r in self.incidents],
            "config": {
                "aggregation": self.config.aggregation.value,
                "membership_mode": self.config.membership_mode.value,
                "threshold": self.config.threshold,
                "methods": list(self.config.methods),
            },
        }
        if self.ranks is not None:
            data["ranks"] = {e: dict(self.ranks.ranks[e]) for e in self.ranks.experts}
        return data


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def _expect(data: Any, kind: type, where: str) -> Any:
    if kind is float:
        if isinstance(data, bool) or not isinstance(data, (int, float)):
            raise ProjectError(f"{where}: expected a number, got {type(data).__name__}")
        return float(data)
    if kind is int:
        if isinstance(data, bool) or not isinstance(data, int):
            raise ProjectError(f"{where}: expected an integer, got {type(data).__name__}")
        return data
    if not isinstance(data, kind):
        raise ProjectError(f"{where}: expected {kind.__name__}, got {type(data).__name__}")
    return data


def _fetch(mapping: Mapping[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in mapping:
        raise ProjectError(f"{where}: missing required field '{key}'")
    return _expect(mapping[key], kind, f"{where}.{key}")


def _characteristic_from_dict(data: Any, where: str) -> Characteristic:
    entry = _expect(data, dict, where)
    cid = _fetch(entry, "id", str, where)
    x = _fetch(entry, "x", dict, where)
    g = _fetch(entry, "g", dict, where)
    return Characteristic(
        id=cid,
        name=entry.get("name", cid),
        unit=entry.get("unit", ""),
        x_min=_fetch(x, "min", float, f"{where}.x"),
        x_av=_fetch(x, "av", float, f"{where}.x"),
        x_max=_fetch(x, "max", float, f"{where}.x"),
        g_min=_fetch(g, "min", float, f"{where}.g"),
        g_av=_fetch(g, "av", float, f"{where}.g"),
        g_max=_fetch(g, "max", float, f"{where}.g"),
    )


def _system_from_dict(data: Any, where: str) -> SystemProfile:
    entry = _expect(data, dict, where)
    sid = _fetch(entry, "id", str, where)
    raw_intervals = _fetch(entry, "intervals", dict, where)
    intervals: dict[str, tuple[float, float]] = {}
    for cid, bounds in raw_intervals.items():
        pair = _expect(bounds, list, f"{where}.intervals['{cid}']")
        if len(pair) != 2:
            raise ProjectError(f"{where}.intervals['{cid}']: expected [begin, end]")
        begin = _expect(pair[0], float, f"{where}.intervals['{cid}'][0]")
        end = _expect(pair[1], float, f"{where}.intervals['{cid}'][1]")
        intervals[cid] = (begin, end)
    memberships: dict[str, float] = {}
    for req, mu in _expect(entry.get("memberships", {}), dict, f"{where}.memberships").items():
        memberships[req] = _expect(mu, float, f"{where}.memberships['{req}']")
    return SystemProfile(id=sid, intervals=intervals, memberships=memberships)


def _config_from_dict(data: Any) -> ProjectConfig:
    entry = _expect(data, dict, "config")
    try:
        aggregation = AggregationRule(entry.get("aggregation", "snap"))
    except ValueError:
        raise ProjectError(
            f"config.aggregation: unknown rule {entry.get('aggregation')!r} "
            f"(expected 'snap' or 'mean')") from None
    try:
        membership_mode = MembershipMode(entry.get("membership_mode", "mean"))
    except ValueError:
        raise ProjectError(
            f"config.membership_mode: unknown mode {entry.get('membership_mode')!r} "
            f"(expected 'mean' or 'min')") from None
    methods = tuple(_expect(entry.get("methods", []), list, "config.methods"))
    threshold = _expect(entry.get("threshold", THRESHOLD_DEFAULT), float, "config.threshold")
    return ProjectConfig(
        aggregation=aggregation,
        membership_mode=membership_mode,
        threshold=threshold,
        methods=methods,
    )


def project_from_dict(data: Any, default_id: str = "project") -> AssessmentProject:
    """Build a project from parsed JSON, raising on structural problems.

    Cross-reference and invariant problems are left to
    :func:`validate_project` so that a structurally sound but inconsistent
    document can still be inspected.
    """
    root = _expect(data, dict, "project")
    project_id = _expect(root.get("id", default_id), str, "id")

    characteristics = tuple(
        _characteristic_from_dict(item, f"characteristics[{i}]")
        for i, item in enumerate(_expect(root.get("characteristics", []), list, "characteristics"))
    )
    experts = tuple(
        _expect(item, str, f"experts[{i}]")
        for i, item in enumerate(_expect(root.get("experts", []), list, "experts"))
    )

    judgments = []
    for i, item in enumerate(_expect(root.get("judgments", []), list, "judgments")):
        where = f"judgments[{i}]"
        entry = _expect(item, dict, where)
        judgments.append(PairwiseJudgment(
            expert=_fetch(entry, "expert", str, where),
            left=_fetch(entry, "left", str, where),
            right=_fetch(entry, "right", str, where),
            relation=Relation.parse(_fetch(entry, "relation", str, where)),
        ))

    ranks = None
    if root.get("ranks") is not None:
        raw = _expect(root["ranks"], dict, "ranks")
        table: dict[str, dict[str, int]] = {}
        for expert, row in raw.items():
            row_map = _expect(row, dict, f"ranks['{expert}']")
            table[expert] = {
                cid: _expect(r, int, f"ranks['{expert}']['{cid}']")
                for cid, r in row_map.items()
            }
        ranks = RankTable(
            characteristics=tuple(c.id for c in characteristics),
            experts=tuple(table),
            ranks=table,
        )

    systems = tuple(
        _system_from_dict(item, f"systems[{i}]")
        for i, item in enumerate(_expect(root.get("systems", []), list, "systems"))
    )

    incidents = []
    for i, item in enumerate(_expect(root.get("incidents", []), list, "incidents")):
        where = f"incidents[{i}]"
        entry = _expect(item, dict, where)
        incidents.append(IncidentRecord(
            year=_fetch(entry, "year", int, where),
            loss=_fetch(entry, "loss", float, where),
        ))

    config = _config_from_dict(root.get("config", {}))

    return AssessmentProject(
        id=project_id,
        characteristics=characteristics,
        experts=experts,
        judgments=tuple(judgments),
        ranks=ranks,
        systems=systems,
        incidents=tuple(incidents),
        config=config,
    )


def loads_project(text: str, *, project_id: str = "project",
                  strict: bool = True) -> AssessmentProject:
    """Parse a project from a JSON string.  See :func:`load_project`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    project = project_from_dict(data, default_id=project_id)
    if strict:
        problems = validate_project(project)
        if problems:
            listing = "\n".join(f"  - {p}" for p in problems)
            raise ProjectError(f"invalid project '{project.id}':\n{listing}")
    return project


def load_project(path: str | Path, *, strict: bool = True) -> AssessmentProject:
    """Load a project JSON file.

    With ``strict`` (the default) any diagnostic from
    :func:`validate_project` raises :class:`ProjectError`; with
    ``strict=False`` the structurally sound project is returned and
    diagnosis is the caller's job.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProjectError(f"cannot read project file '{p}': {exc}") from exc
    return loads_project(text, project_id=p.stem, strict=strict)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _validate_characteristics(project: AssessmentProject, out: list[str]) -> None:
    seen: set[str] = set()
    for c in project.characteristics:
        if c.id in seen:
            out.append(f"characteristic '{c.id}': duplicate id")
        seen.add(c.id)
        if not (c.x_min < c.x_av < c.x_max):
            out.append(
                f"characteristic '{c.id}': x values must satisfy min < av < max "
                f"(got {c.x_min}, {c.x_av}, {c.x_max})")
        for label, g in (("g.min", c.g_min), ("g.av", c.g_av), ("g.max", c.g_max)):
            if g < 0:
                out.append(f"characteristic '{c.id}': {label} must be >= 0 (got {g})")


def _validate_judgments(project: AssessmentProject, out: list[str]) -> None:
    cids = set(project.characteristic_ids)
    experts = set(project.experts)
    seen_pairs: set[tuple[str, str, str]] = set()
    for i, j in enumerate(project.judgments):
        where = f"judgments[{i}]"
        if j.expert not in experts:
            out.append(f"{where}: expert '{j.expert}' is not in the expert panel")
        for side, cid in (("left", j.left), ("right", j.right)):
            if cid not in cids:
                out.append(f"{where}.{side}: unknown characteristic '{cid}'")
        if j.left == j.right:
            out.append(f"{where}: a characteristic cannot be compared with itself ('{j.left}')")
            continue
        key = (j.expert, *sorted((j.left, j.right)))
        if key in seen_pairs:
            out.append(
                f"{where}: expert '{j.expert}' judged pair ('{key[1]}', '{key[2]}') more than once")
        seen_pairs.add(key)


def _validate_ranks(project: AssessmentProject, out: list[str]) -> None:
    ranks = project.ranks
    if ranks is None:
        return
    experts = set(project.experts)
    cids = set(project.characteristic_ids)
    n = project.n
    for expert in ranks.experts:
        if expert not in experts:
            out.append(f"ranks: expert '{expert}' is not in the expert panel")
        row = ranks.ranks[expert]
        missing = cids - set(row)
        extra = set(row) - cids
        for cid in sorted(missing):
            out.append(f"ranks['{expert}']: no rank for characteristic '{cid}'")
        for cid in sorted(extra):
            out.append(f"ranks['{expert}']: unknown characteristic '{cid}'")
        if missing or extra:
            continue
        counts: dict[int, int] = {}
        for r in row.values():
            counts[r] = counts.get(r, 0) + 1
        for r in sorted(counts):
            if counts[r] > 1:
                out.append(f"ranks['{expert}']: rank {r} assigned more than once")
        out_of_range = sorted(r for r in counts if not 1 <= r <= n)
        for r in out_of_range:
            out.append(f"ranks['{expert}']: rank {r} outside 1..{n}")


def _validate_systems(project: AssessmentProject, out: list[str]) -> None:
    by_id = {c.id: c for c in project.characteristics}
    seen: set[str] = set()
    for s in project.systems:
        if s.id in seen:
            out.append(f"system '{s.id}': duplicate id")
        seen.add(s.id)
        for cid in sorted(s.intervals):
            begin, end = s.intervals[cid]
            c = by_id.get(cid)
            if c is None:
                out.append(f"system '{s.id}': interval for unknown characteristic '{cid}'")
                continue
            if not begin < end:
                out.append(
                    f"system '{s.id}', characteristic '{cid}': interval must satisfy "
                    f"begin < end (got [{begin}, {end}])")
            if begin < c.x_min or end > c.x_max:
                out.append(
                    f"system '{s.id}', characteristic '{cid}': interval [{begin}, {end}] "
                    f"outside the global range [{c.x_min}, {c.x_max}]")
        for req in sorted(s.memberships):
            mu = s.memberships[req]
            if not 0.0 <= mu <= 1.0:
                out.append(
                    f"system '{s.id}', requirement '{req}': membership {mu} outside [0, 1]")


def _validate_config(project: AssessmentProject, out: list[str]) -> None:
    cfg = project.config
    low, high = THRESHOLD_BAND
    if not low <= cfg.threshold <= high:
        out.append(
            f"config.threshold: {cfg.threshold} outside the allowed band "
            f"[{low}, {high}]")
    for method in cfg.methods:
        if method not in METHODS:
            out.append(
                f"config.methods: unknown method '{method}' "
                f"(expected one of {', '.join(METHODS)})")

    requested = [m for m in cfg.methods if m in METHODS]
    if not requested:
        return

    if any(m in ("degree", "comprehensive") for m in requested):
        judged: set[tuple[str, str]] = set()
        for j in project.judgments:
            judged.add(tuple(sorted((j.left, j.right))))  # type: ignore[arg-type]
        ids = project.characteristic_ids
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                pair = tuple(sorted((ids[a], ids[b])))
                if pair not in judged:
                    out.append(
                        f"pair ('{pair[0]}', '{pair[1]}') has no judgment; weighting "
                        f"methods need every pair judged at least once")
        if not project.systems:
            out.append("weighting-based methods require at least one system")

    if "comprehensive" in requested:
        if project.n < MIN_COMPREHENSIVE_CHARACTERISTICS:
            out.append(
                f"comprehensive method requires N >= "
                f"{MIN_COMPREHENSIVE_CHARACTERISTICS} characteristics (got {project.n})")
        for s in project.systems:
            for cid in project.characteristic_ids:
                if cid not in s.intervals:
                    out.append(
                        f"comprehensive method: system '{s.id}' has no interval for "
                        f"characteristic '{cid}'")

    if "membership" in requested:
        if not project.systems:
            out.append("membership method requires at least one system")
        for s in project.systems:
            if not s.memberships:
                out.append(f"membership method: system '{s.id}' defines no memberships")


def _validate_incidents(project: AssessmentProject, out: list[str]) -> None:
    for i, rec in enumerate(project.incidents):
        if rec.loss < 0:
            out.append(f"incidents[{i}]: loss must be >= 0 (got {rec.loss})")


def validate_project(project: AssessmentProject) -> list[str]:
    """Return every violated invariant as a human-readable diagnostic.

    An empty list means the project is internally consistent and every
    method requested in its config has the inputs it needs.  The function is
    pure: the same project always yields the same diagnostics in the same
    order.
    """
    out: list[str] = []
    if not project.characteristics:
        out.append("project defines no characteristics")
    seen_experts: set[str] = set()
    for e in project.experts:
        if e in seen_experts:
            out.append(f"expert '{e}': duplicate id")
        seen_experts.add(e)
    _validate_characteristics(project, out)
    _validate_judgments(project, out)
    _validate_ranks(project, out)
    _validate_systems(project, out)
    _validate_incidents(project, out)
    _validate_config(project, out)
    return out
