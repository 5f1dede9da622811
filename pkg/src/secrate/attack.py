"""Staged attack modeling: campaign efficiency and catalog-driven trees.

An attack lifecycle passes through nine ordered stages, from shallow
reconnaissance to spyware installation.  A catalog file names attacking
actions (each bound to one stage), the exploits realizing them, and goal
decompositions into sub-targets; a built tree lists the goal's terminal
sub-targets in stage order, each with its alternative actions.  Scenarios
are the Cartesian product of those alternatives and stream lazily, so huge
products never materialize unless collected.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterator

STAGES: tuple[str, ...] = (
    "reconnaissance",
    "scanning",
    "mapping",
    "os-access",
    "privilege-extension",
    "zombie",
    "manipulation",
    "trace-removal",
    "spyware-install",
)

_STAGE_INDEX = {name: i for i, name in enumerate(STAGES)}


class AttackModelError(ValueError):
    """Campaign or catalog data violates the attack model."""


def stage_index(stage: str) -> int:
    """Position of a stage in the fixed lifecycle ordering."""
    try:
        return _STAGE_INDEX[stage]
    except KeyError:
        raise AttackModelError(
            f"unknown stage '{stage}' (expected one of: {', '.join(STAGES)})") from None


@dataclass(frozen=True)
class ZombieCampaign:
    """A remote-control campaign: reach, duration and cost.

    ``n`` servers attacked, ``s`` computers per server, ``dt`` seconds spent
    in the controlled state, ``c`` total campaign cost in money units.
    """

    n: int
    s: int
    dt: float
    c: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise AttackModelError(f"server count must be an integer >= 1, got {self.n}")
        if not isinstance(self.s, int) or self.s < 1:
            raise AttackModelError(f"computers per server must be an integer >= 1, got {self.s}")
        if self.dt <= 0:
            raise AttackModelError(f"controlled-state time must be > 0, got {self.dt}")
        if self.c <= 0:
            raise AttackModelError(f"campaign cost must be > 0, got {self.c}")


def zombie_efficiency(campaign: ZombieCampaign) -> float:
    """Campaign efficiency in 1/(second * money unit): reach per effort."""
    return campaign.n * campaign.s / (campaign.dt * campaign.c)


class ExploitSource(Enum):
    CATALOG = "catalog"
    EXPERT = "expert"


@dataclass(frozen=True)
class AttackAction:
    id: str
    stage: str
    description: str = ""

    def __post_init__(self) -> None:
        stage_index(self.stage)


@dataclass(frozen=True)
class Exploit:
    id: str
    action: str
    source: ExploitSource = ExploitSource.CATALOG


@dataclass(frozen=True)
class TargetSpec:
    """Raw catalog entry: either a decomposition or a terminal action set."""

    id: str
    object: str = ""
    purpose: str = ""
    offender: dict[str, str] = field(default_factory=dict)
    sub_targets: tuple[str, ...] = ()
    actions: tuple[str, ...] = ()


@dataclass(frozen=True)
class AttackCatalog:
    actions: dict[str, AttackAction]
    exploits: tuple[Exploit, ...]
    targets: dict[str, TargetSpec]


@dataclass(frozen=True)
class SubTarget:
    """Terminal tree node: one stage, alternative actions sorted by id."""

    id: str
    stage: str
    actions: tuple[AttackAction, ...]


@dataclass(frozen=True)
class AttackTree:
    goal_id: str
    object: str
    purpose: str
    offender: dict[str, str]
    sub_targets: tuple[SubTarget, ...]


def load_catalog(path: str | Path) -> AttackCatalog:
    """Load a JSON attack catalog and resolve its references."""
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise AttackModelError(f"cannot read catalog file '{p}': {exc}") from exc
    except json.JSONDecodeError as exc:
        raise AttackModelError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return catalog_from_dict(data)


def catalog_from_dict(data: Any) -> AttackCatalog:
    if not isinstance(data, dict):
        raise AttackModelError("catalog must be a JSON object")

    actions: dict[str, AttackAction] = {}
    for i, entry in enumerate(data.get("actions", [])):
        where = f"actions[{i}]"
        if not isinstance(entry, dict) or "id" not in entry or "stage" not in entry:
            raise AttackModelError(f"{where}: expected an object with 'id' and 'stage'")
        action = AttackAction(
            id=str(entry["id"]),
            stage=str(entry["stage"]),
            description=str(entry.get("description", "")),
        )
        if action.id in actions:
            raise AttackModelError(f"{where}: duplicate action id '{action.id}'")
        actions[action.id] = action

    exploits = []
    for i, entry in enumerate(data.get("exploits", [])):
        where = f"exploits[{i}]"
        if not isinstance(entry, dict) or "id" not in entry or "action" not in entry:
            raise AttackModelError(f"{where}: expected an object with 'id' and 'action'")
        action_id = str(entry["action"])
        if action_id not in actions:
            raise AttackModelError(f"{where}: unknown action '{action_id}'")
        try:
            source = ExploitSource(str(entry.get("source", "catalog")))
        except ValueError:
            raise AttackModelError(
                f"{where}: unknown source {entry.get('source')!r} "
                f"(expected 'catalog' or 'expert')") from None
        exploits.append(Exploit(id=str(entry["id"]), action=action_id, source=source))

    targets: dict[str, TargetSpec] = {}
    for i, entry in enumerate(data.get("targets", [])):
        where = f"targets[{i}]"
        if not isinstance(entry, dict) or "id" not in entry:
            raise AttackModelError(f"{where}: expected an object with 'id'")
        spec = TargetSpec(
            id=str(entry["id"]),
            object=str(entry.get("object", "")),
            purpose=str(entry.get("purpose", "")),
            offender={str(k): str(v) for k, v in entry.get("offender", {}).items()},
            sub_targets=tuple(str(t) for t in entry.get("sub_targets", [])),
            actions=tuple(str(a) for a in entry.get("actions", [])),
        )
        if spec.id in targets:
            raise AttackModelError(f"{where}: duplicate target id '{spec.id}'")
        for action_id in spec.actions:
            if action_id not in actions:
                raise AttackModelError(f"{where}: unknown action '{action_id}'")
        targets[spec.id] = spec

    for spec in targets.values():
        for child in spec.sub_targets:
            if child not in targets:
                raise AttackModelError(
                    f"target '{spec.id}' decomposes to unknown sub-target '{child}'")

    return AttackCatalog(actions=actions, exploits=tuple(exploits), targets=targets)


def build_attack_tree(catalog: AttackCatalog, goal_id: str) -> AttackTree:
    """Expand a goal into its terminal sub-targets, ordered by stage.

    Decompositions expand depth-first in catalog order; a sub-target reached
    through several branches contributes once.  Cycles, empty sub-targets and
    mixed-stage alternative sets are rejected.
    """
    if goal_id not in catalog.targets:
        raise AttackModelError(f"unknown goal '{goal_id}'")

    leaves: list[SubTarget] = []
    expanded: set[str] = set()
    visiting: list[str] = []

    def expand(tid: str) -> None:
        if tid in visiting:
            chain = " -> ".join([*visiting, tid])
            raise AttackModelError(f"cyclic decomposition: {chain}")
        if tid in expanded:
            return
        spec = catalog.targets[tid]
        visiting.append(tid)
        if spec.sub_targets:
            for child in spec.sub_targets:
                expand(child)
        elif spec.actions:
            alternatives = tuple(sorted(
                (catalog.actions[a] for a in spec.actions), key=lambda a: a.id))
            stages = {a.stage for a in alternatives}
            if len(stages) > 1:
                raise AttackModelError(
                    f"sub-target '{tid}' mixes stages {sorted(stages)}; alternatives "
                    f"of one sub-target must share a stage")
            leaves.append(SubTarget(id=tid, stage=alternatives[0].stage,
                                    actions=alternatives))
        else:
            raise AttackModelError(f"sub-target '{tid}' has neither actions nor sub-targets")
        visiting.pop()
        expanded.add(tid)

    goal = catalog.targets[goal_id]
    expand(goal_id)
    ordered = sorted(leaves, key=lambda st: stage_index(st.stage))
    return AttackTree(
        goal_id=goal_id,
        object=goal.object,
        purpose=goal.purpose,
        offender=goal.offender,
        sub_targets=tuple(ordered),
    )


def count_scenarios(tree: AttackTree) -> int:
    """Number of distinct scenarios without enumerating them."""
    return math.prod(len(st.actions) for st in tree.sub_targets)


def enumerate_scenarios(tree: AttackTree) -> Iterator[tuple[AttackAction, ...]]:
    """All action sequences, lazily, in lexicographic order of action ids.

    Each scenario picks one alternative per sub-target; sequence positions
    follow the tree's stage-ordered sub-targets, so every emitted scenario
    is stage-monotone.
    """
    return itertools.product(*(st.actions for st in tree.sub_targets))
