from __future__ import annotations

from pathlib import Path
from typing import Sequence

from secrate.model import (
    AssessmentProject,
    Characteristic,
    PairwiseJudgment,
    ProjectConfig,
    RankTable,
    Relation,
    SystemProfile,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_PROJECT = REPO_ROOT / "docs" / "examples" / "demo-project.json"
ATTACK_CATALOG = REPO_ROOT / "docs" / "examples" / "attack-catalog.json"

# Golden five-characteristic priority fixture.  Four rows carry known
# reference outputs; the remaining row is fully forced by reciprocity from
# the known column entries (test_weighting verifies both claims by plain
# loops before anything trusts the matrix).
GOLDEN_MATRIX = (
    (1.0, 1.5, 1.5, 1.5, 1.5),
    (0.5, 1.0, 0.5, 1.5, 1.5),
    (0.5, 1.5, 1.0, 1.0, 1.5),
    (0.5, 0.5, 1.0, 1.0, 1.5),
    (0.5, 0.5, 0.5, 0.5, 1.0),
)
# Rows 0, 1, 3, 4 of these vectors are reference values; index 2 is derived.
GOLDEN_B = (7.0, 5.0, 5.5, 4.5, 3.0)
GOLDEN_PHI = (0.28, 0.20, 0.22, 0.18, 0.12)
GOLDEN_B2 = (34.0, 22.5, 25.5, 20.5, 14.0)
GOLDEN_W = (0.292, 0.193, 0.219, 0.176, 0.120)  # rounded to 3 decimals


def make_characteristic(
    cid: str = "c1",
    x: Sequence[float] = (0.0, 5.0, 10.0),
    g: Sequence[float] = (1.0, 1.0, 1.0),
) -> Characteristic:
    return Characteristic(
        id=cid, name=cid, unit="",
        x_min=x[0], x_av=x[1], x_max=x[2],
        g_min=g[0], g_av=g[1], g_max=g[2],
    )


def make_rank_table(
    rows: dict[str, Sequence[int]], cids: Sequence[str] | None = None
) -> RankTable:
    n = len(next(iter(rows.values())))
    ids = tuple(cids) if cids is not None else tuple(f"c{i + 1}" for i in range(n))
    return RankTable(
        characteristics=ids,
        experts=tuple(rows),
        ranks={expert: dict(zip(ids, row)) for expert, row in rows.items()},
    )


def make_project(
    characteristics: Sequence[Characteristic],
    systems: Sequence[SystemProfile] = (),
    experts: Sequence[str] = ("e1",),
    judgments: Sequence[PairwiseJudgment] = (),
    ranks: RankTable | None = None,
    config: ProjectConfig | None = None,
    pid: str = "test-project",
) -> AssessmentProject:
    return AssessmentProject(
        id=pid,
        characteristics=tuple(characteristics),
        experts=tuple(experts),
        judgments=tuple(judgments),
        ranks=ranks,
        systems=tuple(systems),
        incidents=(),
        config=config or ProjectConfig(),
    )


_RELATION_FOR_VALUE = {1.5: Relation.GREATER, 1.0: Relation.EQUAL, 0.5: Relation.LESS}


def judgments_for_matrix(
    cids: Sequence[str], experts: Sequence[str], matrix: Sequence[Sequence[float]]
) -> list[PairwiseJudgment]:
    """Unanimous judgments whose aggregation reproduces ``matrix``."""
    out = []
    for i in range(len(cids)):
        for j in range(i + 1, len(cids)):
            relation = _RELATION_FOR_VALUE[matrix[i][j]]
            out.extend(
                PairwiseJudgment(expert=e, left=cids[i], right=cids[j], relation=relation)
                for e in experts
            )
    return out
