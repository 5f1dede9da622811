"""Prioritization weighting from expert pairwise judgments.

Expert symbols per characteristic pair map onto the numeric scale
``> -> 1.5``, ``= -> 1.0``, ``< -> 0.5`` and aggregate into a reciprocal
comparison matrix (``a_ij + a_ji = 2``, unit diagonal).  First-order
weights are the normalized row sums; final weights come from a second
matrix-weighted pass over the first-order row sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import AggregationRule, PairwiseJudgment, Relation

RELATION_VALUES = {
    Relation.GREATER: 1.5,
    Relation.EQUAL: 1.0,
    Relation.LESS: 0.5,
}

#: Admissible matrix entries in snap mode.
SCALE = (0.5, 1.0, 1.5)

_TOL = 1e-9


class WeightingError(ValueError):
    """Judgment data cannot be turned into a valid comparison matrix."""


@dataclass(frozen=True)
class ComparisonMatrix:
    """Aggregated pairwise-priority matrix.

    Entries stay within [0.5, 1.5]; the diagonal is 1 and opposite entries
    sum to 2, which forces the total of all entries to N^2.
    """

    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.values)
        if n == 0:
            raise WeightingError("comparison matrix must not be empty")
        for i, row in enumerate(self.values):
            if len(row) != n:
                raise WeightingError(f"row {i} has {len(row)} entries, expected {n}")
            for j, a in enumerate(row):
                if not 0.5 - _TOL <= a <= 1.5 + _TOL:
                    raise WeightingError(f"entry ({i}, {j}) = {a} outside [0.5, 1.5]")
        for i in range(n):
            if abs(self.values[i][i] - 1.0) > _TOL:
                raise WeightingError(f"diagonal entry ({i}, {i}) must be 1.0")
            for j in range(i + 1, n):
                if abs(self.values[i][j] + self.values[j][i] - 2.0) > _TOL:
                    raise WeightingError(
                        f"entries ({i}, {j}) and ({j}, {i}) must sum to 2.0")

    @property
    def n(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


@dataclass(frozen=True)
class WeightVector:
    """Per-characteristic weights from both prioritization passes.

    ``b`` are raw row sums, ``phi`` the first-order importances, ``b2`` the
    second-pass weighted sums and ``w`` the final importance coefficients.
    Both ``phi`` and ``w`` sum to one.
    """

    characteristics: tuple[str, ...]
    b: tuple[float, ...]
    phi: tuple[float, ...]
    b2: tuple[float, ...]
    w: tuple[float, ...]


def _snap(mean: float) -> float:
    # Exact midpoints (0.75, 1.25) resolve toward the neutral entry 1.0.
    return min(SCALE, key=lambda c: (abs(mean - c), abs(c - 1.0)))


def aggregate_judgments(
    characteristics: Sequence[str],
    experts: Sequence[str],
    judgments: Iterable[PairwiseJudgment],
    rule: AggregationRule = AggregationRule.SNAP,
) -> ComparisonMatrix:
    """Aggregate per-expert relations into a comparison matrix.

    Every unordered characteristic pair must be judged by at least one
    expert.  ``SNAP`` takes the numeric mean of the expert values and snaps
    it to the nearest admissible entry; ``MEAN`` keeps the raw mean.
    """
    ids = list(characteristics)
    index = {cid: i for i, cid in enumerate(ids)}
    if len(index) != len(ids):
        raise WeightingError("characteristic ids must be unique")
    panel = set(experts)

    per_pair: dict[tuple[int, int], list[float]] = {}
    seen: set[tuple[str, int, int]] = set()
    for j in judgments:
        if j.expert not in panel:
            raise WeightingError(f"judgment by unknown expert '{j.expert}'")
        if j.left not in index or j.right not in index:
            missing = j.left if j.left not in index else j.right
            raise WeightingError(f"judgment references unknown characteristic '{missing}'")
        if j.left == j.right:
            raise WeightingError(f"judgment compares '{j.left}' with itself")
        a, b = index[j.left], index[j.right]
        relation = j.relation
        if a > b:
            a, b = b, a
            relation = relation.flipped()
        key = (j.expert, a, b)
        if key in seen:
            raise WeightingError(
                f"expert '{j.expert}' judged pair ('{ids[a]}', '{ids[b]}') more than once")
        seen.add(key)
        per_pair.setdefault((a, b), []).append(RELATION_VALUES[relation])

    n = len(ids)
    matrix = [[1.0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            values = per_pair.get((a, b))
            if not values:
                raise WeightingError(f"pair ('{ids[a]}', '{ids[b]}') has no judgment")
            mean = sum(values) / len(values)
            entry = _snap(mean) if rule is AggregationRule.SNAP else mean
            matrix[a][b] = entry
            matrix[b][a] = 2.0 - entry

    return ComparisonMatrix(values=tuple(tuple(row) for row in matrix))


def first_order_weights(matrix: ComparisonMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Row sums ``b`` and their normalization ``phi`` (sums to one)."""
    a = matrix.as_array()
    b = a.sum(axis=1)
    return b, b / b.sum()


def second_order_weights(
    matrix: ComparisonMatrix, b: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """Second-pass weights ``b2 = A @ b`` and final coefficients ``w``."""
    a = matrix.as_array()
    b_arr = np.asarray(b, dtype=float)
    if b_arr.shape != (matrix.n,):
        raise WeightingError(
            f"weight vector of length {b_arr.size} does not match matrix size {matrix.n}")
    b2 = a @ b_arr
    return b2, b2 / b2.sum()


def prioritize(
    characteristics: Sequence[str],
    experts: Sequence[str],
    judgments: Iterable[PairwiseJudgment],
    rule: AggregationRule = AggregationRule.SNAP,
) -> WeightVector:
    """Full pipeline: aggregate judgments, then run both weighting passes."""
    matrix = aggregate_judgments(characteristics, experts, judgments, rule)
    b, phi = first_order_weights(matrix)
    b2, w = second_order_weights(matrix, b)
    return WeightVector(
        characteristics=tuple(characteristics),
        b=tuple(float(x) for x in b),
        phi=tuple(float(x) for x in phi),
        b2=tuple(float(x) for x in b2),
        w=tuple(float(x) for x in w),
    )
