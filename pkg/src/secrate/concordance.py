"""Expert-panel agreement via the coefficient of concordance.

Rank sums per characteristic deviate from their average; the normalized sum
of squared deviations ``w = 12*s / (m^2 * (n^3 - n))`` lands in [0, 1], with
1 meaning unanimous rankings.  A panel is adequate when ``w`` reaches the
configured threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import THRESHOLD_BAND, THRESHOLD_DEFAULT, RankTable

_TOL = 1e-9


class ConcordanceError(ValueError):
    """Rank data unsuitable for a concordance computation."""


@dataclass(frozen=True)
class ConcordanceReport:
    """All intermediate quantities of one concordance computation."""

    characteristics: tuple[str, ...]
    rank_sums: tuple[int, ...]
    r_total: int
    r_avg: float
    deviations: tuple[float, ...]
    s_sq: float
    w: float
    threshold: float
    adequate: bool


@dataclass(frozen=True)
class GridPoint:
    """One curve-family sample; ``clamped`` flags a raw value above 1."""

    n: int
    m: int
    w: float
    clamped: bool


def _check_permutations(ranks: RankTable) -> None:
    expected = set(range(1, ranks.n + 1))
    for expert in ranks.experts:
        row = ranks.row(expert)
        if set(row) != expected or len(row) != ranks.n:
            raise ConcordanceError(
                f"ranks of expert '{expert}' are not a permutation of 1..{ranks.n}: {row}")


def rank_sums(ranks: RankTable) -> list[int]:
    """Sum of the ranks each characteristic received across the panel."""
    _check_permutations(ranks)
    return [
        sum(ranks.ranks[expert][cid] for expert in ranks.experts)
        for cid in ranks.characteristics
    ]


def expected_rank_total(ranks: RankTable) -> float:
    return 0.5 * ranks.m * ranks.n * (ranks.n + 1)


def verify_rank_total(ranks: RankTable) -> bool:
    """Check the control identity: the rank sums must total m*n*(n+1)/2.

    Holds for every valid table; a failure indicates corrupted input.
    """
    return sum(rank_sums(ranks)) == expected_rank_total(ranks)


def concordance(ranks: RankTable, threshold: float = THRESHOLD_DEFAULT) -> ConcordanceReport:
    """Compute the concordance coefficient and its intermediate values.

    Requires at least two characteristics (the normalization vanishes at
    one) and strict permutation rows.
    """
    if ranks.n < 2:
        raise ConcordanceError(f"concordance needs at least 2 characteristics, got {ranks.n}")
    if ranks.m < 1:
        raise ConcordanceError("concordance needs at least one expert")
    sums = rank_sums(ranks)
    total = sum(sums)
    avg = total / ranks.n
    deviations = [r - avg for r in sums]
    s_sq = sum(d * d for d in deviations)
    w = 12.0 * s_sq / (ranks.m ** 2 * (ranks.n ** 3 - ranks.n))
    return ConcordanceReport(
        characteristics=ranks.characteristics,
        rank_sums=tuple(sums),
        r_total=total,
        r_avg=avg,
        deviations=tuple(deviations),
        s_sq=s_sq,
        w=w,
        threshold=threshold,
        adequate=panel_adequacy(w, threshold),
    )


def panel_adequacy(w: float, threshold: float = THRESHOLD_DEFAULT) -> bool:
    """Decide panel adequacy: agreement must reach the threshold.

    Thresholds are only accepted inside the tolerated +/- 20 % band around
    the nominal value 0.67.
    """
    low, high = THRESHOLD_BAND
    if not low - _TOL <= threshold <= high + _TOL:
        raise ConcordanceError(
            f"threshold {threshold} outside the allowed band [{low}, {high}]")
    return w >= threshold


def concordance_grid(
    s_sq: float, n_values: range | list[int], m_values: range | list[int]
) -> list[GridPoint]:
    """Curve-family samples ``w(n, m)`` for a fixed sum of squared deviations.

    Values whose raw coefficient exceeds 1 (an ``s_sq`` unattainable for
    that panel shape) are clamped to 1 and flagged.  Output is row-major:
    ``n`` outer, ``m`` inner.
    """
    n_list = list(n_values)
    m_list = list(m_values)
    if not n_list or not m_list:
        raise ConcordanceError("grid ranges must not be empty")
    for n in n_list:
        if n < 2:
            raise ConcordanceError(f"grid needs n >= 2, got {n}")
    for m in m_list:
        if m < 1:
            raise ConcordanceError(f"grid needs m >= 1, got {m}")
    points = []
    for n in n_list:
        for m in m_list:
            raw = 12.0 * s_sq / (m ** 2 * (n ** 3 - n))
            clamped = raw > 1.0
            points.append(GridPoint(n=n, m=m, w=min(raw, 1.0), clamped=clamped))
    return points
