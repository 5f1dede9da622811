"""Score methods: fuzzy membership, degree of security, comprehensive rating.

The expert score samples of a characteristic become a piecewise-linear
score function through its three knots.  The comprehensive rating of a
system averages, over all characteristics, the product of the normalized
weight (weight over maximum weight) and the normalized score coverage
(score integral over the achieved interval divided by the full-range
integral), which keeps the result in [0, 1] for any admissible input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import (
    MIN_COMPREHENSIVE_CHARACTERISTICS,
    AssessmentProject,
    Characteristic,
    MembershipMode,
    SystemProfile,
)
from .weighting import WeightVector


class ScoringError(ValueError):
    """Score computation rejected its input."""


@dataclass(frozen=True)
class ScoreFunction:
    """Piecewise-linear expert score function of one characteristic."""

    characteristic_id: str
    knots: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.knots) != 3:
            raise ScoringError(
                f"score function of '{self.characteristic_id}' needs exactly 3 knots")
        xs = [x for x, _ in self.knots]
        if not (xs[0] < xs[1] < xs[2]):
            raise ScoringError(
                f"score function of '{self.characteristic_id}': knot positions "
                f"must increase strictly (got {xs})")
        for x, g in self.knots:
            if g < 0:
                raise ScoringError(
                    f"score function of '{self.characteristic_id}': negative score "
                    f"{g} at x = {x}")

    @property
    def x_min(self) -> float:
        return self.knots[0][0]

    @property
    def x_max(self) -> float:
        return self.knots[-1][0]

    def value(self, x: float) -> float:
        """Interpolated score at ``x``; defined on the knot span only."""
        if not self.x_min <= x <= self.x_max:
            raise ScoringError(
                f"x = {x} outside the span [{self.x_min}, {self.x_max}] "
                f"of '{self.characteristic_id}'")
        for (x0, g0), (x1, g1) in zip(self.knots, self.knots[1:]):
            if x <= x1:
                t = (x - x0) / (x1 - x0)
                return g0 + t * (g1 - g0)
        return self.knots[-1][1]


def build_score_function(c: Characteristic) -> ScoreFunction:
    """Continuous score function through a characteristic's three samples."""
    return ScoreFunction(
        characteristic_id=c.id,
        knots=((c.x_min, c.g_min), (c.x_av, c.g_av), (c.x_max, c.g_max)),
    )


def integrate_score(f: ScoreFunction, a: float, b: float) -> float:
    """Exact integral of the piecewise-linear score over ``[a, b]``.

    Each linear segment contributes its trapezoid area, so no quadrature
    error is involved.  Bounds must lie within the knot span.
    """
    if a > b:
        raise ScoringError(f"integration bounds reversed: {a} > {b}")
    if a < f.x_min or b > f.x_max:
        raise ScoringError(
            f"bounds [{a}, {b}] outside the span [{f.x_min}, {f.x_max}] "
            f"of '{f.characteristic_id}'")
    total = 0.0
    for (x0, _), (x1, _) in zip(f.knots, f.knots[1:]):
        lo = max(a, x0)
        hi = min(b, x1)
        if lo >= hi:
            continue
        total += 0.5 * (f.value(lo) + f.value(hi)) * (hi - lo)
    return total


def normalized_g(f: ScoreFunction, begin: float, end: float) -> float:
    """Score coverage of ``[begin, end]`` relative to the full knot span."""
    if begin == end:
        raise ScoringError(
            f"degenerate interval [{begin}, {end}] for '{f.characteristic_id}'")
    full = integrate_score(f, f.x_min, f.x_max)
    if full == 0.0:
        raise ScoringError(
            f"score function of '{f.characteristic_id}' integrates to zero "
            f"over its full range")
    part = integrate_score(f, begin, end)
    return abs(part) / abs(full)


def average_score(f: ScoreFunction, begin: float, end: float) -> float:
    """Mean score over ``[begin, end]`` (integral divided by width)."""
    if begin >= end:
        raise ScoringError(f"interval [{begin}, {end}] must have positive width")
    return integrate_score(f, begin, end) / (end - begin)


def _weights_of(weights: WeightVector | Sequence[float]) -> list[float]:
    if isinstance(weights, WeightVector):
        return list(weights.w)
    return [float(x) for x in weights]


def normalized_w(weights: WeightVector | Sequence[float]) -> list[float]:
    """Weights scaled by their maximum, so the largest becomes exactly 1."""
    values = _weights_of(weights)
    if not values:
        raise ScoringError("weight vector must not be empty")
    top = max(values)
    if top <= 0:
        raise ScoringError("weights must be strictly positive")
    return [abs(v / top) for v in values]


def degree_of_security(w: Sequence[float], g: Sequence[float]) -> float:
    """Mean of the elementwise weight-score products."""
    if len(w) != len(g):
        raise ScoringError(f"length mismatch: {len(w)} weights vs {len(g)} scores")
    if not w:
        raise ScoringError("degree of security needs at least one characteristic")
    return sum(wi * gi for wi, gi in zip(w, g)) / len(w)


def membership_security(
    memberships: Sequence[float], mode: MembershipMode = MembershipMode.MEAN
) -> float:
    """Reduce requirement membership degrees to one score in [0, 1].

    ``MEAN`` averages the degrees; ``MIN`` takes the pessimistic reading of
    the weakest requirement.
    """
    values = [float(mu) for mu in memberships]
    if not values:
        raise ScoringError("membership evaluation needs at least one value")
    for mu in values:
        if not 0.0 <= mu <= 1.0:
            raise ScoringError(f"membership {mu} outside [0, 1]")
    if mode is MembershipMode.MIN:
        return min(values)
    return sum(values) / len(values)


@dataclass(frozen=True)
class NormalizedScore:
    """Comprehensive rating of one system with its per-characteristic parts."""

    system_id: str
    characteristics: tuple[str, ...]
    w_star: tuple[float, ...]
    g_star: tuple[float, ...]
    s_star: float


def comprehensive_score(
    project: AssessmentProject,
    system: SystemProfile,
    weights: WeightVector | Sequence[float],
) -> NormalizedScore:
    """Normalized security level of one system.

    Needs at least three characteristics and an achieved interval for every
    one of them.  The result never exceeds 1; the maximum is reached by a
    system covering every full range under uniform weights.
    """
    if project.n < MIN_COMPREHENSIVE_CHARACTERISTICS:
        raise ScoringError(
            f"comprehensive method requires N >= "
            f"{MIN_COMPREHENSIVE_CHARACTERISTICS} characteristics (got {project.n})")
    w_star = normalized_w(weights)
    if len(w_star) != project.n:
        raise ScoringError(
            f"length mismatch: {len(w_star)} weights vs {project.n} characteristics")
    g_star = []
    for c in project.characteristics:
        if c.id not in system.intervals:
            raise ScoringError(
                f"system '{system.id}' has no interval for characteristic '{c.id}'")
        begin, end = system.intervals[c.id]
        g_star.append(normalized_g(build_score_function(c), begin, end))
    s_star = sum(ws * gs for ws, gs in zip(w_star, g_star)) / project.n
    return NormalizedScore(
        system_id=system.id,
        characteristics=project.characteristic_ids,
        w_star=tuple(w_star),
        g_star=tuple(g_star),
        s_star=s_star,
    )


def compare_systems(
    project: AssessmentProject, weights: WeightVector | Sequence[float]
) -> list[tuple[str, float]]:
    """Rank all systems by comprehensive score, best first.

    Ties break by system id so the ordering is fully deterministic.
    """
    if not project.systems:
        raise ScoringError("comparison needs at least one system")
    scored = [
        (system.id, comprehensive_score(project, system, weights).s_star)
        for system in project.systems
    ]
    return sorted(scored, key=lambda item: (-item[1], item[0]))
