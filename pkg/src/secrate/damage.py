"""Expected yearly damage from a threat, plus incident-history moments.

Damage is the order-of-magnitude estimate ``r = 10**(s_coef + v_coef - 4)``
where both coefficients live on a 0..7 scale.  The classic piecewise form
grows linearly and saturates hard at its interval ends; the smooth variant
replaces both ramps with scaled hyperbolic tangents so growth continues
over the whole domain while staying strictly below the saturation value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from statistics import fmean, stdev
from typing import Sequence

from .model import IncidentRecord

COEF_MAX = 7.0

# Piecewise ramps: attack-rate coefficient saturates at 1000 attacks/year,
# loss coefficient at a loss of 10^7 monetary units.
S_RATE = 7e-3
S_LIMIT = 1e3
V_RATE = 7e-7
V_LIMIT = 1e7

#: Lower and upper bound of the damage estimate for any admissible input.
R_MIN = 1e-4
R_MAX = 1e10


class DamageError(ValueError):
    """Damage input outside the admissible domain."""


class DamageVariant(Enum):
    PIECEWISE = "piecewise"
    TANH = "tanh"


@dataclass(frozen=True)
class DamageInput:
    """Threat frequency ``s`` (attacks/year) and loss ``v`` (money units)."""

    s: float
    v: float

    def __post_init__(self) -> None:
        if self.s < 0:
            raise DamageError(f"attack rate must be >= 0, got {self.s}")
        if self.v < 1:
            raise DamageError(f"loss must be >= 1, got {self.v}")


@dataclass(frozen=True)
class DamageCoefficients:
    """Scale coefficients and the damage estimate they produce."""

    s_coef: float
    v_coef: float
    r: float


@dataclass(frozen=True)
class TanhParams:
    """Scaling of the smooth variant.

    ``s_half`` and ``v_scale`` divide the raw inputs before the tanh; the
    defaults take the frequency scale from half its saturation bound but
    keep the published loss divisor 5e5, which differs from the half-bound
    reading 5e6.  Use :meth:`from_scale_maxima` to derive both divisors
    from saturation bounds instead.
    """

    k_max: float = COEF_MAX
    s_half: float = 500.0
    v_scale: float = 5e5

    def __post_init__(self) -> None:
        for label, value in (("k_max", self.k_max), ("s_half", self.s_half),
                             ("v_scale", self.v_scale)):
            if value <= 0:
                raise DamageError(f"{label} must be strictly positive, got {value}")

    @classmethod
    def from_scale_maxima(cls, k_max: float = COEF_MAX, s_max: float = S_LIMIT,
                          v_max: float = V_LIMIT) -> "TanhParams":
        """Derive divisors as half the saturation bounds (``2x / b_max``)."""
        return cls(k_max=k_max, s_half=s_max / 2.0, v_scale=v_max / 2.0)


def _r_from_coefficients(s_coef: float, v_coef: float) -> float:
    # Exponent assembled first; a single power of ten avoids overflow near
    # the upper bound.
    return 10.0 ** (s_coef + v_coef - 4.0)


def coefficients_piecewise(inp: DamageInput) -> DamageCoefficients:
    """Linear-ramp coefficients with hard saturation."""
    s_coef = S_RATE * inp.s if inp.s <= S_LIMIT else COEF_MAX
    v_coef = V_RATE * (inp.v - 1.0) if inp.v <= V_LIMIT else COEF_MAX
    return DamageCoefficients(s_coef=s_coef, v_coef=v_coef,
                              r=_r_from_coefficients(s_coef, v_coef))


def coefficients_tanh(inp: DamageInput, params: TanhParams = TanhParams()) -> DamageCoefficients:
    """Smooth coefficients, strictly below ``k_max`` for finite inputs."""
    s_coef = params.k_max * math.tanh(inp.s / params.s_half)
    v_coef = params.k_max * math.tanh((inp.v - 1.0) / params.v_scale)
    return DamageCoefficients(s_coef=s_coef, v_coef=v_coef,
                              r=_r_from_coefficients(s_coef, v_coef))


def expected_damage(
    inp: DamageInput,
    variant: DamageVariant = DamageVariant.TANH,
    params: TanhParams | None = None,
) -> float:
    """Damage estimate of the selected variant."""
    if variant is DamageVariant.PIECEWISE:
        return coefficients_piecewise(inp).r
    return coefficients_tanh(inp, params or TanhParams()).r


@dataclass(frozen=True)
class DamageGridRow:
    """One grid sample carrying both variants for side-by-side plots."""

    s: float
    v: float
    r_piecewise: float
    r_tanh: float


def damage_grid(
    s_points: Sequence[float],
    v_points: Sequence[float],
    params: TanhParams = TanhParams(),
) -> list[DamageGridRow]:
    """Damage surface samples, row-major: ``s`` outer, ``v`` inner."""
    if not s_points or not v_points:
        raise DamageError("grid point lists must not be empty")
    rows = []
    for s in s_points:
        for v in v_points:
            inp = DamageInput(s=s, v=v)
            rows.append(DamageGridRow(
                s=s, v=v,
                r_piecewise=coefficients_piecewise(inp).r,
                r_tanh=coefficients_tanh(inp, params).r,
            ))
    return rows


@dataclass(frozen=True)
class IncidentStats:
    """Moment estimators of an incident history."""

    rate: float
    mean_loss: float
    loss_dev: float


def incident_stats(records: Sequence[IncidentRecord]) -> IncidentStats:
    """Incidents per year, mean loss, and sample deviation of the losses.

    The rate denominator is the inclusive calendar span of the observed
    years (at least one year); the deviation of a single record is zero.
    """
    if not records:
        raise DamageError("incident statistics need at least one record")
    for rec in records:
        if rec.loss < 0:
            raise DamageError(f"incident loss must be >= 0, got {rec.loss}")
    years = [rec.year for rec in records]
    span = max(years) - min(years) + 1
    losses = [rec.loss for rec in records]
    return IncidentStats(
        rate=len(records) / span,
        mean_loss=fmean(losses),
        loss_dev=stdev(losses) if len(losses) > 1 else 0.0,
    )
