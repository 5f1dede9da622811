"""File export of the two standard figure datasets: CSV plus rendered PNG.

The damage surface is sampled over attack-rate and loss grids with both
variant columns; the concordance curve family samples the coefficient over
panel shapes at a fixed sum of squared deviations.  Every export writes the
delimited data and a matplotlib rendering side by side.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .concordance import GridPoint, concordance_grid
from .damage import DamageGridRow, TanhParams, damage_grid

DAMAGE_CSV_HEADER = "s,v,r_piecewise,r_tanh"
CURVES_CSV_HEADER = "n,m,w"


def write_damage_csv(rows: Sequence[DamageGridRow], path: Path) -> None:
    lines = [DAMAGE_CSV_HEADER]
    lines += [f"{r.s!r},{r.v!r},{r.r_piecewise!r},{r.r_tanh!r}" for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_curves_csv(points: Sequence[GridPoint], path: Path) -> None:
    lines = [CURVES_CSV_HEADER]
    lines += [f"{p.n},{p.m},{p.w!r}" for p in points]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_damage_figure(rows: Sequence[DamageGridRow], path: Path) -> None:
    """Damage versus attack rate, one curve pair per selected loss slice."""
    v_values = sorted({r.v for r in rows})
    step = max(1, (len(v_values) - 1) // 3) if len(v_values) > 1 else 1
    slices = v_values[::step][:4]
    if v_values and v_values[-1] not in slices:
        slices.append(v_values[-1])

    fig, ax = plt.subplots(figsize=(8, 5))
    for v in slices:
        s = [r.s for r in rows if r.v == v]
        ax.plot(s, [r.r_piecewise for r in rows if r.v == v],
                linestyle="--", label=f"piecewise, v={v:g}")
        ax.plot(s, [r.r_tanh for r in rows if r.v == v],
                linestyle="-", label=f"tanh, v={v:g}")
    ax.set_yscale("log")
    ax.set_xlabel("attacks per year (s)")
    ax.set_ylabel("expected damage (r)")
    ax.set_title("Expected damage by variant")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_curves_figure(points: Sequence[GridPoint], path: Path) -> None:
    """Concordance coefficient versus characteristic count, one curve per panel size."""
    m_values = sorted({p.m for p in points})
    fig, ax = plt.subplots(figsize=(8, 5))
    for m in m_values:
        n = [p.n for p in points if p.m == m]
        w = [p.w for p in points if p.m == m]
        ax.plot(n, w, marker="o", markersize=3, label=f"m={m}")
    ax.set_xlabel("number of characteristics (n)")
    ax.set_ylabel("concordance coefficient (w)")
    ax.set_title("Concordance curve family")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def export_damage_files(
    s_points: Sequence[float],
    v_points: Sequence[float],
    out_dir: Path,
    params: TanhParams = TanhParams(),
    basename: str = "fig2",
) -> list[Path]:
    """Write the damage grid CSV and its rendering; returns written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = damage_grid(s_points, v_points, params)
    csv_path = out_dir / f"{basename}.csv"
    png_path = out_dir / f"{basename}.png"
    write_damage_csv(rows, csv_path)
    render_damage_figure(rows, png_path)
    return [csv_path, png_path]


def export_curves_files(
    s_sq: float,
    n_values: Sequence[int],
    m_values: Sequence[int],
    out_dir: Path,
    basename: str = "fig3",
) -> list[Path]:
    """Write the curve-family CSV and its rendering; returns written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    points = concordance_grid(s_sq, list(n_values), list(m_values))
    csv_path = out_dir / f"{basename}.csv"
    png_path = out_dir / f"{basename}.png"
    write_curves_csv(points, csv_path)
    render_curves_figure(points, png_path)
    return [csv_path, png_path]
