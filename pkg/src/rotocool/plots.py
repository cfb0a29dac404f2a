"""Matplotlib figures rendered next to the delimited reports."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def plot_levels(rows: Sequence[Mapping], title: str, path: Path) -> Path:
    """Level diagram: one bar per Zeeman state, shaded by thermal weight."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    weights = np.array([float(r["thermal_weight"]) for r in rows])
    top = weights.max() if len(weights) else 1.0
    for row, weight in zip(rows, weights):
        m = int(row["two_m"]) / 2.0
        energy = float(row["energy_cm"])
        ax.plot(
            [m - 0.3, m + 0.3],
            [energy, energy],
            color=plt.cm.viridis(0.15 + 0.8 * weight / top) if top > 0 else "k",
            lw=2.2,
        )
    ax.set_xlabel("M")
    ax.set_ylabel(r"energy ($\mathrm{cm^{-1}}$)")
    ax.set_title(title)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_plan_fields(rows: Sequence[Mapping], title: str, path: Path) -> Path:
    """Tuning field per step versus the decaying level J."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    j_pi, e_pi, j_sig, e_sig = [], [], [], []
    for row in rows:
        j = int(row["two_j_upper"]) / 2.0
        field = float(row["e_field_v_per_m"])
        if int(row["q"]) == 0:
            j_pi.append(j)
            e_pi.append(field)
        else:
            j_sig.append(j)
            e_sig.append(field)
    if j_pi:
        ax.plot(j_pi, e_pi, "o", label=r"$\pi$ ($\Delta M=0$)")
    if j_sig:
        ax.plot(j_sig, e_sig, "^", label=r"$\sigma$ ($\Delta M=\pm 1$)")
    positive = [f for f in e_pi + e_sig if f > 0]
    if positive and max(positive) / min(positive) > 50.0:
        ax.set_yscale("log")
    ax.set_xlabel("upper level J")
    ax.set_ylabel("tuning field (V/m)")
    ax.set_title(title)
    ax.grid(alpha=0.25)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_timeline(
    times: Sequence[float],
    level_series: Mapping[str, Sequence[float]],
    ground_series: Sequence[float],
    title: str,
    path: Path,
) -> Path:
    """Per-level populations and the ground fraction versus time."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for label, series in level_series.items():
        ax.plot(times, series, lw=1.4, label=label)
    ax.plot(times, ground_series, "k--", lw=2.0, label="ground fraction")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("population")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(title)
    ax.grid(alpha=0.25)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_sweep(
    axis_name: str,
    values: Sequence[float],
    total_times: Sequence[float],
    ground_fractions: Sequence[float],
    path: Path,
) -> Path:
    """Total cooling time and final ground fraction along the sweep axis."""
    fig, (ax_top, ax_bottom) = plt.subplots(2, 1, sharex=True, figsize=(7.0, 6.0))
    ax_top.plot(values, total_times, "o-")
    ax_top.set_ylabel("total time (s)")
    ax_bottom.plot(values, ground_fractions, "s-", color="tab:green")
    ax_bottom.set_ylabel("ground fraction")
    ax_bottom.set_xlabel(axis_name)
    if axis_name == "q_factor" and min(values) > 0 and max(values) / min(values) > 50.0:
        ax_top.set_xscale("log")
        ax_top.set_yscale("log")
    for ax in (ax_top, ax_bottom):
        ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path
