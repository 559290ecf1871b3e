"""Matplotlib renderings of the report tables, written next to the CSV output."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .discretization import DiscretizationReport  # noqa: E402
from .experiments import ExponentFit, ScalingRecord  # noqa: E402
from .index_sets import IndexSet  # noqa: E402


def save_index_set_figure(Q: IndexSet, path: Path) -> Path | None:
    """Scatter plot of the frequencies; only drawn for d <= 2."""
    if Q.d > 2:
        return None
    fig, ax = plt.subplots(figsize=(5, 5 if Q.d == 2 else 2.5))
    if Q.d == 1:
        ax.scatter(Q.elements[:, 0], [0] * Q.N, s=12)
        ax.set_yticks([])
    else:
        ax.scatter(Q.elements[:, 0], Q.elements[:, 1], s=8)
        ax.set_ylabel("k2")
        ax.set_aspect("equal")
    ax.set_xlabel("k1")
    ax.set_title(f"{Q.tag}  (N = {Q.N})")
    fig.savefig(path, bbox_inches="tight", dpi=130)
    plt.close(fig)
    return path


def save_certify_figure(report: DiscretizationReport, target: tuple[float, float],
                        path: Path) -> Path:
    """Reported constants against the target interval."""
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.axhspan(target[0], target[1], color="tab:green", alpha=0.15, label="target")
    ax.scatter([0, 1], [report.C1, report.C2], color="tab:blue", zorder=3)
    ax.set_xticks([0, 1], ["C1", "C2"])
    kind = "exact" if report.exact else "witness bounds"
    ax.set_title(f"q = {report.q:g}  ({kind})")
    ax.set_ylabel("sampled / continuous ratio")
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=130)
    plt.close(fig)
    return path


def save_scaling_figure(records: Sequence[ScalingRecord], fit: ExponentFit | None,
                        path: Path) -> Path:
    """log-log plot of ``m*/N`` against ``n`` with the fitted slope."""
    import numpy as np

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ns = [r.n for r in records if not r.censored and r.m_star and r.n >= 1]
    ys = [r.m_star / r.N for r in records if not r.censored and r.m_star and r.n >= 1]
    ax.plot(ns, ys, "o-", label="measured m*/N")
    censored = [r.n for r in records if r.censored]
    if censored:
        ax.plot(censored, [1.0] * len(censored), "rx", label="censored")
    if fit is not None and ns:
        xs = np.linspace(min(ns), max(ns), 50)
        ax.plot(xs, np.exp(fit.intercept) * xs ** fit.w_hat, "--",
                label=f"fit slope {fit.w_hat:.2f}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("m*/N")
    ax.legend(fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=130)
    plt.close(fig)
    return path


def save_entropy_figure(rows: Sequence[dict], path: Path) -> Path:
    """Packing/covering estimates per ``k`` with the baseline shapes."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ks = [r["k"] for r in rows]
    ax.plot(ks, [r["lower"] for r in rows], "o-", label="packing lower")
    ax.plot(ks, [r["upper"] for r in rows], "s-", label="covering upper")
    ax.plot(ks, [r["baseline_cross"] for r in rows], "--", label="cross baseline")
    ax.plot(ks, [r["baseline_nikolskii"] for r in rows], ":", label="uniform-bound baseline")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("radius")
    ax.legend(fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=130)
    plt.close(fig)
    return path


def save_nikolskii_figure(rows: Sequence[dict], path: Path) -> Path:
    """Measured constants against the predicted growth across ``n``."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ns = [r["n"] for r in rows]
    ax.plot(ns, [r["M_lower"] for r in rows], "o-", label="measured lower bound")
    ax.plot(ns, [r["predicted"] for r in rows], "--", label="predicted shape")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("constant")
    ax.legend(fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=130)
    plt.close(fig)
    return path


def save_fit_figure(records: Sequence[ScalingRecord], fit: ExponentFit,
                    path: Path) -> Path:
    return save_scaling_figure(records, fit, path)
