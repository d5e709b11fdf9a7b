"""SVG renderings of the benchmark CSV tables."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .benford import DIGITS, marginal_reference  # noqa: E402

__all__ = ["plot_convergence", "plot_digits"]

_RC = {
    "svg.hashsalt": "nbdisc",
    "svg.fonttype": "path",
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
}
_COLORS = {"mc": "tab:red", "sobol": "tab:blue", "lhs": "tab:green"}
_TITLES = {"nbd_flat": "Flattened array", "nbd_joint": "2D subprojections", "cd2": "CD2"}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)


def plot_convergence(summaries, path) -> None:
    """Mean and interquartile band of each metric against n_points (log-log)."""
    metrics = sorted({s.metric for s in summaries})
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, len(metrics), figsize=(4.5 * len(metrics), 3.6),
                                 squeeze=False)
        for ax, metric in zip(axes[0], metrics):
            for sampler in sorted({s.sampler for s in summaries}):
                rows = sorted((s for s in summaries
                               if s.metric == metric and s.sampler == sampler),
                              key=lambda s: s.n_points)
                if not rows:
                    continue
                ns = [s.n_points for s in rows]
                color = _COLORS.get(sampler)
                ax.plot(ns, [s.mean for s in rows], "o-", color=color, label=sampler)
                ax.fill_between(ns, [s.q25 for s in rows], [s.q75 for s in rows],
                                color=color, alpha=0.2, linewidth=0)
            ax.set_xscale("log", base=2)
            ax.set_yscale("log")
            ax.set_xlabel("$N_s$")
            ax.set_ylabel("NBD" if metric.startswith("nbd") else metric)
            ax.set_title(_TITLES.get(metric, metric))
            ax.legend()
        _save(fig, path)


def plot_digits(digit_rows, path, replicate: int = 0) -> None:
    """Per-sampler digit law conformance for one replicate.

    Top row: the reference law and each dimension's empirical frequencies.
    Bottom row: boxplot, per digit, of the deviations across dimensions.
    """
    ref = marginal_reference().probs
    samplers = sorted({row[0] for row in digit_rows})
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(2, len(samplers), figsize=(4.5 * len(samplers), 6.5),
                                 squeeze=False, sharey="row")
        for col, sampler in enumerate(samplers):
            rows = [r for r in digit_rows if r[0] == sampler and r[1] == replicate]
            n_dims = max(r[2] for r in rows) + 1
            dev = np.zeros((n_dims, 9))
            for _, _, dim, digit, value in rows:
                dev[dim, digit - 1] = value
            top, bottom = axes[0, col], axes[1, col]
            shades = plt.cm.Purples(np.linspace(0.35, 0.9, n_dims))
            for dim in range(n_dims):
                top.plot(DIGITS, ref + dev[dim], "-", color=shades[dim], linewidth=0.8)
            top.plot(DIGITS, ref, "k--", linewidth=1.5, label="log law")
            top.set_title(sampler)
            top.set_xlabel("digit")
            top.legend()
            bottom.boxplot([dev[:, i] for i in range(9)], positions=list(DIGITS))
            bottom.axhline(0.0, color="k", linewidth=0.6)
            bottom.set_xlabel("digit")
        axes[0, 0].set_ylabel("probability")
        axes[1, 0].set_ylabel("deviation")
        _save(fig, path)
