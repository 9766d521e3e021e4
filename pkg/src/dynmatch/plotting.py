"""Figures for experiment reports. Rendered headless to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC_PARAMS = {
    "axes.spines.right": False,
    "axes.spines.top": False,
    "figure.figsize": (6, 3.5),
    "figure.dpi": 100,
    "font.size": 9,
    "legend.frameon": False,
}


def savefig(fig, path: Path, dpi: int = 150) -> Path:
    fig.savefig(path, dpi=dpi, bbox_inches="tight", pad_inches=0.1, facecolor="w")
    plt.close(fig)
    return path


def plot_streaming_ratios(rows: list[dict], path: Path) -> Path | None:
    pts = [r for r in rows if r.get("ratio") is not None]
    if not pts:
        return None
    with plt.rc_context(RC_PARAMS):
        fig, ax = plt.subplots()
        names = sorted({r["instance"] for r in pts})
        for i, name in enumerate(names):
            ys = [r["ratio"] for r in pts if r["instance"] == name]
            ax.scatter([i] * len(ys), ys, s=8, alpha=0.6)
        ax.axhline(pts[0]["bound"], color="k", lw=0.8, ls="--", label="guaranteed ratio")
        ax.axhline(0.5, color="grey", lw=0.8, ls=":", label="1/2")
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels([n.split(":")[0] + "\n" + n.split(":", 1)[-1] for n in names],
                           fontsize=6, rotation=30, ha="right")
        ax.set_ylabel("size / mu(G)")
        ax.set_ylim(0.45, 1.02)
        ax.legend(loc="lower right")
        return savefig(fig, path)


def plot_dynamic_trace(rows: list[dict], path: Path) -> Path | None:
    if not rows:
        return None
    with plt.rc_context(RC_PARAMS):
        fig, ax = plt.subplots()
        for key in sorted({(r["instance"], r["seed"]) for r in rows}):
            sub = [r for r in rows if (r["instance"], r["seed"]) == key]
            xs = [r["event_index"] for r in sub]
            ax.plot(xs, [r["mu_tilde"] for r in sub], lw=0.8, label=f"estimate (seed {key[1]})")
            exact = [(r["event_index"], r["mu_exact"]) for r in sub if r["mu_exact"] is not None]
            if exact:
                ax.plot(*zip(*exact), lw=0.8, ls="--", label=f"mu(G) (seed {key[1]})")
        ax.set_xlabel("event")
        ax.set_ylabel("matching size")
        ax.legend(loc="best", fontsize=7)
        return savefig(fig, path)
