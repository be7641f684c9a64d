"""Matplotlib rendering of spectral maps and suite summaries.

Figures are written straight to files with pinned metadata so repeated runs
of the same config produce byte-identical images.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Patch

from .spectra import CLASS_COLORS, ESSENTIAL, RESOLVENT, SPECTRUM_NONESSENTIAL, SpectralMap
from .suite import SuiteReport

_PNG_METADATA = {"Software": "toeplab"}

_LABELS = {
    RESOLVENT: "resolvent",
    SPECTRUM_NONESSENTIAL: "spectrum \\ essential spectrum",
    ESSENTIAL: "essential spectrum",
}


def save_spectral_figure(smap: SpectralMap, path: str, title: str = "") -> None:
    """Classified raster with axes in the complex plane and a legend."""
    re0, re1, im0, im1 = smap.raster.bounds
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.imshow(
        smap.class_image(),
        origin="lower",
        extent=(re0, re1, im0, im1),
        interpolation="nearest",
    )
    handles = [
        Patch(facecolor=tuple(v / 255 for v in CLASS_COLORS[kind]), edgecolor="0.3",
              label=_LABELS[kind])
        for kind in (ESSENTIAL, SPECTRUM_NONESSENTIAL, RESOLVENT)
    ]
    for comp in smap.components:
        if comp.representative is not None and comp.index is not None and comp.id > 0:
            ax.annotate(
                f"ind {comp.index}",
                (comp.representative.real, comp.representative.imag),
                ha="center", va="center", fontsize=9,
            )
    ax.legend(handles=handles, loc="upper right", fontsize=8, framealpha=0.9)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=_PNG_METADATA)
    plt.close(fig)


def save_suite_figure(report: SuiteReport, path: str, title: str = "") -> None:
    """One horizontal bar per case, green pass / red fail."""
    names = [c.name for c in report.cases]
    passed = [c.passed for c in report.cases]
    height = max(2.0, 0.22 * len(names) + 1.2)
    fig, ax = plt.subplots(figsize=(8.0, height))
    colors = ["#2ca02c" if ok else "#d62728" for ok in passed]
    ax.barh(range(len(names)), [1.0] * len(names), color=colors, edgecolor="0.2")
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xticks([])
    ax.invert_yaxis()
    n_pass = sum(passed)
    ax.set_title(title or f"suite: {n_pass}/{len(names)} passed")
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=_PNG_METADATA)
    plt.close(fig)
