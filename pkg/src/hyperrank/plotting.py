"""Figures for the gap report."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .certify import GapCertificate  # noqa: E402
from .gkz import SERIES_SPECS  # noqa: E402


def plot_gap_report(certs: Sequence[GapCertificate], path: str | Path, series_order: int | None = None) -> Path:
    """Two panels: volume vs. certified rank per ``d``, and the ``(a, b)`` supports of the truncated series."""
    path = Path(path)
    ds = [c.d for c in certs]
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4))

    ax0.plot(ds, [c.volume for c in certs], "o-", label="vol(A_d)")
    ax0.plot(ds, [c.independence_rank for c in certs], "s-", label="certified rank lower bound")
    ax0.plot(ds, [c.gap_lower_bound for c in certs], "^--", label="gap lower bound")
    ax0.plot(ds, [d - 1 for d in ds], ":", color="grey", label="d - 1")
    ax0.set_xlabel("d")
    ax0.set_ylabel("count")
    ax0.set_xticks(ds)
    ax0.legend(frameon=False, fontsize=8)

    N = series_order if series_order is not None else (certs[0].series_order if certs else 0)
    markers = {1: "o", 2: "x", 3: "+"}
    for i, spec in SERIES_SPECS.items():
        pts = [
            (a, b)
            for a in range(-N, N + 1)
            for b in range(-(N - abs(a)), N - abs(a) + 1)
            if spec.in_region(a, b)
        ]
        if pts:
            xs, ys = zip(*pts)
            ax1.scatter(xs, ys, marker=markers[i], s=18, label=spec.name)
    ax1.set_xlabel("a")
    ax1.set_ylabel("b")
    ax1.set_title(f"series support, |a|+|b| <= {N}", fontsize=9)
    ax1.legend(frameon=False, fontsize=8)

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
