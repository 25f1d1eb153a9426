"""SVG charts of verification series."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")  # Non-interactive backend for headless rendering

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.figure import Figure

from extscale.core.models import Series, VerificationReport

# stable element ids across runs
matplotlib.rcParams["svg.hashsalt"] = "extscale"


@dataclass(frozen=True)
class ChartConfig:
    """Configuration for chart appearance.

    Attributes:
        width: Figure width in inches
        height: Figure height in inches
        dpi: Resolution in dots per inch
        style: Matplotlib style name
    """

    width: int = 10
    height: int = 6
    dpi: int = 100
    style: str = "seaborn-v0_8-whitegrid"


class _BaseChart:
    """Base class for all chart types."""

    kind: str = ""
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    logx: bool = False

    def __init__(self, config: ChartConfig | None = None) -> None:
        self._config = config or ChartConfig()
        self._fig: Figure | None = None

    def _create_figure(self) -> tuple[Figure, Any]:
        """Create a new matplotlib figure with configured size."""
        plt.style.use(self._config.style)
        fig, ax = plt.subplots(
            figsize=(self._config.width, self._config.height),
            dpi=self._config.dpi,
        )
        self._fig = fig
        return fig, ax

    def plot(self, series: Sequence[Series], title: str | None = None) -> Figure:
        """Plot every series of this chart's kind as one line.

        Raises:
            ValueError: If no series of the kind is given
        """
        selected = [s for s in series if s.kind == self.kind]
        if not selected:
            raise ValueError(f"Cannot plot empty data: no '{self.kind}' series")

        fig, ax = self._create_figure()
        colors = plt.cm.tab10(np.linspace(0, 1, max(len(selected), 1)))
        for idx, s in enumerate(selected):
            ax.plot(s.x, s.y, marker="o", linewidth=1.5, color=colors[idx], label=s.label)
        if self.logx:
            ax.set_xscale("log", base=2)
        ax.set_title(title or self.title, fontsize=14, fontweight="bold")
        ax.set_xlabel(self.xlabel)
        ax.set_ylabel(self.ylabel)
        ax.legend(loc="best", fontsize=8)
        ax.grid(True, alpha=0.3)
        return fig

    def save(self, filepath: Path) -> None:
        """Save the current figure to a file.

        Args:
            filepath: Output path (SVG by suffix; PNG and PDF also work)
        """
        if self._fig is None:
            raise RuntimeError("No chart to save. Call plot() first.")
        filepath.parent.mkdir(parents=True, exist_ok=True)
        self._fig.savefig(
            filepath, bbox_inches="tight", dpi=self._config.dpi, metadata={"Date": None}
        )

    def close(self) -> None:
        if self._fig is not None:
            plt.close(self._fig)
            self._fig = None


class NormRatioChart(_BaseChart):
    """Mean norm ratio ||u||_phi / ||u||_(s1) against the lattice cutoff K.

    Flat curves show that the chain constants do not depend on K.
    """

    kind = "norm_ratio"
    title = "Norm ratio vs lattice cutoff"
    xlabel = "K"
    ylabel = "mean ||u||_phi / ||u||_(s1)"
    logx = True


class PartialSumChart(_BaseChart):
    """Log partial integrals of the C^k criterion over doublings of ln t."""

    kind = "partial_sums"
    title = "Criterion partial sums"
    xlabel = "doubling j (ln t <= 2^j)"
    ylabel = "ln partial integral"


class IndexChart(_BaseChart):
    """Estimated Matuszewska indices against the longer window length."""

    kind = "index"
    title = "Index estimates vs window length"
    xlabel = "window ln(lambda)"
    ylabel = "estimated index"
    logx = True


CHARTS: dict[str, type[_BaseChart]] = {
    "norm_ratio": NormRatioChart,
    "partial_sums": PartialSumChart,
    "index": IndexChart,
}


def render_charts(
    reports: Sequence[VerificationReport], out_dir: Path | str, config: ChartConfig | None = None
) -> list[Path]:
    """Write one SVG per series kind present in the reports.

    Returns:
        Paths of the written charts, in CHARTS order
    """
    series = [s for report in reports for s in report.series]
    written = []
    for kind, chart_cls in CHARTS.items():
        if not any(s.kind == kind for s in series):
            continue
        chart = chart_cls(config)
        chart.plot(series)
        path = Path(out_dir) / f"{kind}.svg"
        chart.save(path)
        chart.close()
        written.append(path)
    return written
