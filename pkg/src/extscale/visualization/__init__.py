"""SVG charts for verification reports."""

from extscale.visualization.charts import (
    CHARTS,
    ChartConfig,
    IndexChart,
    NormRatioChart,
    PartialSumChart,
    render_charts,
)

__all__ = [
    "CHARTS",
    "ChartConfig",
    "IndexChart",
    "NormRatioChart",
    "PartialSumChart",
    "render_charts",
]
