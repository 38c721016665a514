"""Post-hoc figures from codefusion campaign logs, strictly via files."""

__version__ = "0.1.0"

from .figures import (
    plot_average_distance,
    plot_probability_comparison,
    plot_weight_histograms,
)
from .loader import CampaignLog, SchemaError, load_brute_force_report, load_histogram_csv

__all__ = [
    "CampaignLog",
    "SchemaError",
    "load_brute_force_report",
    "load_histogram_csv",
    "plot_average_distance",
    "plot_probability_comparison",
    "plot_weight_histograms",
]
