"""Survey statistics, regression, cohorts and exports."""

from .cohorts import CohortStats, EntityCveCount, cohort_average
from .exports import geo_feature_collection, geo_points, write_geo_csv, write_geojson
from .regression import DegenerateRegressionError, RegressionResult, fit_regression
from .rounding import fmt_number, fmt_percent, round_half_up
from .stats import (
    StatsBundle,
    VersionHistogram,
    banner_group_distribution,
    compute_stats,
    record_key,
    version_distribution,
)

__all__ = [
    "CohortStats",
    "DegenerateRegressionError",
    "EntityCveCount",
    "RegressionResult",
    "StatsBundle",
    "VersionHistogram",
    "banner_group_distribution",
    "cohort_average",
    "compute_stats",
    "fit_regression",
    "fmt_number",
    "fmt_percent",
    "geo_feature_collection",
    "geo_points",
    "record_key",
    "round_half_up",
    "version_distribution",
    "write_geo_csv",
    "write_geojson",
]
