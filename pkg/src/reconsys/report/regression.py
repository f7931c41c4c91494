"""Closed-form least squares for the bed-count vs CVE-count relation."""

from __future__ import annotations

from dataclasses import dataclass


class DegenerateRegressionError(ValueError):
    """Too few points or zero variance in x: no line to fit."""


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    n: int
    r_squared: float


def fit_regression(points: list[tuple[float, float]]) -> RegressionResult:
    """Ordinary least squares of y on x.  Degenerate inputs raise,
    they never produce NaN."""
    n = len(points)
    if n < 2:
        raise DegenerateRegressionError("need at least two points")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    if sxx == 0.0:
        raise DegenerateRegressionError("all x values identical")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in points)
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    # constant y is fit exactly by the horizontal line
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RegressionResult(slope=slope, intercept=intercept, n=n, r_squared=r_squared)
