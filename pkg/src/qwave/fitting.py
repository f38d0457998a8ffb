"""Scaling records and log-log power-law fits."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ValidationError

DEFAULT_BURN_IN = 16


@dataclass
class ScalingRecord:
    N: int
    cost: float
    unit: str
    success: float = 1.0
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.unit:
            raise ValidationError("scaling record needs a unit tag")
        if self.cost < 0:
            raise ValidationError("cost must be non-negative")
        if not 0.0 <= self.success <= 1.0:
            raise ValidationError("success must lie in [0, 1]")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FitResult:
    exponent: float
    log_intercept: float
    r_squared: float
    n_points: int

    def predict(self, N):
        return np.exp(self.log_intercept) * np.asarray(N, dtype=float) ** self.exponent


def fit_power_law(points, min_size: float = 0) -> FitResult:
    """Least-squares line through (log N, log cost); the slope is the exponent.

    Points with ``N < min_size`` are dropped before fitting.
    """
    pts = [(float(n), float(c)) for n, c in points if n >= min_size]
    if len(pts) < 3:
        raise ValidationError(f"need at least 3 points to fit, got {len(pts)}")
    arr = np.array(pts)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise ValidationError("power-law fit needs strictly positive, finite N and cost")
    if np.unique(arr[:, 0]).size < 3:
        raise ValidationError("need at least 3 distinct N values")
    x = np.log(arr[:, 0])
    y = np.log(arr[:, 1])
    xm, ym = x.mean(), y.mean()
    sxx = np.sum((x - xm) ** 2)
    slope = np.sum((x - xm) * (y - ym)) / sxx
    intercept = ym - slope * xm
    ss_res = np.sum((y - (intercept + slope * x)) ** 2)
    ss_tot = np.sum((y - ym) ** 2)
    r2 = 1.0 if ss_tot == 0 else float(np.clip(1.0 - ss_res / ss_tot, 0.0, 1.0))
    return FitResult(float(slope), float(intercept), r2, len(pts))


def fit_records(records, burn_in: float = DEFAULT_BURN_IN) -> FitResult:
    return fit_power_law([(r.N, r.cost) for r in records], min_size=burn_in)
