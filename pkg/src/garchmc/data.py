"""Price ingestion, the percent log-return transform, and synthetic data."""
import csv
from dataclasses import dataclass

import numpy as np

from . import model
from .exceptions import DataValidationError, InsufficientDataError
from .rng import named_rng

#: Pre-samples the synthetic generator discards before recording, so the
#: recorded series starts near the stationary distribution.
SYNTHETIC_BURN = 1000


@dataclass(frozen=True)
class PriceSeries:
    """Ordered (date-label, price) observations."""

    labels: tuple
    prices: np.ndarray


@dataclass(frozen=True)
class SyntheticSpec:
    """Configuration for the synthetic GARCH(1,1) generator."""

    true_theta: model.ParamVector
    n: int
    seed: int
    sigma1_sq: float = 1.0


def load_prices(path):
    """Read a two-column CSV of (label, price) rows.

    A header row is auto-detected by attempting to parse the second field of
    the first row as a number. Unparsable or non-positive prices are hard
    errors.
    """
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if not row:
                continue
            if len(row) < 2:
                raise DataValidationError(f"{path}: row {i + 1} has fewer than 2 fields")
            rows.append((i + 1, row[0].strip(), row[1].strip()))
    if rows:
        try:
            float(rows[0][2])
        except ValueError:
            rows = rows[1:]  # header row

    labels = []
    prices = []
    for lineno, label, raw in rows:
        try:
            price = float(raw)
        except ValueError:
            raise DataValidationError(f"{path}: row {lineno}: unparsable price {raw!r}") from None
        if not price > 0.0:
            raise DataValidationError(f"{path}: row {lineno}: non-positive price {price}")
        labels.append(label)
        prices.append(price)
    if len(prices) < 2:
        raise InsufficientDataError(f"{path}: need at least 2 price observations, got {len(prices)}")
    return PriceSeries(labels=tuple(labels), prices=np.array(prices, dtype=np.float64))


def transform_returns(prices):
    """Demeaned percent log-returns: 100*(ln(p_i/p_{i-1}) - mean)."""
    if isinstance(prices, PriceSeries):
        p = prices.prices
    else:
        p = np.asarray(prices, dtype=np.float64)
    if p.size < 2:
        raise InsufficientDataError("need at least 2 prices to form a return")
    if np.any(p <= 0.0) or not np.all(np.isfinite(p)):
        raise DataValidationError("prices must be finite and strictly positive")
    s = np.log(p[1:] / p[:-1])
    return 100.0 * (s - s.mean())


def generate_synthetic(spec):
    """Simulate a GARCH(1,1) return series; deterministic given spec.seed."""
    theta = spec.true_theta
    if not model.check_constraints(theta):
        raise DataValidationError(f"synthetic true_theta violates GARCH constraints: {theta}")
    if spec.n < 1:
        raise DataValidationError("synthetic n must be positive")
    rng = named_rng(spec.seed, "synthetic")
    total = spec.n + SYNTHETIC_BURN
    eps = rng.standard_normal(total)
    y = np.empty(total)
    s = spec.sigma1_sq
    a, b, w = theta.alpha, theta.beta, theta.omega
    for t in range(total):
        if t > 0:
            s = w + a * y[t - 1] ** 2 + b * s
        y[t] = np.sqrt(s) * eps[t]
    return y[SYNTHETIC_BURN:]


def write_returns(path, returns):
    """Dump a return series as a single-column CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("return\n")
        for v in returns:
            fh.write(f"{v:.17g}\n")
