"""Autocorrelation functions, integrated autocorrelation times, and the
per-parameter summary report.

tau_int(T) = 1/2 + sum_{i<=T} ACF(i); the reported value is read at the
self-consistent window T* = smallest T with T >= c*tau_int(T).
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import next_fast_len

from .exceptions import DegenerateSeriesError, NoPlateauError

#: Hard cap on the lag bound used by summarize().
LAG_CAP = 10000
DEFAULT_WINDOW_FACTOR = 5.0
JACKKNIFE_BLOCKS = 10

PARAM_NAMES = ("alpha", "beta", "omega")


@dataclass(frozen=True)
class AcfSeries:
    """ACF(t) for t = 0..t_max plus the source series length."""

    values: np.ndarray
    n: int

    @property
    def t_max(self):
        return self.values.size - 1


def acf(x, t_max):
    """Autocorrelation function up to lag t_max.

    Lag-t autocovariances are averaged over the N-t available pairs and
    normalized by the full-series variance, so ACF(0) = 1 exactly.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    t_max = int(t_max)
    if not n > t_max >= 1:
        raise ValueError(f"need series length > t_max >= 1, got N={n}, t_max={t_max}")
    xc = x - x.mean()
    nfft = next_fast_len(2 * n)
    f = np.fft.rfft(xc, nfft)
    sums = np.fft.irfft(f * np.conj(f), nfft)[: t_max + 1]
    var = sums[0] / n
    if not var > 0.0 or not np.isfinite(var):
        raise DegenerateSeriesError("series variance is zero or non-finite")
    acov = sums / (n - np.arange(t_max + 1))
    return AcfSeries(values=acov / var, n=n)


def tau_int(acf_series, window_factor=DEFAULT_WINDOW_FACTOR):
    """Integrated autocorrelation time read at the self-consistent window.

    Returns (tau, T*, uncertainty) with the standard windowed-estimator
    variance sqrt(2*(2T*+1)/N) * tau. Raises NoPlateauError (carrying the
    partial sum at t_max as a lower bound) when no window qualifies.
    """
    vals = acf_series.values
    partial = 0.5 + np.cumsum(vals[1:])  # tau_int(T) for T = 1..t_max
    lags = np.arange(1, vals.size)
    ok = np.nonzero(lags >= window_factor * partial)[0]
    if ok.size == 0:
        raise NoPlateauError(
            f"no window T <= {acf_series.t_max} satisfies T >= {window_factor}*tau_int(T)",
            lower_bound=float(partial[-1]),
            t_max=acf_series.t_max,
        )
    t_star = int(lags[ok[0]])
    tau = float(partial[ok[0]])
    err = math.sqrt(2.0 * (2.0 * t_star + 1.0) / acf_series.n) * abs(tau)
    return tau, t_star, err


def default_lag_bound(x, cap=LAG_CAP):
    """min(N/10, 10 * first lag with ACF < 0.01), capped."""
    n = np.asarray(x).size
    t_hi = min(n // 10, cap)
    if t_hi < 1:
        raise ValueError("series too short for autocorrelation analysis")
    series = acf(x, t_hi)
    below = np.nonzero(series.values[1:] < 0.01)[0]
    if below.size:
        t_hi = min(t_hi, 10 * (int(below[0]) + 1))
    return max(t_hi, 1)


def _jackknife_tau_err(x, window_factor):
    """Blocked jackknife error of tau_int over 10 contiguous segments."""
    n = x.size
    if n < 20 * JACKKNIFE_BLOCKS:
        return float("nan")
    edges = np.linspace(0, n, JACKKNIFE_BLOCKS + 1, dtype=int)
    estimates = []
    for i in range(JACKKNIFE_BLOCKS):
        sub = np.concatenate([x[: edges[i]], x[edges[i + 1]:]])
        try:
            t, _, _ = tau_int(acf(sub, default_lag_bound(sub)), window_factor)
        except (NoPlateauError, DegenerateSeriesError):
            return float("nan")
        estimates.append(t)
    estimates = np.array(estimates)
    m = JACKKNIFE_BLOCKS
    return float(np.sqrt((m - 1.0) / m * np.sum((estimates - estimates.mean()) ** 2)))


@dataclass(frozen=True)
class ParamSummary:
    mean: float
    stddev: float
    stat_error: float
    two_tau_int: float
    two_tau_int_err: float
    two_tau_int_err_jk: float
    t_star: int
    plateau_found: bool


@dataclass(frozen=True)
class DiagnosticsReport:
    """Per-parameter posterior summary plus overall acceptance."""

    params: dict
    acceptance: float
    n_draws: int
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "acceptance": self.acceptance,
            "n_draws": self.n_draws,
            "params": {},
        }
        out.update(self.metadata)
        for name, s in self.params.items():
            out["params"][name] = {
                "mean": s.mean,
                "stddev": s.stddev,
                "stat_error": s.stat_error,
                "two_tau_int": s.two_tau_int,
                "two_tau_int_err": s.two_tau_int_err,
                "two_tau_int_err_jk": s.two_tau_int_err_jk,
                "t_star": s.t_star,
                "plateau_found": s.plateau_found,
            }
        return out

    def to_text(self, title="Posterior summary"):
        names = list(self.params)
        rows = [
            ("mean", [f"{self.params[n].mean:.5g}" for n in names]),
            ("standard deviation", [f"{self.params[n].stddev:.3g}" for n in names]),
            ("statistical error", [f"{self.params[n].stat_error:.2g}" for n in names]),
            ("2tau_int", [
                f"{self.params[n].two_tau_int:.3g} +/- {self.params[n].two_tau_int_err:.2g}"
                + ("" if self.params[n].plateau_found else " (no plateau; lower bound)")
                for n in names
            ]),
        ]
        width = max(len(r[0]) for r in rows) + 2
        col = max(12, max(len(v) for _, vals in rows for v in vals) + 2)
        lines = [title, " " * width + "".join(n.ljust(col) for n in names)]
        for label, vals in rows:
            lines.append(label.ljust(width) + "".join(v.ljust(col) for v in vals))
        lines.append(f"acceptance{'':{width - 10}}{self.acceptance:.4f}")
        lines.append(f"draws{'':{width - 5}}{self.n_draws}")
        return "\n".join(lines)


def summarize(chain, param_names=PARAM_NAMES, window_factor=DEFAULT_WINDOW_FACTOR,
              metadata=None):
    """Per-parameter mean/stddev/stat-error/2tau_int report for a chain."""
    draws = chain.draws
    k = draws.shape[0]
    if k < 1000:
        raise ValueError(f"chain too short to summarize: {k} < 1000")
    params = {}
    for j, name in enumerate(param_names):
        x = draws[:, j]
        mean = float(x.mean())
        std = float(x.std())
        try:
            series = acf(x, default_lag_bound(x))
        except DegenerateSeriesError:
            params[name] = ParamSummary(mean, std, 0.0, float("nan"), float("nan"),
                                        float("nan"), 0, False)
            continue
        try:
            tau, t_star, err = tau_int(series, window_factor)
            plateau = True
        except NoPlateauError as exc:
            tau, t_star, plateau = exc.lower_bound, exc.t_max, False
            err = math.sqrt(2.0 * (2.0 * t_star + 1.0) / k) * abs(tau)
        stat_error = std * math.sqrt(2.0 * tau / k)
        err_jk = _jackknife_tau_err(x, window_factor)
        params[name] = ParamSummary(
            mean=mean, stddev=std, stat_error=stat_error,
            two_tau_int=2.0 * tau, two_tau_int_err=2.0 * err,
            two_tau_int_err_jk=2.0 * err_jk if math.isfinite(err_jk) else float("nan"),
            t_star=t_star, plateau_found=plateau,
        )
    return DiagnosticsReport(
        params=params,
        acceptance=chain.acceptance_rate,
        n_draws=k,
        metadata=metadata or {},
    )
