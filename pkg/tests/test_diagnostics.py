import numpy as np
import pytest
from scipy.signal import lfilter

from garchmc import diagnostics, samplers
from garchmc.exceptions import DegenerateSeriesError, NoPlateauError


def ar1(phi, n, seed=0):
    eps = np.random.default_rng(seed).standard_normal(n)
    return lfilter([1.0], [1.0, -phi], eps)


def acf_oracle(x, t_max):
    """Independent double-loop autocorrelation estimate."""
    x = np.asarray(x, float)
    n = x.size
    xc = x - x.mean()
    var = np.dot(xc, xc) / n
    out = np.empty(t_max + 1)
    for t in range(t_max + 1):
        out[t] = np.dot(xc[: n - t], xc[t:]) / (n - t) / var
    return out


class TestAcf:
    def test_lag_zero_is_exactly_one(self):
        series = diagnostics.acf(np.random.default_rng(1).standard_normal(1000), 50)
        assert series.values[0] == 1.0

    def test_alternating_series(self):
        x = np.tile([1.0, -1.0], 500)
        series = diagnostics.acf(x, 10)
        assert series.values[1] == pytest.approx(-1.0, abs=1e-9)

    def test_white_noise_is_uncorrelated(self):
        x = np.random.default_rng(2).standard_normal(1000000)
        series = diagnostics.acf(x, 100)
        assert np.max(np.abs(series.values[1:])) < 0.005

    def test_ar1_matches_geometric_decay(self):
        x = ar1(0.9, 1000000, seed=3)
        series = diagnostics.acf(x, 20)
        np.testing.assert_allclose(series.values, 0.9 ** np.arange(21), atol=0.02)

    def test_matches_brute_force_oracle(self):
        x = ar1(0.8, 4000, seed=4)
        series = diagnostics.acf(x, 100)
        np.testing.assert_allclose(series.values, acf_oracle(x, 100), atol=1e-10)

    def test_bounded_by_one(self):
        x = ar1(0.95, 20000, seed=5)
        series = diagnostics.acf(x, 500)
        assert np.max(np.abs(series.values)) <= 1.0 + 1e-9

    def test_zero_variance_raises(self):
        with pytest.raises(DegenerateSeriesError):
            diagnostics.acf(np.ones(100), 10)

    def test_bad_lag_bound_raises(self):
        with pytest.raises(ValueError):
            diagnostics.acf(np.random.default_rng(6).standard_normal(10), 10)


class TestTauInt:
    def test_iid_series(self):
        x = np.random.default_rng(7).standard_normal(1000000)
        tau, t_star, err = diagnostics.tau_int(diagnostics.acf(x, 100))
        assert 2 * tau == pytest.approx(1.0, abs=0.1)

    def test_ar1_geometric_sum(self):
        x = ar1(0.9, 1000000, seed=8)
        tau, t_star, err = diagnostics.tau_int(diagnostics.acf(x, 1000))
        assert tau == pytest.approx(9.5, rel=0.10)
        assert err < tau

    def test_no_plateau_carries_lower_bound(self):
        x = ar1(0.999, 5000, seed=9)
        with pytest.raises(NoPlateauError) as exc:
            diagnostics.tau_int(diagnostics.acf(x, 100))
        assert exc.value.lower_bound > 1.0
        assert exc.value.t_max == 100

    def test_thinning_reduces_tau(self):
        x = ar1(0.9, 1000000, seed=10)
        tau_full, _, _ = diagnostics.tau_int(diagnostics.acf(x, 1000))
        tau_thin, _, _ = diagnostics.tau_int(diagnostics.acf(x[::10], 1000))
        assert tau_thin < tau_full

    def test_duplication_roughly_doubles_tau(self):
        x = ar1(0.9, 200000, seed=11)
        tau, _, _ = diagnostics.tau_int(diagnostics.acf(x, 1000))
        tau_dup, _, _ = diagnostics.tau_int(diagnostics.acf(np.repeat(x, 2), 2000))
        assert tau_dup / tau == pytest.approx(2.0, rel=0.15)


def chain_from(draws, accepted=None):
    k = draws.shape[0]
    return samplers.Chain(
        draws=draws,
        accepted=np.ones(k, bool) if accepted is None else accepted,
        log_posts=np.zeros(k),
    )


class TestSummarize:
    def test_iid_chain_stat_error(self):
        rng = np.random.default_rng(12)
        draws = 0.5 + 0.1 * rng.standard_normal((50000, 3))
        rep = diagnostics.summarize(chain_from(draws))
        for name in ("alpha", "beta", "omega"):
            p = rep.params[name]
            assert p.stat_error == pytest.approx(p.stddev / np.sqrt(50000), rel=0.15)
            assert p.two_tau_int >= 1.0 - 1e-6 - 0.15

    def test_report_shape_and_keys(self):
        rng = np.random.default_rng(13)
        draws = rng.standard_normal((5000, 3)) * [0.01, 0.02, 0.005] + [0.03, 0.94, 0.011]
        rep = diagnostics.summarize(chain_from(draws), metadata={"sampler": "adaptive"})
        d = rep.to_dict()
        assert d["sampler"] == "adaptive"
        for name in ("alpha", "beta", "omega"):
            entry = d["params"][name]
            for key in ("mean", "stddev", "stat_error", "two_tau_int", "two_tau_int_err"):
                assert key in entry
        text = rep.to_text()
        for row in ("mean", "standard deviation", "statistical error", "2tau_int"):
            assert row in text

    def test_short_chain_rejected(self):
        draws = np.random.default_rng(14).standard_normal((500, 3))
        with pytest.raises(ValueError):
            diagnostics.summarize(chain_from(draws))

    def test_no_plateau_flagged_not_fatal(self):
        x = ar1(0.9995, 2000, seed=15)
        draws = np.column_stack([x, x + 1.0, x + 2.0])
        rep = diagnostics.summarize(chain_from(draws))
        assert not rep.params["alpha"].plateau_found
        assert rep.params["alpha"].two_tau_int > 0


def test_default_lag_bound_caps():
    x = np.random.default_rng(16).standard_normal(100000)
    bound = diagnostics.default_lag_bound(x)
    assert 1 <= bound <= 10000
