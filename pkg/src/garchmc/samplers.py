"""Random-walk Metropolis, independence MH, and the adaptive driver.

The kernels are dimension-agnostic: the target is any callable returning a
log-density (or ``model.LOG_ZERO`` outside its support) for a 1-D parameter
array. The adaptive driver wires them to the GARCH posterior.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import model, proposal
from .exceptions import DegenerateSampleError, TuningFailureError
from .rng import named_rng

LOG_ZERO = model.LOG_ZERO

#: Acceptance band used by step-size tuning (floor comes from the config).
TUNE_ACCEPT_CEIL = 0.85
TUNE_BLOCK_STEPS = 500
TUNE_MAX_BLOCKS = 20


@dataclass
class Chain:
    """Ordered draws with parallel accept flags and cached log-posteriors."""

    draws: np.ndarray       # (k, p)
    accepted: np.ndarray    # (k,) bool
    log_posts: np.ndarray   # (k,)

    def __len__(self):
        return self.draws.shape[0]

    @property
    def acceptance_rate(self):
        return float(self.accepted.mean())


@dataclass(frozen=True)
class AdaptiveSchedule:
    """Run schedule; defaults follow the empirical protocol."""

    burn_in: int = 3000
    pilot: int = 1000
    refit_interval: int = 1000
    total: int = 100000

    def __post_init__(self):
        if min(self.burn_in, self.pilot, self.refit_interval, self.total) <= 0:
            raise ValueError("all schedule fields must be positive")
        if self.refit_interval > self.total:
            raise ValueError("refit_interval must not exceed total")


@dataclass(frozen=True)
class MetropolisConfig:
    """Per-parameter uniform proposal half-window widths."""

    d: np.ndarray = field(default_factory=lambda: np.full(3, 0.05))
    target_acceptance_floor: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "d", np.asarray(self.d, dtype=np.float64))
        if np.any(self.d <= 0.0):
            raise ValueError("all proposal widths must be positive")
        if not 0.0 < self.target_acceptance_floor < 1.0:
            raise ValueError("target_acceptance_floor must lie in (0, 1)")


def metropolis_step(current, cfg, target, rng):
    """One random-walk step: theta' = theta + d*(r - 0.5), Metropolis accept."""
    current = np.asarray(current, dtype=np.float64)
    log_p = target(current)
    cand = current + cfg.d * (rng.random(current.size) - 0.5)
    log_p_cand = target(cand)
    if log_p_cand == LOG_ZERO:
        return current, False
    delta = log_p_cand - log_p
    if delta >= 0.0 or rng.random() < math.exp(delta):
        return cand, True
    return current, False


def _rw_chain(theta, log_p, n_steps, d, target, rng):
    """Run n_steps of random walk; returns draws, flags, log-posts, end state."""
    p = theta.size
    draws = np.empty((n_steps, p))
    accepted = np.zeros(n_steps, dtype=bool)
    log_posts = np.empty(n_steps)
    shifts = d * (rng.random((n_steps, p)) - 0.5)
    u = rng.random(n_steps)
    for i in range(n_steps):
        cand = theta + shifts[i]
        log_p_cand = target(cand)
        if log_p_cand != LOG_ZERO:
            delta = log_p_cand - log_p
            if delta >= 0.0 or u[i] < math.exp(delta):
                theta = cand
                log_p = log_p_cand
                accepted[i] = True
        draws[i] = theta
        log_posts[i] = log_p
    return draws, accepted, log_posts, theta, log_p


def tune_metropolis(cfg, target, rng, theta0):
    """Scale d until block acceptance lands in [floor, 0.85].

    Runs 500-step pilot blocks; halves every width when acceptance is below
    the floor, doubles when above the ceiling, gives up after 20 blocks.
    """
    theta = np.asarray(theta0, dtype=np.float64)
    log_p = target(theta)
    d = cfg.d.copy()
    acc = float("nan")
    for _ in range(TUNE_MAX_BLOCKS):
        _, flags, _, theta, log_p = _rw_chain(theta, log_p, TUNE_BLOCK_STEPS, d, target, rng)
        acc = float(flags.mean())
        if cfg.target_acceptance_floor <= acc <= TUNE_ACCEPT_CEIL:
            return replace(cfg, d=d)
        d = d / 2.0 if acc < cfg.target_acceptance_floor else d * 2.0
    raise TuningFailureError(
        f"acceptance {acc:.3f} not in [{cfg.target_acceptance_floor}, {TUNE_ACCEPT_CEIL}] "
        f"after {TUNE_MAX_BLOCKS} blocks", last_acceptance=acc,
    )


def independence_mh_step(current, prop, target, rng):
    """One independence-MH step with the full Hastings correction."""
    current = np.asarray(current, dtype=np.float64)
    log_p = target(current)
    cand = prop.sample(rng)
    log_p_cand = target(cand)
    if log_p_cand == LOG_ZERO:
        return current, False
    delta = (log_p_cand - log_p) + (prop.log_density(current) - prop.log_density(cand))
    if delta >= 0.0 or rng.random() < math.exp(delta):
        return cand, True
    return current, False


def _independence_batch(theta, log_p, log_g, prop, target, n_steps, rng):
    """Run n_steps of independence MH with vectorized candidate generation."""
    cands = prop.sample(rng, n_steps)
    log_g_cands = prop.log_density(cands)
    u = rng.random(n_steps)
    p = theta.size
    draws = np.empty((n_steps, p))
    accepted = np.zeros(n_steps, dtype=bool)
    log_posts = np.empty(n_steps)
    for i in range(n_steps):
        log_p_cand = target(cands[i])
        if log_p_cand != LOG_ZERO:
            delta = (log_p_cand - log_p) + (log_g - log_g_cands[i])
            if delta >= 0.0 or u[i] < math.exp(delta):
                theta = cands[i]
                log_p = log_p_cand
                log_g = log_g_cands[i]
                accepted[i] = True
        draws[i] = theta
        log_posts[i] = log_p
    return draws, accepted, log_posts, theta, log_p, log_g


def sample_independence_chain(target, prop, theta0, n_draws, rng, batch=10000):
    """Fixed-proposal independence MH chain of n_draws steps."""
    theta = np.asarray(theta0, dtype=np.float64)
    log_p = target(theta)
    log_g = float(prop.log_density(theta))
    parts = []
    remaining = n_draws
    while remaining > 0:
        k = min(batch, remaining)
        d, a, lp, theta, log_p, log_g = _independence_batch(
            theta, log_p, log_g, prop, target, k, rng
        )
        parts.append((d, a, lp))
        remaining -= k
    return Chain(
        draws=np.concatenate([p[0] for p in parts]),
        accepted=np.concatenate([p[1] for p in parts]),
        log_posts=np.concatenate([p[2] for p in parts]),
    )


def _initial_theta(y):
    """Stationary, constraint-interior start scaled to the data variance."""
    return np.array([0.05, 0.90, float(np.var(y)) * (1.0 - 0.95)])


def _tuned_config(target, theta0, cfg, rng):
    """Tune scalar widths, rescale per-parameter from a pilot block, retune."""
    cfg = tune_metropolis(cfg, target, rng, theta0)
    log_p = target(theta0)
    draws, _, _, _, _ = _rw_chain(theta0, log_p, 1000, cfg.d, target, rng)
    stds = draws.std(axis=0)
    if np.all(stds > 0.0):
        scale = stds / math.exp(np.mean(np.log(stds)))
        cfg = tune_metropolis(replace(cfg, d=cfg.d * scale), target, rng, theta0)
    return cfg


def _batch_sizes(total, interval):
    sizes = [interval] * (total // interval)
    if total % interval:
        sizes.append(total % interval)
    return sizes


def _rng_state_token(rng):
    """JSON-serializable snapshot of a Generator's bit-generator state."""
    state = rng.bit_generator.state
    return {
        "bit_generator": state["bit_generator"],
        "state": {k: int(v) if np.isscalar(v) else list(map(int, v))
                  for k, v in state["state"].items()},
        "has_uint32": int(state.get("has_uint32", 0)),
        "uinteger": int(state.get("uinteger", 0)),
    }


def _run_metropolis_full(y, sched, cfg=None, seed=0, sigma1_sq=None):
    """run_metropolis plus a resumption checkpoint payload."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    if sigma1_sq is None:
        sigma1_sq = float(np.var(y))
    target = model.make_log_posterior(y, sigma1_sq)
    theta0 = _initial_theta(y)
    cfg = _tuned_config(target, theta0, cfg or MetropolisConfig(), named_rng(seed, "tuning"))

    rng_burn = named_rng(seed, "burnin")
    log_p0 = target(theta0)
    _, _, _, theta, log_p = _rw_chain(theta0, log_p0, sched.burn_in, cfg.d, target, rng_burn)

    rng_samp = named_rng(seed, "sampling")
    parts = []
    trace = []
    for k in _batch_sizes(sched.total, sched.refit_interval):
        d, a, lp, theta, log_p = _rw_chain(theta, log_p, k, cfg.d, target, rng_samp)
        parts.append((d, a, lp))
        trace.append(float(a.mean()))
    chain = Chain(
        draws=np.concatenate([p[0] for p in parts]),
        accepted=np.concatenate([p[1] for p in parts]),
        log_posts=np.concatenate([p[2] for p in parts]),
    )
    checkpoint = {
        "position": len(chain),
        "theta": theta.tolist(),
        "rng_state": _rng_state_token(rng_samp),
        "proposal": None,
        "schedule": {
            "burn_in": sched.burn_in,
            "pilot": sched.pilot,
            "refit_interval": sched.refit_interval,
            "total": sched.total,
        },
    }
    return chain, np.array(trace), checkpoint


def run_metropolis(y, sched, cfg=None, seed=0, sigma1_sq=None):
    """Tuned random-walk Metropolis run: burn-in discarded, total retained.

    Returns (Chain, acceptance_trace) with one trace entry per
    refit_interval-sized batch of retained draws.
    """
    chain, trace, _ = _run_metropolis_full(y, sched, cfg=cfg, seed=seed, sigma1_sq=sigma1_sq)
    return chain, trace


def run_adaptive(y, sched, nu=10.0, seed=0, sigma1_sq=None, cfg=None, freeze_after=None):
    """Adaptive scheme: tuned Metropolis pilot, then independence MH with the
    Student-t proposal re-fitted every refit_interval draws from all retained
    post-burn-in draws (pilot included).

    Returns (Chain of sched.total independence-MH draws, proposal_history,
    acceptance_trace).
    """
    chain, history, trace, _ = _run_adaptive_full(
        y, sched, nu=nu, seed=seed, sigma1_sq=sigma1_sq, cfg=cfg, freeze_after=freeze_after
    )
    return chain, history, trace


def _run_adaptive_full(y, sched, nu=10.0, seed=0, sigma1_sq=None, cfg=None, freeze_after=None):
    """run_adaptive plus a resumption checkpoint payload."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    if sigma1_sq is None:
        sigma1_sq = float(np.var(y))
    target = model.make_log_posterior(y, sigma1_sq)
    theta0 = _initial_theta(y)
    cfg = _tuned_config(target, theta0, cfg or MetropolisConfig(), named_rng(seed, "tuning"))

    rng_burn = named_rng(seed, "burnin")
    log_p0 = target(theta0)
    _, _, _, theta, log_p = _rw_chain(theta0, log_p0, sched.burn_in, cfg.d, target, rng_burn)

    rng_samp = named_rng(seed, "sampling")
    pilot_draws, _, _, theta, log_p = _rw_chain(theta, log_p, sched.pilot, cfg.d, target, rng_samp)
    acc = proposal.SampleAccumulator(dim=theta.size)
    acc.add_batch(pilot_draws)

    parts = []
    history = []
    trace = []
    prop = None
    log_g = None
    for batch_index, k in enumerate(_batch_sizes(sched.total, sched.refit_interval)):
        if prop is None or freeze_after is None or len(history) < freeze_after:
            try:
                prop = proposal.fit(acc, nu)
            except DegenerateSampleError as exc:
                raise DegenerateSampleError(f"batch {batch_index}: {exc}") from exc
            history.append(prop)
            log_g = float(prop.log_density(theta))
        d, a, lp, theta, log_p, log_g = _independence_batch(
            theta, log_p, log_g, prop, target, k, rng_samp
        )
        acc.add_batch(d)
        parts.append((d, a, lp))
        trace.append(float(a.mean()))
    chain = Chain(
        draws=np.concatenate([p[0] for p in parts]),
        accepted=np.concatenate([p[1] for p in parts]),
        log_posts=np.concatenate([p[2] for p in parts]),
    )
    checkpoint = {
        "position": len(chain),
        "theta": theta.tolist(),
        "rng_state": _rng_state_token(rng_samp),
        "proposal": prop.to_dict() if prop is not None else None,
        "schedule": {
            "burn_in": sched.burn_in,
            "pilot": sched.pilot,
            "refit_interval": sched.refit_interval,
            "total": sched.total,
        },
    }
    return chain, history, np.array(trace), checkpoint
