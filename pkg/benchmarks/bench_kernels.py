"""Benchmark the compiled recursion kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--n 2000] [--steps 20000]
"""
import argparse
import time

import numpy as np

from garchmc import _kernels_py, data, model, samplers

try:
    from garchmc import _kernels
except ImportError:
    _kernels = None


def time_loglik(kernels, y, repeats):
    theta = (0.05, 0.90, 0.01)
    start = time.perf_counter()
    for _ in range(repeats):
        kernels.log_likelihood(y, *theta, 0.3)
    return (time.perf_counter() - start) / repeats


def time_sampler(y, steps, force_python):
    import importlib
    import os

    if force_python:
        os.environ["GARCHMC_PURE_PYTHON"] = "1"
    else:
        os.environ.pop("GARCHMC_PURE_PYTHON", None)
    import garchmc.backend
    importlib.reload(garchmc.backend)
    importlib.reload(model)
    importlib.reload(samplers)
    sched = samplers.AdaptiveSchedule(burn_in=500, pilot=500, refit_interval=1000, total=steps)
    start = time.perf_counter()
    samplers.run_adaptive(y, sched, seed=1)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=2000, help="return series length")
    parser.add_argument("--steps", type=int, default=20000, help="adaptive draws to time")
    args = parser.parse_args()

    spec = data.SyntheticSpec(model.ParamVector(0.05, 0.9, 0.01), n=args.n, seed=1)
    y = np.ascontiguousarray(data.generate_synthetic(spec))

    print(f"log-likelihood, n={args.n} (per call):")
    t_py = time_loglik(_kernels_py, y, 2000)
    print(f"  python  {t_py * 1e6:9.2f} us")
    if _kernels is not None:
        t_cy = time_loglik(_kernels, y, 2000)
        print(f"  cython  {t_cy * 1e6:9.2f} us   ({t_py / t_cy:.1f}x speedup)")
    else:
        print("  cython  (extension not built)")

    print(f"\nadaptive run, {args.steps} draws on n={args.n}:")
    t_py = time_sampler(y, args.steps, force_python=True)
    print(f"  python  {t_py:9.2f} s")
    if _kernels is not None:
        t_cy = time_sampler(y, args.steps, force_python=False)
        print(f"  cython  {t_cy:9.2f} s   ({t_py / t_cy:.1f}x speedup)")


if __name__ == "__main__":
    main()
