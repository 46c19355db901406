"""Numba vs pure-numpy timings for the hot kernels and one probing run.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each kernel runs once untimed on both paths (JIT compile, caches), then
``--repeat`` times; the best time is reported together with a check that
both paths returned the same array.
"""
import argparse
import time

import numpy as np

from domainlearn import _accel, kernels
from domainlearn.classifiers import train
from domainlearn.data import generate_banana
from domainlearn.evaluation import boundary_signed_distances


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def run_both(fn, repeat):
    rows = {}
    for flag in (True, False):
        previous = _accel.set_enabled(flag)
        try:
            fn()  # warm-up
            rows[flag] = best_time(fn, repeat)
        finally:
            _accel.set_enabled(previous)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(0)
    test = rng.normal(size=(400, 2))
    probes = rng.normal(size=(400 * 200, 2))
    t_lab = rng.integers(0, 2, 400)
    p_lab = rng.integers(0, 2, probes.shape[0])
    cloud = rng.normal(size=(2000, 2))

    cases = [
        ("knn_opposite 400 x 80000, k=5",
         lambda: kernels.knn_opposite(test, t_lab, probes, p_lab, 5)),
        ("nn_distances 2000 points", lambda: kernels.nn_distances(cloud)),
        ("min_distances 80000 x 100", lambda: kernels.min_distances(probes, cloud[:100])),
        ("sq_distances 400 x 2000", lambda: kernels.sq_distances(test, cloud)),
    ]
    banana = generate_banana(50, seed=1)
    held_out = generate_banana(200, seed=2)
    model = train("nm_poly3", banana, seed=0)
    cases.append(("probing, poly3 model, 400 test objects",
                  lambda: boundary_signed_distances(model, held_out).signed_distances))

    print(f"{'case':42s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}  same")
    for name, fn in cases:
        rows = run_both(fn, args.repeat)
        (t_nb, a), (t_np, b) = rows[True], rows[False]
        print(f"{name:42s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}x  {np.array_equal(a, b)}")


if __name__ == "__main__":
    main()
