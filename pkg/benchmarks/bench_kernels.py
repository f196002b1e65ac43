"""Compare the compiled field kernel against the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""
import time

import numpy as np

from vortexw._kernels import BACKEND, grad_phi_field, grad_phi_field_numpy


def bench(n_points: int, repeats: int = 5) -> None:
    rng = np.random.default_rng(7)
    z = 0.95 * np.sqrt(rng.uniform(0, 1, n_points)) * np.exp(
        1j * rng.uniform(0, 2 * np.pi, n_points)
    )
    alpha = np.array([0.3 + 0.2j, -0.4 + 0.1j, 0.1 - 0.5j])
    degrees = np.array([1.0, 1.0, 2.0])
    alpha0 = np.array([0.2 + 0.0j, -0.2 + 0.0j, 0.0 + 0.3j])
    gprime = rng.normal(size=64) + 1j * rng.normal(size=64)

    def time_it(fn):
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            out = fn(z, alpha, degrees, alpha0, degrees, gprime)
            best = min(best, time.perf_counter() - t0)
        return best, out

    t_ref, out_ref = time_it(grad_phi_field_numpy)
    t_fast, out_fast = time_it(grad_phi_field)
    err = np.max(np.abs(out_fast - out_ref))
    print(
        f"n={n_points:>8d}  numpy {t_ref * 1e3:8.2f} ms  "
        f"{BACKEND} {t_fast * 1e3:8.2f} ms  "
        f"speedup {t_ref / t_fast:5.2f}x  max|diff| {err:.2e}"
    )


if __name__ == "__main__":
    print(f"active backend: {BACKEND}")
    for n in (10_000, 100_000, 1_000_000):
        bench(n)
