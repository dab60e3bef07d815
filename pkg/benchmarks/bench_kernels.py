"""Time the numba kernels against their pure-numpy twins.

Runs every hot kernel on a large synthetic profile and a dense radius
grid, once through each backend, and prints a comparison table. Usage:

    python benchmarks/bench_kernels.py [--knots 4000] [--radii 2000000]

The backend dispatch in geopotent.kernels is fixed at import time, so
this script calls the private implementations directly instead of
flipping GEOPOTENT_NO_NUMBA.
"""

import argparse
import time

import numpy as np

from geopotent import kernels


def timeit(fn, *args, repeat=5):
    fn(*args)  # warmup (and jit compile on the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--knots", type=int, default=4000)
    ap.add_argument("--radii", type=int, default=2_000_000)
    ap.add_argument("--refine", type=int, default=10)
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    knots = np.sort(rng.uniform(0.0, 6.371e6, args.knots))
    knots[0] = 0.0
    rho_k = rng.uniform(3000.0, 13000.0, args.knots)
    p_k = np.sort(rng.uniform(0.0, 3.6e11, args.knots))[::-1].copy()

    grid = kernels.refined_grid(knots, args.refine)
    mids = 0.5 * (grid[:-1] + grid[1:])
    rho = np.interp(grid, knots, rho_k)
    rho_mid = np.interp(mids, knots, rho_k)
    p = np.interp(grid, knots, p_k)

    mass = kernels._cumulative_mass_numpy(grid, rho, rho_mid)
    f = np.zeros_like(grid)
    f[1:] = mass[1:] / grid[1:] ** 2

    radii = rng.uniform(0.0, 2e7, args.radii)
    gm, radius, rgp, u_inf = 3.987e14, 6.371e6, 1.156e-6, 9.387e7

    cases = [
        ("cumulative_mass", (grid, rho, rho_mid),
         kernels._cumulative_mass_numpy,
         getattr(kernels, "_cumulative_mass_jit", None)),
        ("integral_m_over_r2", (grid, f, args.refine, 0),
         kernels._integral_blocks_numpy,
         getattr(kernels, "_integral_blocks_jit", None)),
        ("max_abs_gradient", (grid, p),
         kernels._max_abs_gradient_numpy,
         getattr(kernels, "_max_abs_gradient_jit", None)),
        ("field_arrays", (gm, radius, rgp, u_inf, radii),
         kernels._field_arrays_numpy,
         getattr(kernels, "_field_arrays_jit", None)),
    ]

    print(f"numba available: {kernels.USING_NUMBA}")
    print(f"grid points: {grid.size}, field radii: {radii.size}")
    print(f"{'kernel':22s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for name, call_args, numpy_fn, jit_fn in cases:
        t_np = timeit(numpy_fn, *call_args) * 1e3
        if jit_fn is None:
            print(f"{name:22s} {t_np:12.3f} {'-':>12s} {'-':>9s}")
            continue
        t_nb = timeit(jit_fn, *call_args) * 1e3
        print(f"{name:22s} {t_np:12.3f} {t_nb:12.3f} {t_np / t_nb:8.2f}x")


if __name__ == "__main__":
    main()
