"""Time the compiled and pure-Python moment kernels on the same workloads.

    python3 benchmarks/bench_quadrature.py [--repeat N] [--rel-tol F]

Prints one row per workload with the best-of-N time per moment pair for
each kernel, the speed-up, and the largest difference between their results.
"""
import argparse
import sys
import timeit

import numpy as np

from fuzzyladder import _backend
from fuzzyladder.distributions import DistributionSpec
from fuzzyladder.moments import moments_quadrature

WORKLOADS = [
    ("lorentzian 0.001", DistributionSpec.lorentzian(1e-3)),
    ("lorentzian 0.3", DistributionSpec.lorentzian(0.3)),
    ("lorentzian 50", DistributionSpec.lorentzian(50.0)),
    ("uniform 0.5", DistributionSpec.uniform(0.5)),
    ("uniform 3", DistributionSpec.uniform(3.0)),
    ("gaussian 0.2", DistributionSpec.gaussian(0.2)),
    ("gaussian 2", DistributionSpec.gaussian(2.0)),
    ("tabulated 401 pts", DistributionSpec.tabulated(np.linspace(-1, 1, 401), 1 - np.abs(np.linspace(-1, 1, 401)))),
]


def best_time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10_000:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rel-tol", type=float, default=1e-10)
    args = ap.parse_args(argv)
    if "cython" not in _backend.KERNELS:
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)
        return 1
    kernels = {name: _backend.get_kernel(name) for name in ("cython", "python")}
    print(f"{'workload':<20}{'cython ms':>12}{'python ms':>12}{'speed-up':>10}{'max |diff|':>12}")
    for label, spec in WORKLOADS:
        times, results = {}, {}
        for name, kern in kernels.items():
            def run(kern=kern):
                return moments_quadrature(spec, args.rel_tol, kernel=kern)
            results[name] = run()
            times[name] = best_time(run, args.repeat)
        diff = max(abs(results["cython"].I0 - results["python"].I0),
                   abs(results["cython"].I1 - results["python"].I1))
        print(f"{label:<20}{times['cython'] * 1e3:>12.3f}{times['python'] * 1e3:>12.3f}"
              f"{times['python'] / times['cython']:>10.1f}{diff:>12.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
