"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel runs once before timing so numba compilation is excluded.  The
script also reports the largest difference between the two outputs.
"""

import argparse
import math
import sys
import timeit

import numpy as np

from photomaj import _kernels
from photomaj.dist import coherent_distribution, thermal_distribution


def cases():
    thermal = np.ascontiguousarray(thermal_distribution(10.0).probs)
    wide = np.ascontiguousarray(thermal_distribution(60.0).probs)
    coherent = np.ascontiguousarray(coherent_distribution(400.0).probs)

    dim = 1024
    n = np.arange(dim, dtype=np.float64)
    squeeze = 0.5 * 0.8 * np.sqrt((n[:-2] + 1) * (n[:-2] + 2))
    displace = 2.0 * np.sqrt(n[:-1] + 1)
    vac = np.zeros(dim)
    vac[0] = 1.0

    def expm_args(coef, k):
        steps = max(1, int(math.ceil(2.0 * np.abs(coef).max())))
        return coef, k, vac, steps, 1e-18

    return [
        ("difference distribution, n_max=%d" % (thermal.size - 1), "difference_distribution", (thermal,)),
        ("difference distribution, n_max=%d" % (wide.size - 1), "difference_distribution", (wide,)),
        ("compensated cumsum, %d terms" % coherent.size, "compensated_cumsum", (coherent,)),
        ("squeeze propagation, dim=%d" % dim, "skew_band_expm_apply", expm_args(squeeze, 2)),
        ("displacement propagation, dim=%d" % dim, "skew_band_expm_apply", expm_args(displace, 1)),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy path can run", file=sys.stderr)
        return 1

    print(f"{'kernel':<42}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}{'max |diff|':>13}")
    for label, name, call_args in cases():
        fast = getattr(_kernels, f"numba_{name}")
        slow = getattr(_kernels, f"numpy_{name}")
        a, b = fast(*call_args), slow(*call_args)
        diff = float(np.max(np.abs(a - b)))
        t_fast = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        print(f"{label:<42}{t_slow * 1e3:>12.3f}{t_fast * 1e3:>12.3f}{t_slow / t_fast:>9.1f}x{diff:>13.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
