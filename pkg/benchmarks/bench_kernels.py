"""Compare the compiled and numpy scalar kernels.

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]

Reports the best-of-``repeat`` wall time per call and the largest relative
disagreement between backends.
"""
import argparse
import timeit

import numpy as np

from opmeans import kernels
from opmeans.measures import geometric_measure

CASES = [
    ("arithmetic", kernels.ARITHMETIC, 0.3, 0.0),
    ("geometric", kernels.GEOMETRIC, 0.5, 0.0),
    ("harmonic", kernels.HARMONIC, 0.7, 0.0),
    ("logarithmic", kernels.LOGARITHMIC, 0.0, 0.0),
    ("power_quasi", kernels.POWER_QUASI, -0.4, 0.6),
]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000, help="points per call")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--nodes", type=int, default=200, help="quadrature nodes for measure_pairs")
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels unavailable; timing the numpy fallback only")
    rng = np.random.default_rng(0)
    x = np.exp(rng.uniform(-9, 9, args.n))
    y = np.exp(rng.uniform(-9, 9, args.n))

    print(f"{'kernel':<24}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}{'max rel diff':>14}")
    for label, code, p0, p1 in CASES:
        times, outs = {}, {}
        for name, mod in impls.items():
            times[name] = best(lambda: mod.family_eval(code, p0, p1, x), args.repeat)
            outs[name] = mod.family_eval(code, p0, p1, x)
        _row(label, impls, times, outs)

    m = geometric_measure(0.5, args.nodes)
    lam, w = m.lam, m.w
    small = max(args.n // 100, 1)  # nodes x points work per call
    xs, ys = x[:small].copy(), y[:small].copy()
    times, outs = {}, {}
    for name, mod in impls.items():
        times[name] = best(lambda: mod.measure_pairs(0.0, 0.0, lam, w, xs, ys), args.repeat)
        outs[name] = mod.measure_pairs(0.0, 0.0, lam, w, xs, ys)
    _row(f"measure_pairs({args.nodes})", impls, times, outs)


def _row(label, impls, times, outs):
    cells = "".join(f"{times[name] * 1e3:>10.3f}ms" for name in impls)
    if "cython" in impls:
        speed = f"{times['python'] / times['cython']:>9.1f}x"
        ref = np.abs(outs["python"]) + 1e-300
        diff = float(np.max(np.abs(outs["cython"] - outs["python"]) / ref))
        print(f"{label:<24}{cells}{speed}{diff:>14.2e}")
    else:
        print(f"{label:<24}{cells}")


if __name__ == "__main__":
    main()
