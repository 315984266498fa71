"""Compare the numba kernel against the numpy fallback on the same searches.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends walk identical trees, so node counts must match; the script
fails loudly if they do not.
"""

import argparse
import statistics
import time

from powerfree.davenport import davenport_search, parse_group_spec
from powerfree.primes import build_table
from powerfree.solver import solve

SOLVES = [(3, 30), (3, 39), (4, 40), (5, 40), (6, 40), (2, 60)]
GROUPS = ["2^4", "3^3", "2,2,4", "4^2", "5^2", "6^2"]


def _time(fn, repeat):
    samples, out = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    table = build_table(1000)

    # warm the compiled kernel (loads from the on-disk cache after the first run)
    solve(2, 10, table, jit=True)

    print(f"{'case':<16} {'nodes':>10} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    cases = [(f"rho d={d} N={n}", lambda j, d=d, n=n: solve(d, n, table, jit=j, seed=False),
              lambda r: r.nodes_explored) for d, n in SOLVES]
    cases += [(f"D({g})", lambda j, g=g: davenport_search(parse_group_spec(g), jit=j), lambda r: r.nodes)
              for g in GROUPS]
    for name, run, nodes_of in cases:
        t_jit, a = _time(lambda: run(True), args.repeat)
        t_np, b = _time(lambda: run(False), args.repeat)
        if nodes_of(a) != nodes_of(b):
            raise SystemExit(f"{name}: node counts differ ({nodes_of(a)} vs {nodes_of(b)})")
        print(f"{name:<16} {nodes_of(a):>10} {t_jit:>10.4f} {t_np:>10.4f} {t_np / max(t_jit, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
