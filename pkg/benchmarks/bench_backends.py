"""Throughput comparison between the compiled kernels and their pure twins.

Runs identical sweep workloads through both kernel modules in one process,
checks the results agree bit for bit, and reports polynomials per second
for each side together with the speedup and the 100k/s throughput target.

Usage:
    python3 benchmarks/bench_backends.py [--p 3 --ext 2] [--n 5] [--m 3]
                                         [--repeat 3]

The pure side is always available; the compiled side is skipped with a
notice if the extension failed to build.
"""

import argparse
import time

from fqprimes import _kernels_py
from fqprimes.backend import (
    MODE_MOBIUS,
    MODE_PRIME,
    MODE_TYPE,
    partition_keys,
    tables_for,
)
from fqprimes.field import Field

try:
    from fqprimes import _kernels
except ImportError:
    _kernels = None

FLOOR = 100_000.0


def _table_args(t):
    return (t.q, t.p, t.nu, t.mul, t.add, t.inv, t.neg, t.chi, t.chi_valid)


def _workloads(field, n, m):
    """Yield (label, members, call) where call(kernels) returns a result row."""
    t = tables_for(field)
    base = _table_args(t)
    keys, _ = partition_keys(n)
    q = field.q

    def mn(mode, mode_keys):
        def call(k):
            return k.mn_sweep(mode, *base, n, [], [], None, None,
                              0, q**n, mode_keys)
        return call

    # interval family: f = 1, g = t, center = t^(m+1), so deg(center) > m
    center = [0] * (m + 1) + [1]
    fs, gs = [[1]], [[0, 1]]
    interval_n = 1 + 2 * (m + 1)
    ikeys, _ = partition_keys(interval_n)

    def interval(mode, mode_keys):
        def call(k):
            return k.interval_sweep(mode, *base, center, m, fs, gs, [],
                                    interval_n, 0, q ** (m + 1), mode_keys)
        return call

    yield f"degree-{n} sweep, prime count", q**n, mn(MODE_PRIME, [])
    yield f"degree-{n} sweep, type census", q**n, mn(MODE_TYPE, keys)
    yield f"degree-{n} sweep, Mobius sum", q**n, mn(MODE_MOBIUS, [])
    yield (f"interval sweep (n={interval_n}), prime count",
           q ** (m + 1), interval(MODE_PRIME, ikeys))


def _best_time(call, kernels, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = call(kernels)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return list(result), best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=3, help="characteristic")
    parser.add_argument("--ext", type=int, default=2, help="extension degree")
    parser.add_argument("--n", type=int, default=5,
                        help="degree for full monic sweeps")
    parser.add_argument("--m", type=int, default=3,
                        help="interval parameter (q^(m+1) members)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per workload (best time wins)")
    args = parser.parse_args(argv)

    field = Field(args.p, args.ext)
    print(f"field: q = {field.q} (p = {args.p}, extension {args.ext}); "
          f"repeat = {args.repeat}, best-of timing")
    if _kernels is None:
        print("compiled extension not importable; timing pure kernels only")
    print()
    header = (f"{'workload':40} {'members':>9} {'compiled':>14} "
              f"{'pure':>14} {'speedup':>8}")
    print(header)
    print("-" * len(header))

    floor_ok = True
    for label, members, call in _workloads(field, args.n, args.m):
        pure_result, pure_time = _best_time(call, _kernels_py, args.repeat)
        pure_rate = members / pure_time
        if _kernels is not None:
            comp_result, comp_time = _best_time(call, _kernels, args.repeat)
            if comp_result != pure_result:
                raise SystemExit(
                    f"MISMATCH on '{label}': compiled and pure kernels "
                    "disagree; do not trust either timing"
                )
            comp_rate = members / comp_time
            floor_ok = floor_ok and comp_rate >= FLOOR
            print(f"{label:40} {members:>9,} {comp_rate:>12,.0f}/s "
                  f"{pure_rate:>12,.0f}/s {comp_rate / pure_rate:>7.1f}x")
        else:
            floor_ok = floor_ok and pure_rate >= FLOOR
            print(f"{label:40} {members:>9,} {'-':>14} {pure_rate:>12,.0f}/s"
                  f" {'-':>8}")

    print()
    side = "compiled" if _kernels is not None else "pure"
    verdict = "meets" if floor_ok else "does not meet"
    line = (f"{side} side {verdict} the {FLOOR:,.0f}/s target "
            "on every workload above")
    if _kernels is not None:
        line += "; results verified identical between kernel sets"
    print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
