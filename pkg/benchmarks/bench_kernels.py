"""Benchmark the numba kernels against the pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py

The same inputs run through both backends (when numba is installed and not
disabled via MATROID_ARENA_NO_NUMBA=1); results are asserted equal before
timings are reported.  Workloads mirror the hot acceptance paths: full-table
axiom checks, the rank DP, and the exhaustive exchange sweep.
"""

from __future__ import annotations

import time

import numpy as np

import matroid_arena as ma
from matroid_arena import kernels


def catalog() -> dict[str, ma.Matroid]:
    k5 = ma.load_matroid(
        ma.GraphicSpec(5, tuple((i, j) for i in range(5) for j in range(i + 1, 5)))
    )
    pg22 = ma.load_matroid(
        ma.LinearSpec(
            2,
            ((0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)),
        )
    )
    u14_4 = ma.load_matroid(ma.UniformSpec(14, 4))
    return {"k5 (n=10)": k5, "pg22 (n=7)": pg22, "u(14,4) (n=14)": u14_4}


def best_of(fn, repeats: int = 3) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(m: ma.Matroid):
    tab = m.table()
    n = m.n
    ind_masks = np.nonzero(tab)[0].astype(np.int64)

    def rank_table(impl):
        return impl["rank_table"](tab, n)

    def hereditary(impl):
        return impl["hereditary_violation"](tab, n)

    def exchange_axiom(impl):
        return impl["exchange_violation"](ind_masks, tab, n)

    def submodularity(impl):
        rank = impl["rank_table"](tab, n)
        return impl["submodularity_violation"](rank, n)

    def exchange_sweep(impl):
        return impl["exchange_sweep"](ind_masks, tab, n)

    named = [
        ("rank table DP", rank_table),
        ("hereditary check", hereditary),
        ("exchange axiom check", exchange_axiom),
        ("submodularity check", submodularity),
    ]
    if len(ind_masks) <= 300:  # the sweep is cubic-ish in the family size
        named.append(("exchange sweep", exchange_sweep))
    return named


def main() -> None:
    backends = kernels.backends()
    print(f"active backend: {kernels.backend_name()}")
    print(f"available: {', '.join(backends)}\n")
    if "numba" in backends:
        # warm the JIT outside the timed region
        tiny = ma.load_matroid(ma.UniformSpec(3, 2)).table()
        tiny_masks = np.nonzero(tiny)[0].astype(np.int64)
        nb = backends["numba"]
        nb["rank_table"](tiny, 3)
        nb["hereditary_violation"](tiny, 3)
        nb["exchange_violation"](tiny_masks, tiny, 3)
        nb["submodularity_violation"](nb["rank_table"](tiny, 3), 3)
        nb["exchange_sweep"](tiny_masks, tiny, 3)

    header = f"{'matroid':<16} {'kernel':<22} " + " ".join(
        f"{name + ' (ms)':>12}" for name in backends
    )
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))

    for mname, m in catalog().items():
        for kname, fn in workloads(m):
            timings = {}
            results = {}
            for bname, impl in backends.items():
                results[bname] = np.asarray(fn(impl))
                timings[bname] = best_of(lambda impl=impl: fn(impl))
            values = list(results.values())
            assert all(np.array_equal(v, values[0]) for v in values), (
                f"backend disagreement on {mname}/{kname}"
            )
            row = f"{mname:<16} {kname:<22} " + " ".join(
                f"{timings[b] * 1e3:>12.2f}" for b in backends
            )
            if len(backends) == 2:
                names = list(backends)
                row += f" {timings[names[0]] / timings[names[1]]:>8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
