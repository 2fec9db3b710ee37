"""Compare the jitted kernels against their fallback implementations.

Run with ``python3 benchmarks/bench_kernels.py``.  Two hot paths are
measured on a large generated prefix:

* occurrence scan (jitted KMP vs. vectorized numpy candidate filter vs.
  plain-Python KMP on a shorter input), and
* sequential machine run (jitted vs. plain Python on a shorter input).
"""

import time

import numpy as np

from apwords import NUMBA_ENABLED, BINARY, CounterexampleFamily
from apwords._kernels import (
    mealy_run_numba,
    mealy_run_python,
    occurrences_numba,
    occurrences_numpy,
    occurrences_python,
)
from apwords.machines import MealyMachine

PREFIX = 10**7
SLOW_PREFIX = 10**5  # plain-Python loops get a shorter input
REPEATS = 3


def timed(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def report(label, seconds, n):
    print(f"  {label:<28} {seconds * 1e3:8.2f} ms   {n / seconds / 1e6:8.1f} Msym/s")


def main():
    if not NUMBA_ENABLED:
        print("numba is disabled (APWORDS_NO_NUMBA=1 or not importable); ")
        print("only fallback implementations will be measured.")

    fam = CounterexampleFamily()
    text = fam.prefix_array(PREFIX)
    pattern = fam.a(1).data

    print(f"occurrence scan, pattern length {pattern.shape[0]}:")
    if NUMBA_ENABLED:
        occurrences_numba(text[:100], pattern)  # trigger compilation
        t, hits = timed(occurrences_numba, text, pattern)
        report(f"numba kmp ({PREFIX:.0e} syms)", t, PREFIX)
    t, hits_np = timed(occurrences_numpy, text, pattern)
    report(f"numpy filter ({PREFIX:.0e} syms)", t, PREFIX)
    t, hits_py = timed(occurrences_python, text[:SLOW_PREFIX], pattern)
    report(f"python kmp ({SLOW_PREFIX:.0e} syms)", t, SLOW_PREFIX)
    if NUMBA_ENABLED:
        assert np.array_equal(hits, hits_np)

    parity = MealyMachine(
        BINARY, BINARY, ["e", "o"], "e",
        {
            ("e", "0"): ("e", "0"),
            ("e", "1"): ("o", "0"),
            ("o", "0"): ("o", "1"),
            ("o", "1"): ("e", "1"),
        },
    )
    print("machine run, 2-state machine:")
    if NUMBA_ENABLED:
        mealy_run_numba(parity._next, parity._out, 0, text[:100])
        t, (_, out) = timed(mealy_run_numba, parity._next, parity._out, 0, text)
        report(f"numba run ({PREFIX:.0e} syms)", t, PREFIX)
    t, (_, out_py) = timed(
        mealy_run_python, parity._next, parity._out, 0, text[:SLOW_PREFIX]
    )
    report(f"python run ({SLOW_PREFIX:.0e} syms)", t, SLOW_PREFIX)
    if NUMBA_ENABLED:
        assert np.array_equal(out[:SLOW_PREFIX], out_py)


if __name__ == "__main__":
    main()
