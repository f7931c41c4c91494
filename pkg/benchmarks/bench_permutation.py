#!/usr/bin/env python3
"""Compare the compiled and pure-Python permutation kernels.

Run after `python3 setup.py build_ext --inplace`; without the extension
only the Python rows appear.
"""

from __future__ import annotations

import time

from reconsys.ipgen import _feistel_py

try:
    from reconsys.ipgen import _feistel_cy
except ImportError:
    _feistel_cy = None

SIZES = (65_536, 1_000_003)
SEED = 42
ROUNDS = 4


def bench(kernel, name: str, n: int) -> float:
    t0 = time.perf_counter()
    out = kernel.materialize(SEED, n, ROUNDS)
    elapsed = time.perf_counter() - t0
    rate = n / elapsed / 1e6
    print(f"{name:8s} N={n:>9,d}  {elapsed:8.3f} s  {rate:7.2f} M idx/s")
    assert len(out) == n
    return elapsed


def main() -> None:
    print(f"seed={SEED} rounds={ROUNDS}")
    for n in SIZES:
        py = bench(_feistel_py, "python", n)
        if _feistel_cy is not None:
            cy = bench(_feistel_cy, "cython", n)
            print(f"         speedup: {py / cy:.1f}x")
            same = (_feistel_py.materialize(SEED, min(n, 50_000), ROUNDS)
                    == _feistel_cy.materialize(SEED, min(n, 50_000), ROUNDS)).all()
            print(f"         outputs identical on prefix check: {same}")


if __name__ == "__main__":
    main()
