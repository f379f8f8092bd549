"""Compare the compiled and pure-Python kernels.

Run from the repository root::

    python benchmarks/bench_kernels.py

Each kernel is timed on the same inputs through both backends, and the
results are checked for equality.  Enumeration and the students join are
then timed end to end in a child process with ``RELNET_PURE_PYTHON`` unset
and set.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from relnet._kernels import _pykernels

try:
    from relnet._kernels import _ckernels
except ImportError:
    _ckernels = None


def combination_input(seed: int, factors: int = 6, rows: int = 12, width: int = 8):
    rng = random.Random(seed)
    choices = []
    for _ in range(factors):
        scope = rng.sample(range(width), 3)
        choices.append([[rng.randrange(2) if i in scope else -1 for i in range(width)]
                        for _ in range(rows)])
    return choices


def time_call(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


END_TO_END = (
    "import time;"
    "from relnet.combinatorics import enumerate_outcomes, uniform_variables;"
    "from relnet.interop import fixture_students;"
    "from relnet.inference import join_full;"
    "t = time.perf_counter();"
    "enumerate_outcomes(uniform_variables(4, 4), ['a', 'b', 'c']);"
    "e = time.perf_counter() - t;"
    "net = fixture_students(); t = time.perf_counter();"
    "[join_full(net) for _ in range(20)];"
    "print(e, (time.perf_counter() - t) / 20)"
)


def end_to_end(pure: bool) -> tuple[float, float]:
    env = dict(os.environ)
    env.pop("RELNET_PURE_PYTHON", None)
    if pure:
        env["RELNET_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True,
                         capture_output=True, text=True).stdout.split()
    return float(out[0]), float(out[1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the pure-Python backend is available")
        return 1

    cases = [
        ("connected_labelings(5, 2)", lambda m: m.connected_labelings(5, 2)),
        ("connected_labelings(4, 3)", lambda m: m.connected_labelings(4, 3)),
    ]
    for seed in (1, 2):
        data = combination_input(seed)
        cases.append((f"consistent_combinations(seed={seed})",
                      lambda m, d=data: m.consistent_combinations(d)))

    print(f"{'kernel':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, call in cases:
        if call(_pykernels) != call(_ckernels):
            print(f"{name}: backends disagree")
            return 1
        py = time_call(lambda: call(_pykernels), args.repeat)
        cy = time_call(lambda: call(_ckernels), args.repeat)
        print(f"{name:34} {py:10.4f} {cy:10.4f} {py / cy:8.1f}x")

    print()
    print(f"{'end to end':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    (pe, pj), (ce, cj) = end_to_end(True), end_to_end(False)
    print(f"{'enumerate (4 vars, 4 values, 3 tags)':34} {pe:10.4f} {ce:10.4f} {pe / ce:8.1f}x")
    print(f"{'students join':34} {pj:10.4f} {cj:10.4f} {pj / cj:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
