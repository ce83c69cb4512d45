"""Compare the compiled and pure-Python polytope kernels.

Two measurements:

* ``kernel``: vertex enumeration on seeded random H-representations,
  calling both kernel modules directly in this process;
* ``end-to-end``: compiling seeded random formulas and deciding them, run in
  a subprocess per backend (``RATLUK_KERNEL=python`` forces the fallback).

Usage: python benchmarks/bench_kernels.py [--systems 300] [--formulas 40]
"""

from __future__ import annotations

import argparse
import importlib
import json
import os
import random
import subprocess
import sys
import time

from ratluk import _kernels_py
from ratluk.polytope import cube_rows


def random_systems(count: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, 4)
        extra = [tuple(rng.randint(-6, 6) for _ in range(n + 1)) for _ in range(rng.randint(2, 6))]
        out.append((list(cube_rows(n)) + extra, n))
    return out


def time_kernel(mod, systems, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for rows, n in systems:
            mod.enumerate_vertices(rows, n)
        best = min(best, time.perf_counter() - start)
    return best


_WORKLOAD = """
import random, sys, time
from ratluk import BACKEND
from ratluk.decision import is_tautology
from ratluk.generate import random_formula
from ratluk.pwl import compile_formula
rng = random.Random({seed})
start = time.perf_counter()
for i in range({count}):
    phi = random_formula(rng, dim=3, depth=6, lang=("ql", "ratluk")[i % 2], leaf_prob=0.05)
    compile_formula(phi, 3)
    is_tautology(phi, 3)
print(BACKEND, time.perf_counter() - start)
"""


def time_end_to_end(force_python: bool, count: int, seed: int) -> tuple[str, float]:
    env = dict(os.environ)
    if force_python:
        env["RATLUK_KERNEL"] = "python"
    else:
        env.pop("RATLUK_KERNEL", None)
    code = _WORKLOAD.format(seed=seed, count=count)
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True).stdout.split()
    return out[0], float(out[1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", type=int, default=300)
    ap.add_argument("--formulas", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    try:
        compiled = importlib.import_module("ratluk._kernels")
    except ImportError:
        compiled = None

    systems = random_systems(args.systems, args.seed)
    results = {"kernel": {"python": time_kernel(_kernels_py, systems, args.repeat)}}
    if compiled is not None:
        for rows, n in systems:
            if compiled.enumerate_vertices(rows, n) != _kernels_py.enumerate_vertices(rows, n):
                raise SystemExit("compiled kernel disagrees with the reference")
        results["kernel"]["cython"] = time_kernel(compiled, systems, args.repeat)

    results["end-to-end"] = {}
    for force in (True, False):
        backend, secs = time_end_to_end(force, args.formulas, args.seed)
        results["end-to-end"][backend] = secs

    if args.json:
        print(json.dumps(results, indent=2))
        return 0
    for name, row in results.items():
        line = f"{name:<11}" + "".join(f"  {b}: {t:7.3f}s" for b, t in sorted(row.items()))
        if "python" in row and "cython" in row:
            line += f"  speedup: {row['python'] / row['cython']:.1f}x"
        print(line)
    if compiled is None:
        print("compiled kernel not built; only the fallback was timed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
