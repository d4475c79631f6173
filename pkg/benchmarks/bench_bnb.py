"""Compare the compiled and pure-Python branch-and-bound kernels.

    python benchmarks/bench_bnb.py [--repeat 3] [--sizes 20 30 40]

Instances are random candidate sets with heavy element sharing, so the
whole problem forms one block and the search tree is large.
"""
from __future__ import annotations

import argparse
import random
import statistics
import time

from lvpaths import kernels
from lvpaths.ilp import build_problem
from lvpaths.matrices import from_columns
from lvpaths.paths import Path
from lvpaths.solver import solve


def instance(n_paths: int, seed: int):
    rng = random.Random(seed)
    n_c = max(2, n_paths // 3)
    n_r = max(3, n_paths // 2)
    n_t = 3
    cs = [f"c{i}" for i in range(1, n_c + 1)]
    rs = [f"r{i}" for i in range(1, n_r + 1)]
    ts = [f"t{i}" for i in range(1, n_t + 1)]
    paths = [Path((rng.choice(cs), *rng.sample(rs, rng.randint(1, 3)), rng.choice(ts))) for _ in range(n_paths)]
    return build_problem(from_columns(paths, cs, rs, ts))


def timed(problem, backend: str, repeat: int):
    runs, sol = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        sol = solve(problem, backend=backend)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), sol


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 30, 40, 50])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    print(f"{'paths':>5} {'seed':>4} {'nodes':>9} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for n in args.sizes:
        for seed in range(args.seeds):
            problem = instance(n, seed)
            times, sols = {}, {}
            for b in backends:
                times[b], sols[b] = timed(problem, b, args.repeat)
            ref = sols["python"]
            for b in backends:
                assert sols[b].selected.tolist() == ref.selected.tolist(), "backends disagree"
            row = f"{n:>5} {seed:>4} {ref.nodes:>9} " + " ".join(f"{times[b]:>12.4f}" for b in backends)
            if "cython" in times:
                row += f"   {times['python'] / max(times['cython'], 1e-9):7.1f}x"
            print(row)


if __name__ == "__main__":
    main()
