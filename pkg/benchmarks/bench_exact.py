"""Exact solver timings: numba kernel vs the pure-Python fallback.

    python3 benchmarks/bench_exact.py [--repeat 3]

Both paths run the same branch and bound, so sizes and node counts must
agree; only the wall-clock differs.
"""

import argparse
import random
import statistics
import time

from acyclicmatch.generators import gk_chain, petersen, random_graphs, star_of_k23
from acyclicmatch.oracle import exact_nu_ac


def cases():
    yield "petersen", petersen()
    yield "star_of_k23", star_of_k23()
    yield "gk_chain(1)", gk_chain(1)
    yield "gk_chain(2)", gk_chain(2)
    for i, g in enumerate(random_graphs(20, 3, seed=7)):
        yield f"cubic20#{i}", g
    rng = random.Random(3)
    yield "cubic24", next(random_graphs(24, 1, seed=rng.randrange(1 << 30)))


def timed(g, jit, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        res = exact_nu_ac(g, jit=jit)
        times.append(time.perf_counter() - t)
    return res, statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    exact_nu_ac(petersen(), jit=True)  # compile (or load the cache) up front
    print(f"{'graph':<14}{'n':>4}{'nu_ac':>7}{'nodes':>10}{'jit s':>10}{'pure s':>10}{'speedup':>9}")
    for name, g in cases():
        a, ta = timed(g, True, args.repeat)
        b, tb = timed(g, False, args.repeat)
        assert (a.size, a.nodes, a.status) == (b.size, b.nodes, b.status), name
        print(f"{name:<14}{g.n:>4}{a.size:>7}{a.nodes:>10}{ta:>10.4f}{tb:>10.4f}{tb / ta:>8.1f}x")


if __name__ == "__main__":
    main()
