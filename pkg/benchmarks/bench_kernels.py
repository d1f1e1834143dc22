"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--graphs 300]

Both backends are imported directly, so the environment switch
ONEFACT_BACKEND does not matter here.  Outputs of the two backends are
compared before anything is timed.
"""
import argparse
import random
import time

from onefact import _pycore
from onefact.labelcount import build_levels
from onefact.graphcore import form_to_rows

try:
    from onefact import _ccore
except ImportError:
    _ccore = None


def random_graph(rng, n, p):
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def regular_inputs(n, k):
    lv = build_levels(n, top=k)[k]
    return [form_to_rows(n, f) for f in lv.forms]


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--graphs", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if _ccore is None:
        raise SystemExit("compiled extension not built; run pip install -e . --no-build-isolation")

    rng = random.Random(args.seed)
    cases = [
        ("canon_dense n=12 random", lambda core, xs: [core.canon_dense(12, r) for r in xs],
         [random_graph(rng, 12, rng.random()) for _ in range(args.graphs)]),
        ("canon_dense n=16 random", lambda core, xs: [core.canon_dense(16, r) for r in xs],
         [random_graph(rng, 16, rng.random()) for _ in range(args.graphs)]),
        ("dense_extensions n=10 k=3", lambda core, xs: [core.dense_extensions(10, r, 0) for r in xs],
         regular_inputs(10, 3)),
        ("dense_extensions n=12 k=4", lambda core, xs: [core.dense_extensions(12, r, 0) for r in xs],
         regular_inputs(12, 4)[:40]),
    ]
    print(f"{'kernel':28} {'inputs':>6} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for name, fn, xs in cases:
        if fn(_pycore, xs) != fn(_ccore, xs):
            raise SystemExit(f"{name}: backends disagree")
        tp = best_of(args.repeat, lambda: fn(_pycore, xs))
        tc = best_of(args.repeat, lambda: fn(_ccore, xs))
        print(f"{name:28} {len(xs):>6} {tp:9.3f} {tc:9.3f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
