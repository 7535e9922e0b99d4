"""Benchmark the pure-Python kernels against the compiled extension.

Run from the repository root:

    python benchmarks/bench_backends.py

Workloads mirror the hot paths of the acceptance suite: free-group word
reduction, the raw table scan (the model-count oracle), the pruned table
search, and powerset-hom verification.
"""

import random
import time

from catlogic._core import pure

try:
    from catlogic._core import _native as native
except ImportError:
    native = None

GROUP_ARITIES = [2, 1, 0]
GROUP_AXIOMS = [
    (3, (0, 1, 2, -1, -1), (0, 1, -1, 2, -1)),
    (1, (0, -3, -1), (0,)),
    (1, (-3, 0, -1), (0,)),
    (1, (0, 0, -2, -1), (-3,)),
    (1, (0, -2, 0, -1), (-3,)),
]


def bench(fn, *args, repeat=1):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads():
    rng = random.Random(1)
    letters = [s * g for g in (1, 2, 3) for s in (1, -1)]
    words = [
        [rng.choice(letters) for _ in range(rng.randint(0, 60))] for _ in range(20_000)
    ]

    def run_words(impl):
        return [impl.reduce_word(w) for w in words]

    amap = tuple(rng.randrange(16) for _ in range(16))

    def run_homs(impl):
        for _ in range(20):
            img = impl.hom_image_table(amap, 16, 16)
            assert impl.check_hom_table(img, 16, 16)

    yield "reduce_word x20k", run_words, 3
    yield "scan_tables group n=3 (oracle)", lambda impl: impl.scan_tables(
        3, GROUP_ARITIES, GROUP_AXIOMS
    ), 1
    yield "search_tables group n=4 (pruned)", lambda impl: impl.search_tables(
        4, GROUP_ARITIES, GROUP_AXIOMS
    ), 1
    yield "hom image+check 16 atoms x20", run_homs, 1


def main() -> None:
    print(f"{'workload':38} {'pure':>10} {'native':>10} {'speedup':>9}")
    for name, work, repeat in workloads():
        t_pure, r_pure = bench(work, pure, repeat=repeat)
        if native is None:
            print(f"{name:38} {t_pure:9.3f}s {'-':>10} {'-':>9}")
            continue
        t_native, r_native = bench(work, native, repeat=repeat)
        if r_pure is not None and r_native is not None:
            assert r_pure == r_native, f"{name}: backends disagree"
        print(f"{name:38} {t_pure:9.3f}s {t_native:9.3f}s {t_pure / t_native:8.1f}x")
    if native is None:
        print("\ncompiled kernels not built; only the pure backend was timed")


if __name__ == "__main__":
    main()
