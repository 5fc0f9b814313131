"""Benchmark the compiled closure kernel against the pure-Python fallback.

The closure is the hot loop of every grid quotient: building the congruence
of a permutation runs it once, and exhaustive verification runs it for every
member of S_n.  This script times both implementations on the same inputs:

    python benchmarks/bench_closure.py

Workloads: every permutation congruence at n = 6, and random permutations at
n = 10 and n = 12.
"""
import importlib.util
import itertools
import random
import time

from slimlat._closure_py import closure_labels as python_kernel

if importlib.util.find_spec("slimlat._closure") is not None:
    from slimlat._closure import closure_labels as compiled_kernel
else:
    compiled_kernel = None


def permutation_pairs(n, images):
    side = n + 1
    pairs = []
    for i, j in enumerate(images, start=1):
        top = i * side + j
        pairs.append(((i - 1) * side + j, top))
        pairs.append((i * side + (j - 1), top))
    return pairs


def workloads():
    yield ("all of S_6", 6,
           [permutation_pairs(6, images)
            for images in itertools.permutations(range(1, 7))])
    rng = random.Random(0)
    for n in (10, 12):
        batch = []
        for _ in range(200):
            images = list(range(1, n + 1))
            rng.shuffle(images)
            batch.append(permutation_pairs(n, images))
        yield (f"200 random at n={n}", n, batch)


def run(kernel, n, batch):
    started = time.perf_counter()
    for pairs in batch:
        kernel(n, pairs)
    return time.perf_counter() - started


def main():
    if compiled_kernel is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    print(f"{'workload':<22} {'python':>10} {'cython':>10} {'speedup':>9}")
    for name, n, batch in workloads():
        # one warm-up pass, then timed passes on identical inputs
        run(python_kernel, n, batch[:10])
        py = run(python_kernel, n, batch)
        if compiled_kernel is None:
            print(f"{name:<22} {py:>9.3f}s {'-':>10} {'-':>9}")
            continue
        run(compiled_kernel, n, batch[:10])
        cy = run(compiled_kernel, n, batch)
        sample = batch[len(batch) // 2]
        assert compiled_kernel(n, sample) == python_kernel(n, sample)
        print(f"{name:<22} {py:>9.3f}s {cy:>9.3f}s {py / cy:>8.1f}x")


if __name__ == "__main__":
    main()
