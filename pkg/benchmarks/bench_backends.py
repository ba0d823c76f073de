"""Time the clustering algorithms under both kernel backends.

Runs k-means, fuzzy c-means and Ward agglomeration on synthetic blob
data with the numba backend and the pure-numpy fallback, and prints
wall times side by side. Numbers are medians over ``--repeats`` runs
on freshly warmed kernels, so JIT compilation never leaks into them.

Usage::

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --n 10000 --dims 64 --repeats 5
"""

import argparse
import statistics
import time

import gzclust as gz
from gzclust import _kernels as kernels


def _time(fn, repeats):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def _cases(args):
    x_big, _ = gz.synth_blobs(args.n, 3, args.dims, separation=6.0, spread=1.0, seed=args.seed)
    # Ward is O(n^2) memory and far slower, so it gets its own (smaller) size.
    x_ward, _ = gz.synth_blobs(args.ward_n, 3, args.dims, separation=6.0, spread=1.0, seed=args.seed)
    return [
        (f"kmeans      n={args.n} d={args.dims} k=3", lambda: gz.kmeans(x_big, 3, seed=0)),
        (f"fcm         n={args.n} d={args.dims} c=3", lambda: gz.fcm(x_big, 3, seed=0)),
        (f"ward        n={args.ward_n} d={args.dims}", lambda: gz.agglomerative_ward(x_ward)),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=5000, help="points for kmeans/fcm")
    parser.add_argument("--ward-n", type=int, default=1500, help="points for ward")
    parser.add_argument("--dims", type=int, default=32)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = ["numpy"]
    if kernels.numba_backend is not None:
        backends.insert(0, "numba")
    else:
        print("numba backend not available; timing the numpy fallback only")

    rows = []
    for name, fn in _cases(args):
        timings = {}
        for backend in backends:
            with kernels.use_backend(backend):
                kernels.warmup()
                timings[backend] = _time(fn, args.repeats)
        rows.append((name, timings))

    width = max(len(name) for name, _ in rows)
    header = f"{'case':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, timings in rows:
        line = f"{name:<{width}}  " + "  ".join(f"{timings[b]:>9.4f}s" for b in backends)
        if len(backends) == 2:
            line += f"  {timings['numpy'] / timings['numba']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
