"""Compare the compiled kernels against the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--size 128] [--k 64] [--repeat 5]

Each row reports the best of ``--repeat`` runs per backend and the speedup.
The outputs of both backends are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import math
import timeit
from contextlib import contextmanager

import numpy as np

from fillin import Image, SlicParams, _backend, _fallback, slic_segment
from fillin.superpixel import _features

try:
    from fillin import _kernels
except ImportError:
    _kernels = None


@contextmanager
def use_backend(mod):
    saved = _backend.slic_assign, _backend.label_components
    _backend.slic_assign, _backend.label_components = mod.slic_assign, mod.label_components
    try:
        yield
    finally:
        _backend.slic_assign, _backend.label_components = saved


def assign_case(img, k):
    feat = _features(img)
    rows, cols = feat.shape[:2]
    rng = np.random.default_rng(1)
    ys, xs = rng.uniform(0, rows - 1, k), rng.uniform(0, cols - 1, k)
    centers = np.column_stack([ys, xs, feat[ys.round().astype(int), xs.round().astype(int)]])
    win = math.ceil(math.sqrt(rows * cols / k))

    def run(mod):
        labels = np.zeros((rows, cols), dtype=np.int64)
        dist = np.full((rows, cols), np.inf)
        mod.slic_assign(feat, centers, 0.1, win, win, labels, dist)
        return labels

    return run


def components_case(size, n_labels):
    labels = np.random.default_rng(2).integers(0, n_labels, size=(size, size)).astype(np.int64)
    return lambda mod: mod.label_components(labels)[0]


def segment_case(img, k):
    def run(mod):
        with use_backend(mod):
            return slic_segment(img, SlicParams(k)).data
    return run


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--k", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    img = Image(np.random.default_rng(0).random((args.size, args.size, 3)))
    yy, xx = np.mgrid[0:args.size, 0:args.size] / args.size
    smooth = Image(np.stack([yy, xx, 0.5 + 0.5 * np.sin(6 * (yy + xx))], axis=-1))
    cases = {
        "slic_assign": assign_case(img, args.k),
        "label_components (4 labels)": components_case(args.size, 4),
        "label_components (2 labels)": components_case(args.size, 2),
        f"slic_segment K={args.k} smooth": segment_case(smooth, args.k),
        # noise fragments heavily, so the shared orphan merge dominates here
        f"slic_segment K={args.k} noise": segment_case(img, args.k),
    }
    print(f"image {args.size}x{args.size}, best of {args.repeat}")
    print(f"{'kernel':<32}{'cython ms':>12}{'python ms':>12}{'speedup':>10}")
    for name, run in cases.items():
        assert np.array_equal(run(_kernels), run(_fallback)), name
        fast = best_of(lambda: run(_kernels), args.repeat)
        slow = best_of(lambda: run(_fallback), args.repeat)
        print(f"{name:<32}{fast * 1e3:>12.2f}{slow * 1e3:>12.2f}{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
