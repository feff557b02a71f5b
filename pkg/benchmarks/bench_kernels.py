#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Times the three hot paths on representative workloads: the grid-sum
minimisation over a star-pair intersection matrix, the matching number
of a covering family, and the branch-and-bound matching-free maximum.
Both backends are imported directly (ignoring the WEAKCROSS_PURE_PY
switch) and their results are checked for equality before timing.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import random
import time

from weakcross import _kernels_py
from weakcross.constructions import StarSpec, make_covering, make_star
from weakcross.families import GroundSet, mask_from_elements

try:
    from weakcross import _ckernels
except ImportError:
    _ckernels = None


def star_grid_case():
    left = make_star(StarSpec.default(12, 4, 2))
    right = make_star(StarSpec.default(12, 5, 2))
    flat = [(a & b).bit_count() for a in left.masks for b in right.masks]
    n_rows, n_cols, ell = len(left), len(right), 3
    args = (flat, n_rows, n_cols, ell, False, 0, n_rows - ell + 1)
    return "min_grid_sum 45x120 ell=3", "min_grid_sum_bucket", args


def covering_matching_case():
    covering = make_covering(GroundSet(12), 3, 4)
    return f"max_disjoint covering n=12 ({len(covering)} blocks)", \
        "max_disjoint", (list(covering.masks),)


def random_matching_case():
    rng = random.Random(5)
    masks = [mask_from_elements(24, rng.sample(range(1, 25), 4)) for _ in range(60)]
    return "max_disjoint random 60x4 on [24]", "max_disjoint", (masks,)


def no_matching_case():
    from itertools import combinations

    from weakcross.structures import erdos_bound

    n, k, ell = 6, 2, 2
    masks = sorted(mask_from_elements(n, c)
                   for c in combinations(range(1, n + 1), k))
    seed = erdos_bound(n, k, ell) - 1
    return "max_family_no_matching_bb (6,2,2)", \
        "max_family_no_matching_bb", (masks, ell, seed)


def best_time(fn, args, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per case (best of, default 5)")
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled backend not available; nothing to compare")
        print("(build it with: pip install -e . --no-build-isolation)")
        return

    cases = [star_grid_case(), covering_matching_case(),
             random_matching_case(), no_matching_case()]
    width = max(len(name) for name, _, _ in cases)
    print(f"{'case':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, attr, call_args in cases:
        py_fn = getattr(_kernels_py, attr)
        c_fn = getattr(_ckernels, attr)
        py_result = py_fn(*call_args)
        c_result = c_fn(*call_args)
        assert py_result == c_result, f"{name}: backends disagree"
        py_t = best_time(py_fn, call_args, args.repeats)
        c_t = best_time(c_fn, call_args, args.repeats)
        print(f"{name:<{width}}  {py_t * 1e3:>8.2f}ms  {c_t * 1e3:>8.2f}ms"
              f"  {py_t / c_t:>7.1f}x")


if __name__ == "__main__":
    main()
