"""Exhaustive search for the maximum-product feasible pair at desk scale.

Over all pairs of a k-uniform and a k'-uniform family on [n], find the
maximum of |F| * |F'| subject to the pair not violating the ell-weak
cross t-intersection condition (pairs too small to be tested count as
feasible).  The search grows the left family over candidate blocks in
canonical order, then the right family, pruning any extension that is
already violated: violation is inherited by superfamilies, so a violated
pair closes its whole subtree.

Determinism: the tree is statically split into buckets by the first
included left block, each bucket is searched independently against the
star-pair floor (node budgets are pre-split too), and bucket results are
merged in a fixed order.  Worker counts therefore never change the
result or the node count.  The reported pair is the lexicographically
least one attaining the maximum product; when no positive product is
feasible the empty pair is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .analysis import WeakCrossParams
from .families import (
    Family,
    FamilyPair,
    GroundSet,
    InstanceTooLargeError,
    binomial,
    mask_from_elements,
)

__all__ = ["SearchResult", "search_max_product", "MAX_SEARCH_BLOCKS"]

MAX_SEARCH_BLOCKS = 40


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a max-product search."""

    best_product: int
    best_pair: FamilyPair
    star_product: int
    nodes_explored: int
    exhaustive: bool

    def to_json_dict(self) -> dict:
        return {
            "best_product": str(self.best_product),
            "star_product": str(self.star_product),
            "nodes_explored": self.nodes_explored,
            "exhaustive": self.exhaustive,
            "left_size": len(self.best_pair.left),
            "right_size": len(self.best_pair.right),
            "left": [list(b.elements) for b in self.best_pair.left],
            "right": [list(b.elements) for b in self.best_pair.right],
        }


def _all_masks(n: int, k: int) -> list[int]:
    return sorted(mask_from_elements(n, c) for c in combinations(range(1, n + 1), k))


def _star_masks(n: int, k: int, t: int) -> tuple[int, ...]:
    if t > k or t > n:
        return ()
    core = mask_from_elements(n, range(1, t + 1))
    rest = range(t + 1, n + 1)
    return tuple(sorted(core | mask_from_elements(n, c)
                        for c in combinations(rest, k - t)))


def _grid_min_with_forced_col(left_masks, right_masks, ell, forced):
    """Minimum grid sum over ell x ell grids that use the ``forced`` column."""
    cols = len(right_masks)
    matrix = [[(a & b).bit_count() for b in right_masks] for a in left_masks]
    best = None
    for rsel in combinations(range(len(left_masks)), ell):
        partial = [sum(matrix[r][c] for r in rsel) for c in range(cols)]
        others = sorted(partial[c] for c in range(cols) if c != forced)
        value = partial[forced] + sum(others[:ell - 1])
        if best is None or value < best:
            best = value
    return best


def _better(cand, best):
    """Candidate order: larger product first, then lex-least (left, right)."""
    if cand[0] != best[0]:
        return cand[0] > best[0]
    return (cand[1], cand[2]) < (best[1], best[2])


def _run_bucket_fast(first, budget, left_cands, right_cands, compat, seed):
    """ell = 1 bucket: the optimal right side for a fixed left family is
    exactly the blocks t-intersecting every left block, so only left
    families are enumerated."""
    m = len(left_cands)
    r_m = len(right_cands)
    best = seed
    nodes = 0
    truncated = False

    def right_tuple(mask):
        return tuple(right_cands[j] for j in range(r_m) if mask >> j & 1)

    def spend():
        nonlocal nodes, truncated
        if budget is not None and nodes >= budget:
            truncated = True
            return False
        nodes += 1
        return True

    def rec(cur, cmask, nxt):
        nonlocal best
        if truncated or not spend():
            return
        rsize = cmask.bit_count()
        cand = (len(cur) * rsize, tuple(cur), right_tuple(cmask))
        if _better(cand, best):
            best = cand
        if (len(cur) + (m - nxt)) * rsize < best[0]:
            return
        for j in range(nxt, m):
            cur.append(left_cands[j])
            rec(cur, cmask & compat[j], j + 1)
            cur.pop()

    if first is None:
        if spend():
            cand = (0, (), right_tuple((1 << r_m) - 1))
            if _better(cand, best):
                best = cand
    else:
        rec([left_cands[first]], compat[first], first + 1)
    return best, nodes, truncated


def _run_bucket_generic(first, budget, left_cands, right_cands, params, seed):
    m = len(left_cands)
    r_m = len(right_cands)
    ell, threshold = params.ell, params.threshold
    all_right = tuple(right_cands)
    best = seed
    nodes = 0
    truncated = False

    def spend():
        nonlocal nodes, truncated
        if budget is not None and nodes >= budget:
            truncated = True
            return False
        nodes += 1
        return True

    def rec_right(left_tuple, cur, nxt):
        nonlocal best
        if truncated or not spend():
            return
        cand = (len(left_tuple) * len(cur), left_tuple, tuple(cur))
        if _better(cand, best):
            best = cand
        if len(left_tuple) * (len(cur) + (r_m - nxt)) < best[0]:
            return
        for j in range(nxt, r_m):
            cur.append(right_cands[j])
            feasible = True
            if len(cur) >= ell:
                value = _grid_min_with_forced_col(left_tuple, cur, ell, len(cur) - 1)
                feasible = value >= threshold
            if feasible:
                rec_right(left_tuple, cur, j + 1)
            cur.pop()

    def rec_left(cur, nxt):
        nonlocal best
        if truncated or not spend():
            return
        left_tuple = tuple(cur)
        if (len(left_tuple) + (m - nxt)) * r_m < best[0]:
            return
        if len(left_tuple) < ell:
            # Too few left blocks to test: every right family is feasible.
            cand = (len(left_tuple) * r_m, left_tuple, all_right)
            if _better(cand, best):
                best = cand
        else:
            rec_right(left_tuple, [], 0)
        for j in range(nxt, m):
            cur.append(left_cands[j])
            rec_left(cur, j + 1)
            cur.pop()

    if first is None:
        if spend():
            cand = (0, (), all_right)
            if _better(cand, best):
                best = cand
    else:
        rec_left([left_cands[first]], first + 1)
    return best, nodes, truncated


def search_max_product(n: int, k: int, kprime: int, params: WeakCrossParams,
                       node_budget: int | None = None,
                       threads: int = 1,
                       force_generic: bool = False) -> SearchResult:
    """Maximum |F| * |F'| over pairs not violating the condition.

    Exhaustive whenever no bucket exhausts its share of the node budget;
    without a budget the instance must satisfy
    C(n, k) + C(n, k') <= 40.  ``force_generic`` disables the ell = 1
    fast path (used for cross-validation).
    """
    ground = GroundSet(n)
    for size in (k, kprime):
        if not 1 <= size <= n:
            raise ValueError(f"block size {size} outside [1, {n}]")
    total = binomial(n, k) + binomial(n, kprime)
    if node_budget is None and total > MAX_SEARCH_BLOCKS:
        raise InstanceTooLargeError(
            f"C({n}, {k}) + C({n}, {kprime}) = {total} exceeds the exhaustive "
            f"guard of {MAX_SEARCH_BLOCKS} blocks; pass a node budget for a "
            "best-effort search")
    if node_budget is not None and node_budget < 1:
        raise ValueError("node budget must be positive")

    left_cands = _all_masks(n, k)
    right_cands = _all_masks(n, kprime)
    star_left = _star_masks(n, k, params.t)
    star_right = _star_masks(n, kprime, params.t)
    star_product = len(star_left) * len(star_right)
    seed = (star_product, star_left, star_right)

    firsts: list[int | None] = [None] + list(range(len(left_cands)))
    budgets: list[int | None] = [None] * len(firsts)
    if node_budget is not None:
        share, extra = divmod(node_budget, len(firsts))
        budgets = [share + (1 if p < extra else 0) for p in range(len(firsts))]

    if params.ell == 1 and not force_generic:
        compat = []
        for a in left_cands:
            mask = 0
            for j, b in enumerate(right_cands):
                if (a & b).bit_count() >= params.t:
                    mask |= 1 << j
            compat.append(mask)
        runner = lambda fb: _run_bucket_fast(
            fb[0], fb[1], left_cands, right_cands, compat, seed)
    else:
        runner = lambda fb: _run_bucket_generic(
            fb[0], fb[1], left_cands, right_cands, params, seed)
    results = kernels.run_buckets(runner, list(zip(firsts, budgets)), threads)

    best = seed
    nodes = 0
    truncated = False
    for cand, bucket_nodes, bucket_truncated in results:
        nodes += bucket_nodes
        truncated = truncated or bucket_truncated
        if _better(cand, best):
            best = cand
    product, left_masks, right_masks = best
    if product == 0:
        left_masks, right_masks = (), ()
    pair = FamilyPair(
        Family.from_masks(ground, k, left_masks),
        Family.from_masks(ground, kprime, right_masks),
    )
    return SearchResult(
        best_product=product,
        best_pair=pair,
        star_product=star_product,
        nodes_explored=nodes,
        exhaustive=not truncated,
    )
