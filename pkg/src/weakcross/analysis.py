"""Exact decisions for the weak cross-intersection condition.

A pair (F, F') of k- and k'-uniform families over [n] is ell-weakly
cross t-intersecting when every choice of ell distinct blocks from F
and ell distinct blocks from F' has total pairwise intersection size,
summed over the full ell x ell grid, at least ell^2*t - ell + 1.  For
ell = 1 this is exactly the classical cross t-intersecting property.

The single-family analogue checked by :func:`check_weak_single` asks
that every ell distinct blocks of one family have pairwise intersection
sizes summing to at least C(ell-1, 2) + 1.

All checks are exact, and every "violated" verdict carries the
lexicographically least witness (minimal grid value first, then row
indices, then column indices).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .families import Family, FamilyPair, binomial

__all__ = [
    "SATISFIED",
    "VIOLATED",
    "VACUOUS",
    "VacuousChoiceError",
    "WeakCrossParams",
    "IntersectionMatrix",
    "WitnessTuple",
    "CrossVerdict",
    "SingleVerdict",
    "intersection_matrix",
    "min_grid_sum",
    "check_weak_cross",
    "check_weak_single",
]

SATISFIED = "satisfied"
VIOLATED = "violated"
VACUOUS = "vacuous"


class VacuousChoiceError(ValueError):
    """Raised when a minimum over ell-subsets is requested but none exist."""


@dataclass(frozen=True)
class WeakCrossParams:
    """The pair (ell, t) of the condition; both at least 1."""

    ell: int
    t: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be at least 1, got {self.ell}")
        if self.t < 1:
            raise ValueError(f"t must be at least 1, got {self.t}")

    @property
    def threshold(self) -> int:
        """The grid-sum lower bound ell^2 * t - ell + 1."""
        return self.ell * self.ell * self.t - self.ell + 1


@dataclass(frozen=True)
class IntersectionMatrix:
    """All pairwise intersection sizes of a family pair, row = left index."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def flat(self) -> list[int]:
        return [v for row in self.entries for v in row]

    def transposed_flat(self) -> list[int]:
        return [self.entries[r][c] for c in range(self.cols) for r in range(self.rows)]


@dataclass(frozen=True)
class WitnessTuple:
    """An ell x ell index grid together with its achieved intersection sum."""

    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    achieved_sum: int

    def __post_init__(self):
        for seq in (self.row_indices, self.col_indices):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise ValueError("witness indices must be strictly increasing")
        if len(self.row_indices) != len(self.col_indices):
            raise ValueError("witness must pick equally many rows and columns")


@dataclass(frozen=True)
class CrossVerdict:
    """Outcome of a weak cross-intersection check."""

    verdict: str
    threshold: int
    min_sum: int | None
    witness: WitnessTuple | None

    def to_json_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "rows": list(self.witness.row_indices),
                "cols": list(self.witness.col_indices),
            }
        return {
            "verdict": self.verdict,
            "min_sum": self.min_sum,
            "threshold": self.threshold,
            "witness": witness,
        }


@dataclass(frozen=True)
class SingleVerdict:
    """Outcome of the single-family check."""

    verdict: str
    threshold: int
    min_sum: int | None
    indices: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        witness = None
        if self.indices is not None:
            witness = {"indices": list(self.indices)}
        return {
            "verdict": self.verdict,
            "min_sum": self.min_sum,
            "threshold": self.threshold,
            "witness": witness,
        }


def intersection_matrix(pair: FamilyPair) -> IntersectionMatrix:
    """The |F| x |F'| matrix of pairwise intersection sizes."""
    left_masks = pair.left.masks
    right_masks = pair.right.masks
    entries = tuple(
        tuple((a & b).bit_count() for b in right_masks) for a in left_masks
    )
    return IntersectionMatrix(len(left_masks), len(right_masks), entries)


def _merge_grid_candidates(results, swap: bool):
    best = None
    best_key = None
    for cand in results:
        if cand is None:
            continue
        key = kernels.grid_candidate_key(cand, swap)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def min_grid_sum(matrix: IntersectionMatrix, ell: int,
                 threads: int = 1) -> tuple[int, WitnessTuple]:
    """Exact minimum over all ell x ell index grids of the entry sum.

    Enumerates ell-subsets on the smaller side; the other side's optimal
    ell indices fall out of a partial-sum selection.  The returned
    witness is the lexicographically least one attaining the minimum
    (by value, then row indices, then column indices).  Raises
    :class:`VacuousChoiceError` when either side has fewer than ell
    indices.
    """
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")
    if matrix.rows < ell or matrix.cols < ell:
        raise VacuousChoiceError(
            f"need at least {ell} rows and columns, have {matrix.rows} x {matrix.cols}")
    if matrix.rows <= matrix.cols:
        flat, n_rows, n_cols, swap = matrix.flat(), matrix.rows, matrix.cols, False
    else:
        flat, n_rows, n_cols, swap = matrix.transposed_flat(), matrix.cols, matrix.rows, True
    chunks = kernels.split_range(n_rows - ell + 1, max(1, threads))
    results = kernels.run_buckets(
        lambda rg: kernels.min_grid_sum_bucket(flat, n_rows, n_cols, ell, swap, rg[0], rg[1]),
        chunks, threads)
    best = _merge_grid_candidates(results, swap)
    assert best is not None
    value, enum_idx, other_idx = best
    rows, cols = (other_idx, enum_idx) if swap else (enum_idx, other_idx)
    return int(value), WitnessTuple(rows, cols, int(value))


def check_weak_cross(pair: FamilyPair, params: WeakCrossParams,
                     threads: int = 1) -> CrossVerdict:
    """Decide whether the pair is ell-weakly cross t-intersecting.

    Vacuous when either family has fewer than ell blocks; otherwise the
    exact minimal grid sum is compared against the threshold, and a
    violation carries the lexicographically least witness grid.
    """
    if len(pair.left) < params.ell or len(pair.right) < params.ell:
        return CrossVerdict(VACUOUS, params.threshold, None, None)
    matrix = intersection_matrix(pair)
    value, witness = min_grid_sum(matrix, params.ell, threads=threads)
    if value >= params.threshold:
        return CrossVerdict(SATISFIED, params.threshold, value, None)
    return CrossVerdict(VIOLATED, params.threshold, value, witness)


def check_weak_single(family: Family, ell: int) -> SingleVerdict:
    """Decide the single-family condition with threshold C(ell-1, 2) + 1.

    Minimises the sum of pairwise intersection sizes over all ell-subsets
    of the family.  Vacuous when ell < 2 or the family has fewer than
    ell blocks.
    """
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")
    threshold = binomial(ell - 1, 2) + 1
    if ell < 2 or len(family) < ell:
        return SingleVerdict(VACUOUS, threshold, None, None)
    masks = family.masks
    m = len(masks)
    gram = [[(a & b).bit_count() for b in masks] for a in masks]
    best_sum: int | None = None
    best_sel: tuple[int, ...] | None = None
    chosen: list[int] = []

    def rec(start: int, acc: int):
        nonlocal best_sum, best_sel
        if len(chosen) == ell:
            if best_sum is None or acc < best_sum:
                best_sum, best_sel = acc, tuple(chosen)
            return
        if best_sum is not None and acc >= best_sum:
            return
        for i in range(start, m - (ell - len(chosen)) + 1):
            row = gram[i]
            added = sum(row[c] for c in chosen)
            chosen.append(i)
            rec(i + 1, acc + added)
            chosen.pop()

    rec(0, 0)
    assert best_sum is not None and best_sel is not None
    if best_sum >= threshold:
        return SingleVerdict(SATISFIED, threshold, best_sum, None)
    return SingleVerdict(VIOLATED, threshold, best_sum, best_sel)
