"""Max-product search against double-powerset enumeration oracles."""

import pytest

from weakcross import (
    InstanceTooLargeError,
    WeakCrossParams,
    check_weak_cross,
    search_max_product,
)
from oracles import oracle_search


def _result_masks(result):
    return (result.best_pair.left.masks, result.best_pair.right.masks)


def test_search_triangle_instance():
    result = search_max_product(4, 2, 2, WeakCrossParams(1, 1))
    product, left, right = oracle_search(4, 2, 2, 1, 1)
    assert result.best_product == product == 9
    assert _result_masks(result) == (left, right)
    assert result.star_product == 9
    assert result.exhaustive
    assert result.nodes_explored == 63


def test_search_star_is_optimal_at_five_points():
    result = search_max_product(5, 2, 2, WeakCrossParams(1, 1))
    assert result.best_product == 16
    assert result.star_product == 16
    assert result.exhaustive
    verdict = check_weak_cross(result.best_pair, WeakCrossParams(1, 1))
    assert verdict.verdict != "violated"


@pytest.mark.parametrize("n,k,kprime,ell,t", [
    (3, 1, 1, 2, 1),
    (4, 1, 1, 2, 1),
    (4, 2, 1, 2, 1),
    (3, 2, 2, 2, 2),
    (3, 1, 1, 3, 1),
])
def test_search_matches_oracle_small(n, k, kprime, ell, t):
    result = search_max_product(n, k, kprime, WeakCrossParams(ell, t))
    product, left, right = oracle_search(n, k, kprime, ell, t)
    assert result.best_product == product
    assert _result_masks(result) == (left, right)
    assert result.exhaustive


def test_search_matches_oracle_pair_blocks():
    result = search_max_product(4, 2, 2, WeakCrossParams(2, 1))
    product, left, right = oracle_search(4, 2, 2, 2, 1)
    assert result.best_product == product
    assert _result_masks(result) == (left, right)


def test_search_result_is_feasible_and_beats_star():
    for n, k, kprime, ell, t in [(4, 2, 2, 1, 1), (4, 2, 2, 2, 1),
                                 (4, 2, 1, 2, 1), (5, 2, 1, 1, 1)]:
        params = WeakCrossParams(ell, t)
        result = search_max_product(n, k, kprime, params)
        assert result.best_product >= result.star_product
        assert check_weak_cross(result.best_pair, params).verdict != "violated"
        sizes = (len(result.best_pair.left), len(result.best_pair.right))
        assert result.best_product == sizes[0] * sizes[1]


def test_search_generic_path_agrees_with_fast_path():
    for n, k, kprime in [(4, 2, 2), (4, 2, 1), (5, 1, 1)]:
        params = WeakCrossParams(1, 1)
        fast = search_max_product(n, k, kprime, params)
        slow = search_max_product(n, k, kprime, params, force_generic=True)
        assert fast.best_product == slow.best_product
        assert _result_masks(fast) == _result_masks(slow)
        assert fast.exhaustive and slow.exhaustive


def test_search_budget_truncates():
    result = search_max_product(5, 2, 2, WeakCrossParams(1, 1), node_budget=5)
    assert not result.exhaustive
    assert result.nodes_explored <= 5
    assert result.best_product >= result.star_product == 16
    with pytest.raises(ValueError):
        search_max_product(5, 2, 2, WeakCrossParams(1, 1), node_budget=0)


def test_search_guard_requires_budget_on_large_instances():
    with pytest.raises(InstanceTooLargeError):
        search_max_product(7, 3, 3, WeakCrossParams(1, 1))
    result = search_max_product(7, 3, 3, WeakCrossParams(1, 1), node_budget=200)
    assert not result.exhaustive
    assert result.best_product >= result.star_product == 225


def test_search_threads_do_not_change_anything():
    params = WeakCrossParams(1, 1)
    lone = search_max_product(4, 2, 2, params, threads=1)
    four = search_max_product(4, 2, 2, params, threads=4)
    assert lone == four

    budgeted_lone = search_max_product(5, 2, 2, params, node_budget=40, threads=1)
    budgeted_four = search_max_product(5, 2, 2, params, node_budget=40, threads=4)
    assert budgeted_lone == budgeted_four


def test_search_infeasible_instance_reports_empty_pair():
    result = search_max_product(4, 2, 3, WeakCrossParams(1, 3))
    assert result.best_product == 0
    assert result.star_product == 0
    assert len(result.best_pair.left) == 0
    assert len(result.best_pair.right) == 0


def test_search_validation():
    with pytest.raises(ValueError):
        search_max_product(4, 5, 2, WeakCrossParams(1, 1))
    with pytest.raises(ValueError):
        search_max_product(4, 2, 0, WeakCrossParams(1, 1))


def test_search_json_shape():
    result = search_max_product(4, 2, 2, WeakCrossParams(1, 1))
    d = result.to_json_dict()
    assert d["best_product"] == "9"
    assert d["star_product"] == "9"
    assert d["exhaustive"] is True
    assert d["left_size"] == d["right_size"] == 3
    assert all(len(b) == 2 for b in d["left"])
