import dataclasses
import itertools
import logging
import math

import numpy as np
import pytest

from latinbox.arrays import Array3D, ColoredArray, DimensionError, PartialLatinBox, sample_binomial, sample_green_blue, validate_latin_box
from latinbox.enumeration import iter_latin_boxes, iterate_block_probability, q_small
from latinbox.finders import (FinderOutcome, FinderStatus, StagedFailure, StagedParams, block_order, build_B2, find_block_recursive,
                              find_exact, find_plane_matching, find_staged, merge_packing, staged_sets)
from latinbox.matching import PermanentCapExceeded
from latinbox.utils import ParameterError

from conftest import all_ones

def supports_some_box(M: Array3D) -> bool:
    cells = M.cells()
    return any(all(cells[r, c, grid[r][c] - 1] for r in range(M.m) for c in range(M.n))
               for grid in iter_latin_boxes(*M.dims))

def assert_sound(outcome: FinderOutcome, M):
    if outcome.success:
        assert validate_latin_box(outcome.result, M, proper=True)

# exact

def test_exact_counts():
    assert find_exact(all_ones(2, 2, 2), mode="count_all").count == 2
    assert find_exact(all_ones(3, 3, 3), mode="count_all").count == 12
    assert find_exact(all_ones(2, 3, 3), mode="count_all").count == 12
    assert find_exact(all_ones(1, 1, 1), mode="count_all").count == 1

def test_exact_first_is_valid():
    M = all_ones(3, 4, 5)
    outcome = find_exact(M)
    assert outcome.status is FinderStatus.SUCCESS
    assert outcome.count is None
    assert_sound(outcome, M)

def test_exact_empty_shaft():
    M = all_ones(2, 2, 2)
    M.set(1, 2, 1, False)
    M.set(1, 2, 2, False)
    outcome = find_exact(M, mode="count_all")
    assert outcome.status is FinderStatus.EXHAUSTED
    assert outcome.stats["empty_shaft"]
    assert outcome.count == 0

def test_exact_matches_enumeration_on_every_small_array():
    for bits in itertools.product((False, True), repeat=8):
        M = Array3D.fromCells(np.array(bits).reshape(2, 2, 2))
        outcome = find_exact(M)
        assert outcome.success == supports_some_box(M)
        assert outcome.status in (FinderStatus.SUCCESS, FinderStatus.EXHAUSTED)
        assert_sound(outcome, M)

@pytest.mark.parametrize("dims", [(2, 2, 3), (3, 3, 3), (2, 3, 3)])
def test_exact_matches_enumeration_on_random_arrays(dims, rng):
    for _ in range(40):
        M = sample_binomial(*dims, 0.6, rng)
        outcome = find_exact(M)
        assert outcome.success == supports_some_box(M)
        assert_sound(outcome, M)

@pytest.mark.parametrize("mrv", [True, False])
def test_exact_count_matches_enumeration(mrv, rng):
    for _ in range(20):
        M = sample_binomial(3, 3, 3, 0.7, rng)
        cells = M.cells()
        expected = sum(1 for grid in iter_latin_boxes(3, 3, 3)
                       if all(cells[r, c, grid[r][c] - 1] for r in range(3) for c in range(3)))
        assert find_exact(M, mode="count_all", mrv=mrv).count == expected

def test_exact_is_monotone(rng):
    for _ in range(20):
        M = sample_binomial(3, 3, 3, 0.5, rng)
        before = find_exact(M).success
        r, c, v = (int(x) + 1 for x in rng.integers(0, 3, size=3))
        M.set(r, c, v)
        assert find_exact(M).success or not before

def test_exact_node_cap_is_indeterminate():
    outcome = find_exact(all_ones(4, 4, 4), mode="count_all", node_cap=10)
    assert outcome.status is FinderStatus.INDETERMINATE
    assert outcome.reason == "node-cap"
    assert outcome.stats["nodes"] == 11

def test_exact_argument_checks():
    with pytest.raises(DimensionError):
        find_exact(all_ones(3, 2, 3))
    with pytest.raises(ParameterError):
        find_exact(all_ones(2, 2, 2), mode="all")
    with pytest.raises(ParameterError):
        find_exact(all_ones(5, 5, 5), mode="count_all")

# block recursion

def test_block_order():
    assert block_order(1) == (2, 0)
    assert block_order(8) == (2, 3)
    assert block_order(9) == (3, 2)
    with pytest.raises(DimensionError):
        block_order(6)

def test_block_trivial_and_full():
    one = find_block_recursive(all_ones(1, 1, 1))
    assert one.success
    assert one.result.grid() == [[1]]

    assert find_block_recursive(Array3D.zeros(1, 1, 1)).status is FinderStatus.ABORTED

    for n in (2, 3, 4, 8, 9):
        M = all_ones(n, n, n)
        outcome = find_block_recursive(M)
        assert outcome.success
        assert_sound(outcome, M)

def test_block_is_conservative(rng):
    for n, p in ((2, 0.8), (3, 0.8), (4, 0.9)):
        for _ in range(30):
            M = sample_binomial(n, n, n, p, rng)
            block = find_block_recursive(M)
            assert_sound(block, M)
            if block.success:
                assert find_exact(M).success

def test_block_rate_matches_two_level_iteration(rng):
    trials = 5000
    expected = iterate_block_probability(q_small(2), 0.95, 2).values[-1]
    successes = sum(find_block_recursive(sample_binomial(4, 4, 4, 0.95, rng)).success for _ in range(trials))

    sigma = math.sqrt(expected * (1 - expected) / trials)
    assert successes / trials >= expected - 3 * sigma

def test_block_needs_a_cube():
    with pytest.raises(DimensionError):
        find_block_recursive(all_ones(2, 2, 3))

# plane matchings

@pytest.mark.parametrize("uniform", ["exact", "fast"])
def test_plane_complete_always_succeeds(uniform):
    M = all_ones(6, 6, 6)
    for seed in range(10):
        outcome = find_plane_matching(M, uniform=uniform, seed=seed)
        assert outcome.success
        assert outcome.stats["rows_built"] == 6
        assert_sound(outcome, M)

def test_plane_single_row():
    M = Array3D.fromOnes(1, 3, 3, [(1, 1, 2), (1, 2, 3), (1, 3, 1)])
    outcome = find_plane_matching(M, seed=0)
    assert outcome.result.grid() == [[2, 3, 1]]

def test_plane_reports_the_failing_plane():
    M = all_ones(3, 3, 3)
    M.set(2, 1, 1, False)
    M.set(2, 1, 2, False)
    M.set(2, 1, 3, False)
    outcome = find_plane_matching(M, seed=1)
    assert outcome.status is FinderStatus.ABORTED
    assert outcome.stage == "plane-2"
    assert outcome.reason == "no-matching"
    assert outcome.stats["rows_built"] == 1

def test_plane_abort_check_only_adds_aborts():
    for seed in range(40):
        M = sample_binomial(4, 8, 8, 0.8, seed)
        off = find_plane_matching(M, seed=seed)
        on = find_plane_matching(M, abort_check=True, delta=0.2, seed=seed)
        assert_sound(off, M)
        assert_sound(on, M)
        if on.success:
            assert off.success
            assert on.result == off.result

def test_plane_argument_checks():
    with pytest.raises(DimensionError):
        find_plane_matching(all_ones(2, 3, 4))
    with pytest.raises(ParameterError):
        find_plane_matching(all_ones(2, 3, 3), uniform="slow")
    with pytest.raises(PermanentCapExceeded):
        find_plane_matching(all_ones(2, 6, 6), cap=5)
    with pytest.raises(ParameterError):
        find_plane_matching(all_ones(2, 4, 4), abort_check=True, delta=1.5, seed=0)

# staged

def test_b2_is_empty_without_thin_shafts():
    params = StagedParams(eps=1.0, symbol_budget_low=1, symbol_budget_high=1, degree_threshold=0)
    assert len(build_B2(all_ones(3, 3, 6), params, seed=0)) == 0

def test_b2_single_cell():
    green = Array3D.fromOnes(1, 1, 2, [(1, 1, 1)])
    params = StagedParams(eps=1.0, symbol_budget_low=1, symbol_budget_high=1, degree_threshold=0.5)
    assert build_B2(green, params, seed=0).entries == {(1, 1): 1}

def test_b2_covers_exactly_the_thin_shafts():
    n, m = 16, 24
    eps = m / n - 1
    p = (2 / (1 + eps)) * (math.log(n) - math.log(math.log(n))) / n
    params = dataclasses.replace(StagedParams.fromShape(n, eps), retries=200)

    for seed in range(10):
        M = sample_green_blue(n, m, p, seed)
        try:
            box = build_B2(M, params, seed=seed)
        except StagedFailure:
            continue

        green = M.green.cells()
        expected = {(r + 1, c + 1) for r in range(n) for c in range(n) if green[r, c, n:].sum() < params.degree_threshold}
        assert set(box.entries) == expected
        assert validate_latin_box(box, M)
        return
    pytest.fail("no seed produced a B2 box")

def test_b2_failure_names_the_cell(caplog):
    # two T cells in one row, each with the single symbol 1
    green = Array3D.fromOnes(2, 2, 3, [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 3)])
    params = StagedParams(eps=0.5, symbol_budget_low=1, symbol_budget_high=1, degree_threshold=0.5, retries=2)
    with caplog.at_level(logging.WARNING, logger="latinbox"):
        with pytest.raises(StagedFailure) as e:
            build_B2(green, params, seed=0)
    assert e.value.stage == "B2"
    assert e.value.cell == (1, 2)
    assert sum("B2 collision" in r.message for r in caplog.records) == 3

def test_staged_sets(rng):
    M = sample_green_blue(8, 12, 0.3, rng)
    params = StagedParams.fromShape(8, 0.5)
    sets = staged_sets(M, params)
    assert not np.any(sets.T & ~sets.S)
    assert np.array_equal(sets.S, M.green.shaftCounts(8) < params.degree_threshold)

def test_merge_packing():
    b2 = PartialLatinBox(2, 2, 4, {(1, 1): 1})
    b3 = PartialLatinBox(2, 2, 4, {(1, 1): 2, (1, 2): 1, (2, 2): 2})
    b4, erased = merge_packing(b2, b3)
    assert b4.entries == {(1, 1): 1, (2, 2): 2}
    assert erased == 1

def test_staged_all_ones():
    n, m = 4, 12
    params = dataclasses.replace(StagedParams.fromShape(n, 2.0), symbol_budget_high=m - n)
    M = all_ones(n, n, m)
    for seed in range(10):
        outcome = find_staged(M, params, seed)
        assert outcome.success
        assert_sound(outcome, M)

def test_staged_high_symbols_only():
    green = Array3D.fromOnes(2, 2, 4, [(r, c, v) for r in (1, 2) for c in (1, 2) for v in (3, 4)])
    params = dataclasses.replace(StagedParams.fromShape(2, 1.0), symbol_budget_high=2)
    outcome = find_staged(green, params, seed=3)

    assert outcome.success
    assert outcome.stats["b2_size"] == 0
    assert outcome.stats["b3_size"] == 0
    assert_sound(outcome, green)
    assert {v for row in outcome.result.grid() for v in row} == {3, 4}
    assert find_exact(green).success

def test_staged_is_sound_on_random_arrays(rng):
    for _ in range(20):
        M = sample_green_blue(8, 12, 0.25, rng)
        outcome = find_staged(M, seed=rng)
        assert outcome.status in (FinderStatus.SUCCESS, FinderStatus.ABORTED)
        if outcome.success:
            assert validate_latin_box(outcome.result, M.combined(), proper=True)
        else:
            assert outcome.stage in ("B2", "final")

def test_staged_argument_checks():
    with pytest.raises(DimensionError):
        find_staged(all_ones(3, 3, 3))
    with pytest.raises(ParameterError):
        find_staged(Array3D.zeros(2, 2, 4))

def test_outcome_json():
    outcome = find_exact(all_ones(2, 2, 2), mode="count_all")
    data = outcome.toJson()
    assert data["status"] == "success"
    assert data["count"] == "2"
    assert data["dims"] == [2, 2, 2]
    assert PartialLatinBox.fromGrid(data["grid"], 2) == outcome.result

    aborted = FinderOutcome.aborted("B2", "menus exhausted", S=3).toJson()
    assert aborted == {"status": "aborted", "stage": "B2", "reason": "menus exhausted", "stats": {"S": 3}}
