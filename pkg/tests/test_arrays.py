import itertools
import math

import numpy as np
import pytest
from scipy.stats import chisquare

from latinbox.arrays import (Array3D, ArrayProcess, ColoredArray, DimensionError, FormatError, PartialLatinBox, empty_shafts,
                             degree_maps, is_latin_box, sample_binomial, sample_green_blue, sample_process, shaft_degrees,
                             validate_latin_box)
from latinbox.utils import ParameterError

from conftest import all_ones

def cyclic_square(n: int) -> PartialLatinBox:
    return PartialLatinBox(n, n, n, {(r, c): (r + c - 2) % n + 1 for r in range(1, n + 1) for c in range(1, n + 1)})

def test_binomial_extremes():
    zero = sample_binomial(2, 2, 2, 0, seed=1)
    one = sample_binomial(2, 2, 2, 1, seed=1)
    assert zero.ones == 0
    assert one.ones == 8
    assert one == all_ones(2, 2, 2)

def test_binomial_mean_ones(rng):
    trials = 10_000
    ones = np.array([sample_binomial(4, 4, 4, 0.5, rng).ones for _ in range(trials)])
    sigma = math.sqrt(64 * 0.25)
    assert abs(ones.mean() - 32) <= 3 * sigma / math.sqrt(trials)

def test_binomial_is_reproducible():
    assert sample_binomial(3, 4, 5, 0.3, seed=9) == sample_binomial(3, 4, 5, 0.3, seed=9)

def test_binomial_rejects_bad_input():
    with pytest.raises(ParameterError):
        sample_binomial(2, 2, 2, 1.5)
    with pytest.raises(DimensionError):
        sample_binomial(0, 2, 2, 0.5)

def test_process_single_cell():
    process = sample_process(1, 1, seed=0)
    assert process.steps == 1
    assert process.position(1) == (1, 1, 1)
    assert process.shaftHittingTime() == 1

def test_process_prefixes(rng):
    process = sample_process(3, 4, rng)
    full = process.prefix(process.steps)
    assert full == all_ones(3, 3, 4)
    assert empty_shafts(full) == []
    assert process.prefix(0).ones == 0

    tau = process.shaftHittingTime()
    assert empty_shafts(process.prefix(tau)) == []
    assert len(empty_shafts(process.prefix(tau - 1))) == 1

    previous = process.prefix(0)
    for t in range(1, process.steps + 1):
        current = process.prefix(t)
        assert current.ones == t
        assert current.contains(previous)
        previous = current

def test_process_first_cell_is_uniform():
    trials = 10_000
    counts = np.zeros((2, 2, 2), dtype=int)
    for seed in range(trials):
        r, c, v = sample_process(2, 2, seed=seed).position(1)
        counts[r - 1, c - 1, v - 1] += 1

    sigma = math.sqrt(trials * (1 / 8) * (7 / 8))
    assert np.all(np.abs(counts - trials / 8) <= 3 * sigma)

def test_process_needs_enough_symbols():
    with pytest.raises(DimensionError):
        sample_process(3, 2)

def test_binomial_coupling_is_a_prefix():
    process, M = ArrayProcess.binomialCoupling(3, 4, 0.4, seed=5)
    assert process.prefix(M.ones) == M

def test_green_blue_extremes():
    full = sample_green_blue(3, 4, 1, seed=2)
    assert full.blue.ones == 0
    assert full.green.ones == 3 * 3 * 4

    empty = sample_green_blue(3, 4, 0, seed=2)
    assert empty.green.ones == 0
    assert empty.blue.ones == 9
    assert np.array_equal(empty.blue.shaftCounts(), np.ones((3, 3)))

def test_green_blue_blue_symbol_is_uniform():
    trials = 3000
    counts = np.zeros((2, 2, 3), dtype=int)
    for seed in range(trials):
        colored = sample_green_blue(2, 3, 0, seed=seed)
        assert colored.blue.ones == 4
        counts += colored.blue.cells()

    assert np.all(counts.sum(axis=2) == trials)
    assert chisquare(counts.ravel()).pvalue > 0.001

def test_green_blue_has_no_empty_shafts(rng):
    for _ in range(20):
        colored = sample_green_blue(4, 6, 0.05, rng)
        assert empty_shafts(colored) == []
        assert not np.any(colored.green.packed & colored.blue.packed)

def test_colored_array_rejects_stray_blue():
    green = all_ones(2, 2, 2)
    blue = Array3D.fromOnes(2, 2, 2, [(1, 1, 1)])
    with pytest.raises(ValueError):
        ColoredArray(green, blue)

def test_empty_shafts():
    assert empty_shafts(all_ones(2, 2, 2)) == []
    assert empty_shafts(Array3D.zeros(2, 2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert empty_shafts(Array3D.fromOnes(2, 2, 2, [(1, 1, 2)])) == [(1, 2), (2, 1), (2, 2)]

def test_shaft_degrees():
    assert shaft_degrees(all_ones(2, 2, 3), 1, 1) == (3, 1)
    assert shaft_degrees(Array3D.zeros(2, 2, 3), 2, 2) == (0, 0)
    assert shaft_degrees(Array3D.fromOnes(2, 2, 4, [(1, 2, 1), (1, 2, 3)]), 1, 2) == (2, 1)

def test_degree_maps_match_shaft_degrees(rng):
    M = sample_binomial(3, 3, 5, 0.5, rng)
    d, d_m = degree_maps(M)
    for r in range(1, 4):
        for c in range(1, 4):
            assert shaft_degrees(M, r, c) == (d[r - 1, c - 1], d_m[r - 1, c - 1])

def naive_shafts(M: Array3D) -> tuple[list, dict]:
    m, n, k = M.dims
    empty, degrees = [], {}
    for r in range(1, m + 1):
        for c in range(1, n + 1):
            d = d_m = 0
            for v in range(1, k + 1):
                if M.get(r, c, v):
                    d += 1
                    if v > n:
                        d_m += 1
            if d == 0:
                empty.append((r, c))
            degrees[(r, c)] = (d, d_m)
    return empty, degrees

def check_shafts(M: Array3D):
    empty, degrees = naive_shafts(M)
    assert empty_shafts(M) == empty
    for (r, c), expected in degrees.items():
        assert shaft_degrees(M, r, c) == expected

@pytest.mark.parametrize("dims", [(1, 1, 1), (1, 1, 2), (2, 1, 1), (2, 1, 2), (1, 2, 2), (2, 2, 2)])
def test_shafts_match_naive_scan_exhaustively(dims):
    size = math.prod(dims)
    for bits in itertools.product((False, True), repeat=size):
        check_shafts(Array3D.fromCells(np.array(bits).reshape(dims)))

def test_shafts_match_naive_scan_at_random(rng):
    for _ in range(50):
        m, n = rng.integers(3, 5, size=2)
        k = n + int(rng.integers(0, 3))
        check_shafts(sample_binomial(int(m), int(n), k, float(rng.random()), rng))

def test_validate_latin_box():
    M = all_ones(3, 3, 3)
    empty = PartialLatinBox(3, 3, 3)
    assert validate_latin_box(empty, M)
    assert not validate_latin_box(empty, M, proper=True)

    square = cyclic_square(3)
    assert validate_latin_box(square, M, proper=True)

    clash = PartialLatinBox(3, 3, 3, {(1, 1): 2, (1, 3): 2})
    assert not validate_latin_box(clash, M)

    assert not validate_latin_box(square, Array3D.fromOnes(3, 3, 3, [(1, 1, 1)]))
    with pytest.raises(DimensionError):
        validate_latin_box(square, all_ones(3, 3, 4))

def test_validate_is_monotone_in_the_array(rng):
    square = cyclic_square(4)
    M = square.toArray()
    assert validate_latin_box(square, M, proper=True)
    for _ in range(30):
        r, c, v = (int(x) + 1 for x in rng.integers(0, 4, size=3))
        M.set(r, c, v)
        assert validate_latin_box(square, M, proper=True)

def test_is_latin_box():
    assert is_latin_box(cyclic_square(3).toArray())
    assert not is_latin_box(all_ones(2, 2, 2))
    rectangle = PartialLatinBox(2, 3, 3, {(1, 1): 1, (1, 2): 2, (1, 3): 3, (2, 1): 2, (2, 2): 3, (2, 3): 1})
    assert is_latin_box(rectangle.toArray())

def test_partial_box_assign_and_erase():
    box = PartialLatinBox(2, 2, 3)
    box.assign(1, 1, 1)
    assert not box.canAssign(1, 2, 1)
    with pytest.raises(ValueError):
        box.assign(2, 1, 1)
    assert box.erase(1, 1) == 1
    assert box.canAssign(1, 2, 1)
    assert box.erase(1, 1) is None

def test_partial_box_grid_and_json():
    box = PartialLatinBox.fromGrid([[1, 2], [0, 1]], symbols=3)
    assert box.dims == (2, 2, 3)
    assert box.grid() == [[1, 2], [0, 1]]
    assert PartialLatinBox.fromJson(box.toJson()) == box

def test_partial_box_json_errors():
    with pytest.raises(FormatError):
        PartialLatinBox.fromJson({"dims": [3, 2, 3], "grid": [[1, 2], [0, 1]]})
    with pytest.raises(FormatError):
        PartialLatinBox.fromJson({"dims": [2, 3, 3], "grid": [[1, 2], [0, 1]]})
    with pytest.raises(FormatError):
        PartialLatinBox.fromJson({"dims": [2, 2, 3], "grid": [[1, 4], [0, 1]]})
    with pytest.raises(FormatError):
        PartialLatinBox.fromJson({"dims": [2, 2, 3], "grid": [1, 2]})
    with pytest.raises(FormatError):
        PartialLatinBox.fromJson({"grid": [[1]]})

def test_binary_format(tmp_path, rng):
    M = sample_binomial(3, 4, 11, 0.4, rng)
    data = M.toBytes()
    assert data[:4] == b"LBOX"
    assert Array3D.fromBytes(data) == M

    path = tmp_path / "array.bin"
    M.dump(str(path))
    assert Array3D.load(str(path)) == M

def test_binary_format_errors():
    data = all_ones(2, 2, 2).toBytes()
    with pytest.raises(FormatError):
        Array3D.fromBytes(b"XBOX" + data[4:])
    with pytest.raises(FormatError):
        Array3D.fromBytes(data[:-1])
    with pytest.raises(FormatError):
        Array3D.fromBytes(data[:3])

def test_json_format(tmp_path):
    M = Array3D.fromOnes(2, 3, 4, [(1, 2, 3), (2, 3, 4)])
    assert M.toJson()["ones"] == [[1, 2, 3], [2, 3, 4]]

    path = tmp_path / "array.json"
    M.dump(str(path))
    assert Array3D.load(str(path)) == M

    with pytest.raises(FormatError):
        Array3D.fromJson({"dims": [2, 2, 2], "ones": [[3, 1, 1]]})
    with pytest.raises(FormatError):
        Array3D.fromJson({"ones": []})

def test_symbol_mask_ignores_padding_bits():
    bits = np.full((1, 1, 1), 0xFF, dtype=np.uint8)
    M = Array3D(1, 1, 3, bits)
    assert M.ones == 3
    assert M.shaftCounts(1)[0, 0] == 2
