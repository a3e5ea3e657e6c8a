import itertools
import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from latinbox.arrays import Array3D, DimensionError, FormatError, sample_binomial, validate_latin_box
from latinbox.packing import (COLUMNS, TriangleSET, Trajectory, TrajectorySample, deviation_report, from_array, greedy_pack,
                              is_maximal, ode_residual, predicted, process_pack)
from latinbox.utils import ParameterError

from conftest import all_ones

def greedy_sizes_n2() -> Counter:
    """Packing size of the greedy process for every order of the 8 triangles of K(2,2,2)."""
    triangles = list(itertools.product(range(2), repeat=3))
    sizes = Counter()
    for order in itertools.permutations(triangles):
        used = set()
        size = 0
        for a, b, c in order:
            edges = {("ab", a, b), ("ac", a, c), ("bc", b, c)}
            if not edges & used:
                used |= edges
                size += 1
        sizes[size] += 1
    return sizes

def test_from_array():
    assert from_array(Array3D.zeros(3, 3, 3)).size == 0
    H = from_array(all_ones(3, 3, 3))
    assert H.size == 27
    assert len(H.triangles()) == 27
    with pytest.raises(DimensionError):
        from_array(all_ones(2, 2, 3))

def test_greedy_small_cases():
    single = greedy_pack(from_array(Array3D.fromOnes(1, 1, 1, [(1, 1, 1)])), seed=0)
    assert single.chosen == [(0, 0, 0)]
    assert single.deg.tolist() == [[1], [1], [1]]

    assert len(greedy_pack(from_array(Array3D.zeros(4, 4, 4)), seed=0)) == 0

def test_greedy_is_maximal(rng):
    for _ in range(20):
        H = from_array(sample_binomial(6, 6, 6, 0.5, rng))
        packing = greedy_pack(H, rng)
        assert packing.checkInvariants()
        assert is_maximal(H, packing)

def test_greedy_n2_distribution():
    exact = greedy_sizes_n2()
    assert set(exact) <= {2, 3, 4}

    H = from_array(all_ones(2, 2, 2))
    draws = 4000
    observed = Counter(len(greedy_pack(H, seed)) for seed in range(draws))
    total = sum(exact.values())
    sizes = sorted(exact)
    expected = [draws * exact[s] / total for s in sizes]
    assert chisquare([observed[s] for s in sizes], expected).pvalue > 0.001

def test_packing_preserves_latin_boxes(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        M = sample_binomial(n, n, n, float(rng.random()), rng)
        box = greedy_pack(from_array(M), rng).toPartialLatinBox()
        assert validate_latin_box(box, M)

def test_triangle_set_rejects_shared_edges():
    packing = TriangleSET(3)
    packing.add(0, 1, 2)
    assert not packing.tryAdd(0, 1, 0)
    with pytest.raises(ValueError):
        packing.add(2, 1, 2)
    assert packing.tryAdd(1, 1, 1)
    assert packing.checkInvariants()

def test_process_initial_sample():
    trajectory = process_pack(5, m_max=0, seed=1)
    assert len(trajectory) == 1
    first = trajectory.samples[0]
    assert (first.step, first.deg_min, first.deg_max, first.deg_mean) == (0, 0, 0, 0.0)
    assert first.codeg_mean == 5.0
    assert (first.y_pred, first.z_pred) == (1.0, 1.0)

def test_process_invariants():
    packings = []
    trajectory = process_pack(6, m_max=6 ** 3, record_every=1, seed=2, check=True, packing_out=packings)
    assert [s.step for s in trajectory] == list(range(6 ** 3 + 1))

    means = [s.deg_mean for s in trajectory]
    assert all(b >= a for a, b in zip(means, means[1:]))

    packing = packings[0]
    for axis in range(3):
        assert packing.deg[axis].sum() == len(packing)
    assert is_maximal(from_array(all_ones(6, 6, 6)), packing)
    assert math.isnan(trajectory.samples[-1].codeg_mean) or trajectory.samples[-1].codeg_mean == 0

def test_process_default_recording():
    trajectory = process_pack(10, seed=3)
    steps = [s.step for s in trajectory]
    assert steps[0] == 0
    assert steps[-1] == 100
    assert steps[1] == 2

def test_process_argument_checks():
    with pytest.raises(ParameterError):
        process_pack(3, m_max=28)
    with pytest.raises(ParameterError):
        process_pack(0)
    with pytest.raises(ParameterError):
        process_pack(40, record_every=1)

def test_predicted():
    assert predicted(0) == (1.0, 1.0)
    y, z = predicted(4)
    assert y == pytest.approx(1 / 3)
    assert z == pytest.approx(1 / 9)
    with pytest.raises(ValueError):
        predicted(-1)

def test_ode_residual():
    y, z = predicted(1)
    dy_residual, dz_residual = ode_residual(1, 1e-4)
    assert abs(dy_residual) < 1e-6
    assert abs(dz_residual) < 1e-6
    assert y * z == pytest.approx(1 / (3 * math.sqrt(3)))

def test_deviation_report():
    assert deviation_report(process_pack(7, m_max=0, seed=0), 7).toJson() == {"sup_deg_dev": 0.0, "sup_codeg_dev": 0.0, "samples": 1}

    n = 20
    synthetic = Trajectory(n)
    for step in range(0, 401, 50):
        y, z = predicted(step / (n * n))
        synthetic.append(TrajectorySample(step, 0, n * (1 - y), n, n * z, y, z))
    report = deviation_report(synthetic, n)
    assert report.sup_deg_dev == pytest.approx(0, abs=1e-12)
    assert report.sup_codeg_dev == pytest.approx(0, abs=1e-12)
    assert report.within(0.05)

    with pytest.raises(ValueError):
        deviation_report(Trajectory(n), n)

def test_process_tracks_prediction():
    trajectory = process_pack(40, seed=11)
    report = deviation_report(trajectory, 40)
    assert report.sup_deg_dev < 0.1
    assert report.sup_codeg_dev < 0.1

def test_trajectory_csv(tmp_path):
    trajectory = process_pack(8, seed=4)
    path = tmp_path / "trajectory.csv"
    trajectory.toCsv(str(path))

    assert path.read_text().splitlines()[0] == ",".join(COLUMNS)
    loaded = Trajectory.fromCsv(str(path), 8)
    assert loaded.samples == trajectory.samples

    path.write_text("step,deg_mean\n0,0\n")
    with pytest.raises(FormatError):
        Trajectory.fromCsv(str(path), 8)

def test_trajectory_steps_increase():
    trajectory = Trajectory(3, [TrajectorySample(0, 0, 0.0, 0, 3.0, 1.0, 1.0)])
    with pytest.raises(ValueError):
        trajectory.append(TrajectorySample(0, 0, 0.0, 0, 3.0, 1.0, 1.0))
