import math
import numpy as np
import pytest
from vecapprox.algorithms import (
    approx_a2,
    approx_a3,
    approx_dispatch,
    boosted_row_estimates,
    cardinality_count,
    default_repetitions,
    dispatch_count,
    effective_budget,
    expected_count,
    full_read,
    median,
    nonadaptive_fixed_rows,
    nonadaptive_random_cells,
    norm_estimate_a1,
    run_algorithm,
    uses_iteration,
    zero_algorithm,
)
from vecapprox.config import ApproxParams, SpacePair
from vecapprox.information import InfoOracle, substream
from vecapprox.mixed_norm import target_norm


@pytest.fixture
def sp4():
    return SpacePair(n1=4, n2=4, p=1, q=2, u=2, v=1)


@pytest.fixture
def params4(sp4):
    return ApproxParams(sp=sp4, n=8, m=3)


def single_row(n1, n2, index, value):
    f = np.zeros((n1, n2))
    f[index] = value
    return f


def test_median_examples():
    assert median([5]) == 5
    assert median([1, 3, 2]) == 2
    assert median([1, 2, 3, 4]) == 2.5
    with pytest.raises(ValueError):
        median([])


def test_median_bounds_and_permutation_invariance():
    rng = substream(12, "median", 0).rng
    for size in range(1, 12):
        values = rng.normal(size=size)
        middle = median(values)
        assert values.min() <= middle <= values.max()
        for _ in range(5):
            assert median(rng.permutation(values)) == middle


def test_median_along_axis():
    table = np.array([[1.0, 3.0, 2.0], [4.0, 6.0, 5.0]])
    np.testing.assert_array_equal(median(table, axis=1), [2.0, 5.0])
    assert median(table) == 3.5


def test_norm_estimate_range():
    rng = substream(13, "range", 0).rng
    f = rng.normal(size=(3, 20))
    oracle = InfoOracle(f)
    for v in (1, 1.5, 2, 3, 10, 40):
        for row in range(3):
            indices = rng.integers(0, 20, size=7)
            estimate = norm_estimate_a1(oracle, row, v, indices)
            assert 0.0 <= estimate <= np.abs(f[row]).max() * (1 + 1e-12)


def test_sample_norm_handles_large_exponents():
    oracle = InfoOracle(np.full((1, 4), 1e300))
    assert norm_estimate_a1(oracle, 0, 50, [0, 1, 2]) == pytest.approx(1e300, rel=1e-12)


def test_default_repetitions():
    assert default_repetitions(4, 4) == math.ceil(11.1 * 3)
    assert default_repetitions(256, 256) == 100


def test_norm_estimate_constant_and_unimodular_rows():
    oracle = InfoOracle(np.full((2, 6), 3.0))
    assert norm_estimate_a1(oracle, 1, 2, [0, 5, 5]) == pytest.approx(3.0)
    assert oracle.count == 3
    signs = InfoOracle([[1.0, -1.0, -1.0, 1.0]])
    assert norm_estimate_a1(signs, 0, 1, [1, 2, 3]) == 1.0


def test_norm_estimate_rejects_infinite_exponent_and_empty_sample():
    oracle = InfoOracle(np.ones((1, 4)))
    with pytest.raises(ValueError):
        norm_estimate_a1(oracle, 0, "inf", [0])
    with pytest.raises(ValueError):
        norm_estimate_a1(oracle, 0, 1, [])


def test_norm_estimate_is_unbiased_for_v1():
    f = np.array([[1.0, 0.0, 0.0, 0.0]])
    stream = substream(11, "a1", 0)
    runs = 100_000
    columns = stream.uniform_index(4, size=runs)
    estimates = np.array([norm_estimate_a1(InfoOracle(f), 0, 1, [c]) for c in columns[:2000]])
    values = f[0, columns]
    sigma = values.std() / np.sqrt(runs)
    assert abs(values.mean() - 0.25) < 3 * sigma
    np.testing.assert_array_equal(estimates, values[:2000])


def test_boosted_estimates_on_zero_input(params4):
    oracle = InfoOracle(np.zeros((4, 4)))
    estimates = boosted_row_estimates(oracle, params4, substream(0, "t", 0))
    np.testing.assert_array_equal(estimates.a_tilde, np.zeros(4))
    np.testing.assert_array_equal(estimates.pi, np.arange(4))
    assert estimates.a.shape == (4, 3)
    assert oracle.count == 24


def test_boosted_estimates_rank_single_row_first(params4):
    f = single_row(4, 4, 2, 5.0)
    for seed in range(20):
        estimates = boosted_row_estimates(InfoOracle(f), params4, substream(seed, "t", 0))
        assert estimates.pi[0] == 2
        assert estimates.a_tilde[2] == pytest.approx(5.0)
        assert np.count_nonzero(estimates.a_tilde) == 1


def test_a2_recovers_single_constant_row(params4):
    f = single_row(4, 4, 2, 5.0)
    for seed in range(20):
        oracle = InfoOracle(f)
        output = approx_a2(oracle, params4, substream(seed, "t", 0))
        np.testing.assert_array_equal(output, f)
        assert oracle.count == 32


def test_a2_zero_input(params4):
    output = approx_a2(InfoOracle(np.zeros((4, 4))), params4, substream(0, "t", 0))
    assert not output.any()


def test_a2_rows_are_copies_or_zero():
    sp = SpacePair(n1=12, n2=7, p=1, q=2, u=2, v=1)
    params = ApproxParams(sp=sp, n=20, m=5)
    f = substream(5, "input", 0).rng.normal(size=(12, 7))
    output = approx_a2(InfoOracle(f), params, substream(5, "t", 0))
    copied = 0
    for i in range(12):
        if output[i].any():
            np.testing.assert_array_equal(output[i], f[i])
            copied += 1
    assert copied == params.rows_read


def test_a2_requires_subfull_budget(sp4):
    with pytest.raises(ValueError):
        approx_a2(InfoOracle(np.ones((4, 4))), ApproxParams(sp=sp4, n=16, m=1), substream(0, "t", 0))


def test_a3_recovers_and_doubles_count(params4):
    f = single_row(4, 4, 1, -2.0)
    oracle = InfoOracle(f)
    output = approx_a3(oracle, params4, substream(3, "t", 0))
    np.testing.assert_array_equal(output, f)
    assert oracle.count == 64
    zero = approx_a3(InfoOracle(np.zeros((4, 4))), params4, substream(3, "t", 0))
    assert not zero.any()


def test_a3_is_deterministic_per_stream(params4):
    f = substream(9, "input", 0).rng.normal(size=(4, 4))
    first = approx_a3(InfoOracle(f), params4, substream(9, "t", 0))
    second = approx_a3(InfoOracle(f), params4, substream(9, "t", 0))
    np.testing.assert_array_equal(first, second)


def test_dispatch_routing():
    assert not uses_iteration(SpacePair(n1=4, n2=4, p=1, q=2, u=2, v=1))
    assert uses_iteration(SpacePair(n1=4, n2=4, p=1, q=2, u="inf", v=1))

    a3_space = SpacePair(n1=4, n2=4, p=1, q=2, u="inf", v=1)
    params = ApproxParams(sp=a3_space, n=8, m=3)
    oracle = InfoOracle(np.ones((4, 4)))
    approx_dispatch(oracle, params, substream(0, "t", 0))
    assert oracle.count == 64 == dispatch_count(params)


def test_dispatch_zero_branch():
    sp = SpacePair(n1=4, n2=4, p=2, q=1, u=2, v=1)
    params = ApproxParams(sp=sp, n=8, m=3)
    oracle = InfoOracle(np.ones((4, 4)))
    output = approx_dispatch(oracle, params, substream(0, "t", 0))
    assert not output.any()
    assert oracle.count == 0 == dispatch_count(params)


def test_dispatch_full_read_branch(sp4):
    f = substream(1, "input", 0).rng.normal(size=(4, 4))
    params = ApproxParams(sp=sp4, n=16, m=3)
    oracle = InfoOracle(f)
    np.testing.assert_array_equal(approx_dispatch(oracle, params, substream(0, "t", 0)), f)
    assert oracle.count == 16 == dispatch_count(params)


def test_zero_algorithm_error_is_target_norm():
    sp = SpacePair(n1=3, n2=5, p=1, q=2, u=2, v=1)
    f = substream(2, "input", 0).rng.normal(size=(3, 5))
    output = zero_algorithm(sp)
    assert target_norm(f - output, sp) == target_norm(f, sp)


def test_full_read_counts_every_cell(sp4):
    oracle = InfoOracle(np.ones((4, 4)))
    full_read(oracle, sp4)
    assert oracle.count == 16


def test_fixed_rows(sp4):
    f = substream(4, "input", 0).rng.normal(size=(4, 4))
    oracle = InfoOracle(f)
    assert not nonadaptive_fixed_rows(oracle, sp4, 3).any()
    assert oracle.count == 0
    output = nonadaptive_fixed_rows(oracle, sp4, 9)
    np.testing.assert_array_equal(output[:2], f[:2])
    assert not output[2:].any()
    assert oracle.count == 8
    np.testing.assert_array_equal(nonadaptive_fixed_rows(InfoOracle(f), sp4, 16), f)


def test_random_cells_edge_budgets(sp4):
    f = substream(4, "input", 0).rng.normal(size=(4, 4))
    np.testing.assert_array_equal(nonadaptive_random_cells(InfoOracle(f), sp4, 16, substream(0, "t", 0)), f)
    oracle = InfoOracle(f)
    assert not nonadaptive_random_cells(oracle, sp4, 0, substream(0, "t", 0)).any()
    assert oracle.count == 0
    with pytest.raises(ValueError):
        nonadaptive_random_cells(InfoOracle(f), sp4, -1, substream(0, "t", 0))


def test_random_cells_support_hit_rate():
    sp = SpacePair(n1=10, n2=10, p=1, q=2, u=2, v=1)
    f = np.zeros((10, 10))
    f[:2, :] = 1.0  # s = 20 cells
    hits = np.array([
        np.count_nonzero(nonadaptive_random_cells(InfoOracle(f), sp, 30, substream(8, "cells", t)))
        for t in range(2000)
    ])
    expected = 20 * 30 / 100
    assert abs(hits.mean() - expected) < 4 * hits.std() / np.sqrt(hits.size)


def test_cardinality_examples(params4):
    assert cardinality_count(params4) == (32, 48)
    assert cardinality_count(params4, iterated=True) == (64, 96)
    small = ApproxParams(sp=SpacePair(n1=2, n2=2, p=1, q=2, u=2, v=1), n=1, m=1)
    assert cardinality_count(small) == (4, 6)


def test_cardinality_exact_on_random_configurations():
    stream = substream(13, "cardinality", 0)
    for trial in range(200):
        n1, n2 = (int(x) for x in stream.uniform_index(20, size=2) + 1)
        if n1 * n2 < 2:
            continue
        n = int(stream.uniform_index(n1 * n2 - 1)) + 1
        m = int(stream.uniform_index(6)) + 1
        params = ApproxParams(sp=SpacePair(n1=n1, n2=n2, p=1, q=2, u=2, v=1), n=n, m=m)
        f = stream.rng.normal(size=(n1, n2))
        count = cardinality_count(params)

        oracle = InfoOracle(f)
        approx_a2(oracle, params, stream.child("a2", trial))
        assert oracle.count == count.exact == m * n1 * math.ceil(n / n1) + math.ceil(n / n2) * n2
        assert count.exact <= count.bound

        oracle = InfoOracle(f)
        approx_a3(oracle, params, stream.child("a3", trial))
        assert oracle.count == 2 * count.exact


def test_effective_budget_is_largest_fitting_parameter():
    sp = SpacePair(n1=20, n2=20, p=1, q="inf", u="inf", v=1)
    for n in (80, 100, 250, 399):
        tuned = effective_budget(sp, n, 1, iterated=True)
        assert cardinality_count(ApproxParams(sp=sp, n=tuned, m=1), iterated=True).exact <= n
        if tuned + 1 < sp.cells:
            assert cardinality_count(ApproxParams(sp=sp, n=tuned + 1, m=1), iterated=True).exact > n
    assert effective_budget(sp, 79, 1, iterated=True) == 0
    assert effective_budget(sp, 80, 1, iterated=True) == 20


def test_run_algorithm_by_name(params4):
    f = single_row(4, 4, 0, 1.0)
    for name in ("dispatch", "a2", "a3", "zero", "fixed_rows", "random_cells"):
        oracle = InfoOracle(f)
        output = run_algorithm(name, oracle, params4, substream(0, "t", 0))
        assert output.shape == (4, 4)
        assert oracle.count == expected_count(name, params4)
    with pytest.raises(ValueError):
        run_algorithm("a4", InfoOracle(f), params4, substream(0, "t", 0))
