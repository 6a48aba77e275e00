import numpy as np
import pytest
from numpy.testing import assert_allclose

from tensorcert.core.exceptions.convergence_error import ConvergenceError
from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor, diagonal_tensor, identity_tensor, zero_tensor
from tensorcert.core.tensor_config import IterationConfig, SearchConfig
from tensorcert.io.generators import random_ess_nonpos, random_nonneg
from tensorcert.spectral.perron_iteration import (
    has_hpp_eigenvalue,
    lambda_max,
    lambda_max_variational,
    lambda_min_ess_nonpos,
    power_iteration_block,
)
from tensorcert.spectral.spectral_bounds import bounds_row_sums, lambda_min_bounds


def test_block_iteration_on_ones(ones_3_2):
    result = power_iteration_block(ones_3_2)
    assert result.eigenvalue == pytest.approx(4.0, abs=1e-9)
    assert_allclose(result.eigenvector, [2 ** (-1 / 3)] * 2, atol=1e-9)
    assert result.within_tolerance()


def test_block_iteration_examples(ones_3_2):
    single = SymTensor(3, 1, {(0, 0, 0): 2.5})
    assert power_iteration_block(single).eigenvalue == pytest.approx(2.5)
    assert power_iteration_block(ones_3_2.add(identity_tensor(3, 2))).eigenvalue == pytest.approx(5.0, abs=1e-9)


def test_block_iteration_preconditions(identity_3_3, counterexample):
    with pytest.raises(TensorPreconditionError):
        power_iteration_block(identity_3_3)
    with pytest.raises(TensorPreconditionError):
        power_iteration_block(counterexample)


def test_block_iteration_reports_bracket():
    a = SymTensor.from_entries(3, 2, {(1, 1, 1): 1.0, (1, 2, 2): 0.5, (2, 2, 2): 3.0})
    with pytest.raises(ConvergenceError) as info:
        power_iteration_block(a, IterationConfig(max_iterations=1))
    low, high = info.value.bracket
    assert low <= high
    assert info.value.iterations == 1


def test_lambda_max_examples(identity_3_3, two_blocks):
    result = lambda_max(identity_3_3)
    assert result.eigenvalue == pytest.approx(1.0)
    assert [value for _, value in result.block_lambdas] == pytest.approx([1.0, 1.0, 1.0])

    result = lambda_max(diagonal_tensor(3, [1.0, 2.0]))
    assert result.eigenvalue == pytest.approx(2.0)
    assert_allclose(result.eigenvector, [0.0, 1.0])

    result = lambda_max(two_blocks)
    assert result.eigenvalue == pytest.approx(9.0, abs=1e-9)
    assert [block for block, _ in result.block_lambdas] == [(1, 2), (3, 4, 5)]
    assert result.eigenvector[:2] == pytest.approx([0.0, 0.0])
    assert result.within_tolerance()


def test_lambda_max_threaded_matches_serial(two_blocks):
    serial = lambda_max(two_blocks)
    threaded = lambda_max(two_blocks, IterationConfig(workers=2))
    assert threaded.eigenvalue == serial.eigenvalue
    assert threaded.block_lambdas == serial.block_lambdas


def test_lambda_max_essentially_nonnegative():
    a = SymTensor.from_entries(3, 2, {(1, 1, 1): -2.0, (2, 2, 2): 3.0, (1, 1, 2): 1.0, (1, 2, 2): 1.0})
    shifted = lambda_max(a.shift_diagonal(2.0))
    assert lambda_max(a).eigenvalue == pytest.approx(shifted.eigenvalue - 2.0, abs=1e-8)


def test_lambda_max_rejects(counterexample):
    with pytest.raises(TensorPreconditionError):
        lambda_max(counterexample)


def test_sandwich_on_random_nonnegative(rng):
    for trial in range(200):
        k = 3 + trial % 2
        n = 2 + (trial // 2) % 4
        a = random_nonneg(k, n, rng)
        result = lambda_max(a)
        lower, upper = bounds_row_sums(a)
        assert lower - 1e-8 <= result.eigenvalue <= upper + 1e-8
        assert result.within_tolerance()
        assert np.sum(result.eigenvector ** k) == pytest.approx(1.0)


def test_perron_vector_positive_on_irreducible_blocks(rng):
    for _ in range(10):
        a = random_nonneg(3, 4, rng, density=1.0)
        result = power_iteration_block(a)
        assert result.eigenvector.min() > 1e-12


def test_monotonicity(rng):
    for trial in range(100):
        k, n = 3 + trial % 2, 2 + trial % 3
        a = random_nonneg(k, n, rng)
        kept = {key: v for key, v in a.entries.items() if rng.random() < 0.6}
        b = SymTensor(k, n, kept)
        assert lambda_max(b).eigenvalue <= lambda_max(a).eigenvalue + 1e-8


def test_shift_equivariance(rng):
    for _ in range(10):
        a = random_nonneg(3, 3, rng)
        c = rng.uniform(-1.0, 1.0)
        assert lambda_max(a.shift_diagonal(c)).eigenvalue == pytest.approx(lambda_max(a).eigenvalue + c, abs=1e-8)


def test_variational_examples(ones_3_2, identity_3_3, equal_diagonal):
    assert lambda_max_variational(ones_3_2) == pytest.approx(4.0, abs=1e-6)
    assert lambda_max_variational(identity_3_3) == pytest.approx(1.0, abs=1e-6)
    assert lambda_max_variational(equal_diagonal) == pytest.approx(2.0, abs=1e-6)


def test_variational_matches_power_iteration(rng):
    cfg = SearchConfig(restarts=10, seed=3)
    for trial in range(100):
        k, n = 2 + trial % 3, 2 + (trial // 3) % 3
        a = random_nonneg(k, n, rng, density=1.0)
        if trial >= 50:
            a = a.shift_diagonal(-rng.uniform(0.1, 2.0))
        expected = lambda_max(a).eigenvalue
        found = lambda_max_variational(a, cfg)
        assert found <= expected + 1e-8
        assert found == pytest.approx(expected, abs=1e-5)


def test_lambda_min_examples(ones_3_2, neg_identity_3_3):
    assert lambda_min_ess_nonpos(ones_3_2.negate()).eigenvalue == pytest.approx(-4.0, abs=1e-9)
    assert lambda_min_ess_nonpos(neg_identity_3_3).eigenvalue == pytest.approx(-1.0)
    assert lambda_min_ess_nonpos(zero_tensor(3, 2)).eigenvalue == pytest.approx(0.0, abs=1e-12)


def test_lambda_min_row_sum_example(row_sum_example):
    result = lambda_min_ess_nonpos(row_sum_example)
    assert result.eigenvalue == pytest.approx(2.0 - 2.0 ** (2.0 / 3.0), abs=1e-8)
    assert result.eigenvector.min() > 0
    assert result.within_tolerance()


def test_lambda_min_rejects(ones_3_2):
    with pytest.raises(TensorPreconditionError):
        lambda_min_ess_nonpos(ones_3_2)


def test_lambda_min_on_random_ess_nonpos(rng):
    for trial in range(100):
        a = random_ess_nonpos(3 + trial % 2, 2 + (trial // 2) % 3, rng)
        result = lambda_min_ess_nonpos(a)
        lower, upper = lambda_min_bounds(a)
        assert lower - 1e-8 <= result.eigenvalue <= upper + 1e-8


def test_hpp_examples(equal_diagonal, ones_3_2):
    pair = has_hpp_eigenvalue(equal_diagonal)
    assert pair is not None
    assert pair.eigenvalue == pytest.approx(2.0)
    assert_allclose(pair.eigenvector, [2 ** (-1 / 3)] * 2)

    assert has_hpp_eigenvalue(diagonal_tensor(3, [1.0, 2.0])) is None
    assert has_hpp_eigenvalue(ones_3_2) is not None


def test_hpp_flips_when_one_block_is_scaled():
    left = {key: 1.0 for key in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]}
    right = {(i + 2, j + 2, l + 2): v for (i, j, l), v in left.items()}
    balanced = SymTensor(3, 4, {**left, **right})
    pair = has_hpp_eigenvalue(balanced)
    assert pair is not None
    assert pair.eigenvalue == pytest.approx(4.0, abs=1e-9)
    assert pair.eigenvector.min() > 0
    assert pair.residual <= 1e-9

    perturbed = SymTensor(3, 4, {**left, **{key: 1.01 * v for key, v in right.items()}})
    assert has_hpp_eigenvalue(perturbed) is None
