import numpy as np
import pytest
from numpy.testing import assert_allclose

from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.exceptions.tensor_shape_error import TensorShapeError
from tensorcert.core.k_simplex import KSimplexSearch
from tensorcert.core.sym_tensor import SymTensor, identity_tensor
from tensorcert.core.tensor_config import SearchConfig
from tensorcert.copositivity.nmin_search import compositions, k_simplex_grid, nmin_grid_oracle, nmin_search
from tensorcert.io.generators import random_ess_nonpos
from tensorcert.spectral.perron_iteration import lambda_min_ess_nonpos


def test_compositions_count():
    rows = compositions(3, 4)
    assert rows.shape == (15, 3)
    assert np.all(rows.sum(axis=1) == 4)
    assert len({tuple(row) for row in rows}) == 15


def test_grid_points_on_k_sphere():
    points = k_simplex_grid(3, 4, 6)
    assert_allclose(np.sum(points ** 4, axis=1), 1.0)
    assert np.all(points >= 0)


def test_grid_guards():
    with pytest.raises(TensorShapeError):
        k_simplex_grid(6, 3, 10)
    with pytest.raises(TensorShapeError):
        k_simplex_grid(3, 3, 0)


def test_starting_points_are_feasible(counterexample):
    starts = KSimplexSearch(counterexample).starting_points(restarts=6, seed=1)
    assert len(starts) == 1 + 3 + 6
    for start in starts:
        assert np.all(start >= 0)
        assert np.sum(start ** 3) == pytest.approx(1.0)


def test_search_is_deterministic(counterexample):
    cfg = SearchConfig(restarts=8, seed=11)
    first, second = nmin_search(counterexample, cfg), nmin_search(counterexample, cfg)
    assert first.value == second.value
    assert_allclose(first.argmin, second.argmin)


def test_nmin_examples(counterexample, ones_3_2):
    found = nmin_search(counterexample)
    assert found.value == pytest.approx(0.0, abs=1e-6)
    assert np.all(found.argmin >= 0)

    assert nmin_search(ones_3_2.negate()).value == pytest.approx(-4.0, abs=1e-6)
    assert nmin_search(identity_tensor(3, 3)).value == pytest.approx(1.0, abs=1e-12)


def test_nmin_search_needs_symmetry():
    general = SymTensor.from_entries(2, 2, {(1, 2): 1.0}, symmetric=False)
    with pytest.raises(TensorPreconditionError):
        nmin_search(general)


def test_grid_oracle_examples(counterexample, ones_3_2):
    assert nmin_grid_oracle(identity_tensor(3, 3), 7).value == pytest.approx(1.0)
    assert nmin_grid_oracle(ones_3_2.negate(), 20).value == pytest.approx(-4.0, abs=1e-9)
    assert nmin_grid_oracle(counterexample, 20).value == pytest.approx(0.0, abs=1e-12)


def test_nmin_agrees_with_lambda_min_on_ess_nonpos(rng):
    cfg = SearchConfig(restarts=20, seed=5)
    for trial in range(100):
        a = random_ess_nonpos(3 + trial % 2, 2 + (trial // 2) % 3, rng)
        expected = lambda_min_ess_nonpos(a).eigenvalue
        assert nmin_search(a, cfg).value == pytest.approx(expected, abs=1e-5)
        # grid points are feasible, so the grid minimum can only sit above the true minimum
        assert nmin_grid_oracle(a, 20).value >= expected - 1e-9
