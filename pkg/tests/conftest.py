import numpy as np
import pytest

from tensorcert.core.sym_tensor import SymTensor, all_ones_tensor, diagonal_tensor, identity_tensor
from tensorcert.io.generators import counterexample_tensor


@pytest.fixture
def ones_3_2():
    """J with k=3, n=2."""
    return all_ones_tensor(3, 2)


@pytest.fixture
def identity_3_3():
    return identity_tensor(3, 3)


@pytest.fixture
def neg_identity_3_3():
    return identity_tensor(3, 3).negate()


@pytest.fixture
def counterexample():
    """Copositive k = n = 3 tensor that fails every sufficient test."""
    return counterexample_tensor()


@pytest.fixture
def two_blocks():
    """J(2) and J(3) placed on disjoint index sets {1,2} and {3,4,5}, k = 3."""
    entries = {key: 1.0 for key in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]}
    for key in [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 3, 3), (2, 3, 4), (2, 4, 4),
                (3, 3, 3), (3, 3, 4), (3, 4, 4), (4, 4, 4)]:
        entries[key] = 1.0
    return SymTensor(3, 5, entries)


@pytest.fixture
def row_sum_example():
    """k=3, n=2: a_111 = a_222 = 2, permutations of (1,1,2) equal -1. A x^3 = 2x1^3 + 2x2^3 - 3x1^2 x2."""
    return SymTensor.from_entries(3, 2, {(1, 1, 1): 2.0, (2, 2, 2): 2.0, (1, 1, 2): -1.0})


@pytest.fixture
def equal_diagonal():
    return diagonal_tensor(3, [2.0, 2.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
