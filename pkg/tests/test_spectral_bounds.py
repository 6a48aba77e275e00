import math

import pytest

from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor, diagonal_tensor
from tensorcert.spectral.spectral_bounds import bounds_row_sums, lambda_min_bounds


def test_row_sum_bounds_examples(ones_3_2, identity_3_3):
    assert bounds_row_sums(ones_3_2) == pytest.approx((4.0, 4.0))
    assert bounds_row_sums(identity_3_3) == pytest.approx((1.0, 1.0))
    assert bounds_row_sums(diagonal_tensor(3, [1.0, 2.0])) == pytest.approx((2.0, 2.0))


def test_row_sum_bounds_accept_essentially_nonnegative(ones_3_2):
    lower, upper = bounds_row_sums(ones_3_2.shift_diagonal(-3.0))
    assert (lower, upper) == pytest.approx((1.0, 1.0))


def test_row_sum_bounds_without_symmetry():
    general = SymTensor.from_entries(2, 2, {(1, 2): 1.0, (1, 1): 1.0}, symmetric=False)
    lower, upper = bounds_row_sums(general)
    assert lower == -math.inf
    assert upper == pytest.approx(2.0)


def test_row_sum_bounds_reject(counterexample):
    with pytest.raises(TensorPreconditionError):
        bounds_row_sums(counterexample)


def test_lambda_min_bounds_examples(ones_3_2, neg_identity_3_3, row_sum_example):
    assert lambda_min_bounds(ones_3_2.negate()) == pytest.approx((-4.0, -4.0))
    assert lambda_min_bounds(neg_identity_3_3) == pytest.approx((-1.0, -1.0))
    assert lambda_min_bounds(row_sum_example) == pytest.approx((0.0, 0.5))


def test_lambda_min_bounds_reject(ones_3_2):
    with pytest.raises(TensorPreconditionError):
        lambda_min_bounds(ones_3_2)
