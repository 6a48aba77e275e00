"""Row-sum bounds for lambda_max (nonnegative tensors) and lambda_min (essentially nonpositive tensors)."""
import math

from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor
from tensorcert.spectral.models import SpectralBounds


def bounds_row_sums(a: SymTensor) -> SpectralBounds:
    """max(R_bar, d_max) <= lambda_max <= R_max.

    Symmetric essentially nonnegative tensors are accepted as well, since
    both sides move by c under A -> A + cI. The lower bound needs symmetry;
    without it ``lower`` is -inf.
    """
    symmetric = a.has_symmetric_values()
    essentially_nonnegative = all(v >= 0 for v in a.off_diagonal_values())
    if not (a.is_nonnegative() or (symmetric and essentially_nonnegative)):
        raise TensorPreconditionError("row-sum bounds need a nonnegative tensor; negative entries present",
                                      requirement="nonnegative")
    rows = a.row_stats()
    lower = max(rows.r_bar, a.diag_stats().d_max) if symmetric else -math.inf
    return SpectralBounds(lower, rows.r_max)


def lambda_min_bounds(a: SymTensor) -> SpectralBounds:
    """R_min <= lambda_min <= min(R_bar, d_min) for essentially nonpositive A (upper needs symmetry)."""
    if any(v > 0 for v in a.off_diagonal_values()):
        raise TensorPreconditionError("tensor is not essentially nonpositive", requirement="essentially_nonpositive")
    rows = a.row_stats()
    upper = min(rows.r_bar, a.diag_stats().d_min) if a.has_symmetric_values() else math.inf
    return SpectralBounds(rows.r_min, upper)
