"""Estimates of N_min(A) = min{A x^k : x >= 0, sum x_i^k = 1}."""
import itertools
from typing import NamedTuple, Optional

import numpy as np

from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.exceptions.tensor_shape_error import TensorShapeError
from tensorcert.core.k_simplex import KSimplexSearch
from tensorcert.core.sym_tensor import SymTensor, Vec
from tensorcert.core.tensor_config import GRID_ORACLE_MAX_DIM, SearchConfig


class NminEstimate(NamedTuple):
    value: float
    argmin: Vec


def nmin_search(a: SymTensor, cfg: Optional[SearchConfig] = None) -> NminEstimate:
    """Multi-start projected descent; the value is an upper bound on N_min."""
    if not a.has_symmetric_values():
        raise TensorPreconditionError("N_min search needs a symmetric tensor", requirement="symmetric")
    cfg = cfg or SearchConfig()
    outcome = KSimplexSearch(a.symmetrize(), maximize=False).run(cfg.restarts, cfg.seed, cfg.show_progress)
    return NminEstimate(outcome.value, outcome.point)


def compositions(n: int, total: int) -> np.ndarray:
    """Every (m_1, ..., m_n) of nonnegative integers summing to ``total``, one per row."""
    slots = total + n - 1
    rows = []
    for bars in itertools.combinations(range(slots), n - 1):
        edges = (-1,) + bars + (slots,)
        rows.append([edges[j + 1] - edges[j] - 1 for j in range(n)])
    return np.array(rows, dtype=float)


def k_simplex_grid(n: int, k: int, resolution: int) -> np.ndarray:
    """Composition points x ~ m / resolution rescaled onto sum x_i^k = 1."""
    if n > GRID_ORACLE_MAX_DIM:
        raise TensorShapeError(f"grid oracle is limited to dimension {GRID_ORACLE_MAX_DIM}, got {n}",
                               expected=GRID_ORACLE_MAX_DIM, actual=n)
    if resolution < 1:
        raise TensorShapeError(f"grid resolution must be positive, got {resolution}")
    points = compositions(n, resolution) / resolution
    return points / np.sum(points ** k, axis=1, keepdims=True) ** (1.0 / k)


def nmin_grid_oracle(a: SymTensor, resolution: int) -> NminEstimate:
    """Brute-force minimum of A x^k over the composition grid."""
    points = k_simplex_grid(a.dim, a.order, resolution)
    values = a.eval_form_many(points)
    best = int(np.argmin(values))
    return NminEstimate(float(values[best]), points[best])
