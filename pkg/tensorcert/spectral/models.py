from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

import numpy as np

from tensorcert.core.sym_tensor import SymTensor, Vec
from tensorcert.core.tensor_config import IterationConfig

BlockLambda = Tuple[Tuple[int, ...], float]


def eigen_residual(a: SymTensor, eigenvalue: float, x: Vec) -> float:
    """max_i |(A x^(k-1))_i - lambda x_i^(k-1)|."""
    return float(np.max(np.abs(a.apply(x) - eigenvalue * x ** (a.order - 1))))


@dataclass(frozen=True)
class SpectralResult:
    """An H-eigenvalue estimate with its nonnegative eigenvector (unit k-norm)."""
    eigenvalue: float
    eigenvector: Vec
    residual: float
    iterations: int
    block_lambdas: Tuple[BlockLambda, ...] = ()
    config: Optional[IterationConfig] = field(default=None, compare=False)

    def within_tolerance(self) -> bool:
        tolerance = self.config.tolerance if self.config else IterationConfig().tolerance
        return self.residual <= tolerance * (1.0 + abs(self.eigenvalue))


class SpectralBounds(NamedTuple):
    lower: float
    upper: float


class HppEigenpair(NamedTuple):
    eigenvalue: float
    eigenvector: Vec
    residual: float
