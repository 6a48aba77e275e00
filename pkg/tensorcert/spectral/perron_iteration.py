"""Largest H-eigenvalue of symmetric (essentially) nonnegative tensors.

Each weakly irreducible block is handled by a diagonally shifted power
iteration: y = (A + sI) x^(k-1), x = y^[1/(k-1)] rescaled to unit k-norm.
The min and max of (A + sI) x^(k-1) / x^[k-1] bracket the block's spectral
radius and the iteration stops once the bracket is narrow enough.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from tensorcert.core.exceptions.convergence_error import ConvergenceError
from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.k_simplex import KSimplexSearch
from tensorcert.core.sym_tensor import SymTensor, k_norm_normalize, subtensor
from tensorcert.core.tensor_config import (
    HPP_RELATIVE_TOLERANCE,
    VARIATIONAL_RESTARTS,
    IterationConfig,
    SearchConfig,
)
from tensorcert.spectral.models import HppEigenpair, SpectralResult, eigen_residual
from tensorcert.structure.tensor_structure import (
    Partition,
    essential_decomposition,
    is_weakly_irreducible,
    weakly_irreducible_partition,
)
from util.logging_mixin import LoggingMixin


def _require_symmetric(a: SymTensor) -> SymTensor:
    if not a.has_symmetric_values():
        raise TensorPreconditionError("tensor must be symmetric", requirement="symmetric")
    return a.symmetrize()


class PerronIteration(LoggingMixin):

    def __init__(self, config: Optional[IterationConfig] = None):
        self.config = config or IterationConfig()

    def iterate_block(self, a: SymTensor) -> SpectralResult:
        """Spectral radius and positive eigenvector of a nonnegative weakly irreducible tensor."""
        if not a.is_nonnegative():
            raise TensorPreconditionError("block iteration needs a nonnegative tensor", requirement="nonnegative")
        if not is_weakly_irreducible(a):
            raise TensorPreconditionError("block iteration needs a weakly irreducible tensor",
                                          requirement="weakly_irreducible")
        cfg = self.config
        k, n, shift = a.order, a.dim, cfg.shift
        x = np.full(n, n ** (-1.0 / k))
        lower, upper = -np.inf, np.inf
        for iteration in range(1, cfg.max_iterations + 1):
            powered = x ** (k - 1)
            y = a.apply(x) + shift * powered
            ratios = y / powered
            lower, upper = float(ratios.min()), float(ratios.max())
            midpoint = 0.5 * (lower + upper)
            if upper - lower <= cfg.tolerance * (1.0 + abs(midpoint - shift)):
                eigenvalue = midpoint - shift
                self.logger.debug("block %s converged to %.12g after %d iterations",
                                  a.index_map, eigenvalue, iteration)
                return SpectralResult(eigenvalue, x, eigen_residual(a, eigenvalue, x), iteration,
                                      ((a.index_map, eigenvalue),), cfg)
            x = k_norm_normalize(y ** (1.0 / (k - 1)), k)
        raise ConvergenceError(
            f"power iteration on block {a.index_map} did not converge in {cfg.max_iterations} iterations",
            bracket=(lower - shift, upper - shift), iterations=cfg.max_iterations)

    def iterate_blocks(self, b: SymTensor, partition: Partition) -> List[SpectralResult]:
        """Per-block results in partition order."""
        subtensors = [subtensor(b, block) for block in partition.blocks]
        progress = tqdm(total=len(subtensors), desc="blocks", unit="block", disable=not self.config.show_progress)
        try:
            if self.config.workers > 1 and len(subtensors) > 1:
                with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                    results = []
                    for result in pool.map(self.iterate_block, subtensors):
                        results.append(result)
                        progress.update(1)
                    return results
            results = []
            for sub in subtensors:
                results.append(self.iterate_block(sub))
                progress.update(1)
            return results
        finally:
            progress.close()

    def _decomposed_blocks(self, a: SymTensor) -> Tuple[SymTensor, Partition, List[SpectralResult], float]:
        a = _require_symmetric(a)
        b, c = essential_decomposition(a)
        partition = weakly_irreducible_partition(b)
        self.logger.info("%r splits into %d weakly irreducible block(s)", a, len(partition))
        return a, partition, self.iterate_blocks(b, partition), c

    def lambda_max(self, a: SymTensor) -> SpectralResult:
        a, partition, results, c = self._decomposed_blocks(a)
        block_lambdas = tuple((block, result.eigenvalue + c) for block, result in zip(partition.blocks, results))
        best = max(range(len(results)), key=lambda r: (block_lambdas[r][1], -r))
        eigenvalue = block_lambdas[best][1]
        x = np.zeros(a.dim)
        x[np.array(partition.blocks[best]) - 1] = results[best].eigenvector
        return SpectralResult(eigenvalue, x, eigen_residual(a, eigenvalue, x),
                              sum(result.iterations for result in results), block_lambdas, self.config)

    def lambda_min_ess_nonpos(self, a: SymTensor) -> SpectralResult:
        """lambda_min(A) = -lambda_max(-A) for essentially nonpositive A."""
        a = _require_symmetric(a)
        if any(v > 0 for v in a.off_diagonal_values()):
            raise TensorPreconditionError("tensor is not essentially nonpositive", requirement="essentially_nonpositive")
        negated = self.lambda_max(a.negate())
        eigenvalue = -negated.eigenvalue
        return SpectralResult(eigenvalue, negated.eigenvector,
                              eigen_residual(a, eigenvalue, negated.eigenvector), negated.iterations,
                              tuple((block, -value) for block, value in negated.block_lambdas), self.config)

    def has_hpp_eigenvalue(self, a: SymTensor) -> Optional[HppEigenpair]:
        """The H++-eigenpair if every block shares the largest eigenvalue, else None."""
        a, partition, results, c = self._decomposed_blocks(a)
        values = [result.eigenvalue + c for result in results]
        top = max(values)
        if any(abs(value - top) > HPP_RELATIVE_TOLERANCE * max(1.0, abs(top)) for value in values):
            self.logger.info("No H++-eigenvalue: block eigenvalues %s differ", values)
            return None
        x = np.zeros(a.dim)
        for block, result in zip(partition.blocks, results):
            x[np.array(block) - 1] = result.eigenvector
        x = k_norm_normalize(x, a.order)
        return HppEigenpair(top, x, eigen_residual(a, top, x))


def power_iteration_block(a: SymTensor, cfg: Optional[IterationConfig] = None) -> SpectralResult:
    return PerronIteration(cfg).iterate_block(a)


def lambda_max(a: SymTensor, cfg: Optional[IterationConfig] = None) -> SpectralResult:
    return PerronIteration(cfg).lambda_max(a)


def lambda_min_ess_nonpos(a: SymTensor, cfg: Optional[IterationConfig] = None) -> SpectralResult:
    return PerronIteration(cfg).lambda_min_ess_nonpos(a)


def has_hpp_eigenvalue(a: SymTensor, cfg: Optional[IterationConfig] = None) -> Optional[HppEigenpair]:
    return PerronIteration(cfg).has_hpp_eigenvalue(a)


def lambda_max_variational(a: SymTensor, cfg: Optional[SearchConfig] = None) -> float:
    """Best value of A x^k found on the k-norm simplex; a lower bound on lambda_max."""
    a = _require_symmetric(a)
    if any(v < 0 for v in a.off_diagonal_values()):
        raise TensorPreconditionError("tensor is not essentially nonnegative", requirement="essentially_nonnegative")
    cfg = cfg or SearchConfig(restarts=VARIATIONAL_RESTARTS)
    return KSimplexSearch(a, maximize=True).run(cfg.restarts, cfg.seed, cfg.show_progress).value
