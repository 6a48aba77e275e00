"""Instance generators. Every kind is deterministic given its parameters and seed."""
import itertools
import math
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from tensorcert.core.exceptions.tensor_format_error import TensorFormatError
from tensorcert.core.exceptions.tensor_cert_error import TensorCertError
from tensorcert.core.sym_tensor import SymTensor, all_ones_tensor, cp_sum, diagonal_tensor, identity_tensor
from tensorcert.core.tensor_config import default_seed
from util.logging_mixin import LoggingMixin

Edge = Tuple[int, ...]


class GeneratorKind(Enum):
    IDENTITY = "identity"
    ALLONES = "allones"
    DIAGONAL = "diagonal"
    RANDOM_NONNEG = "random_nonneg"
    RANDOM_ESS_NONPOS = "random_ess_nonpos"
    CP = "cp"
    HYPERGRAPH_ADJACENCY = "hypergraph_adjacency"
    HYPERGRAPH_LAPLACIAN = "hypergraph_laplacian"
    HYPERGRAPH_SIGNLESS_LAPLACIAN = "hypergraph_signless_laplacian"
    COUNTEREXAMPLE = "paper_sec6"


def counterexample_tensor() -> SymTensor:
    """k = n = 3 copositive tensor that is not diagonally dominated: A x^3 = 6(x1^2 + x2^2 - x1 x2) x3."""
    return SymTensor.from_entries(3, 3, {(1, 1, 3): 2.0, (2, 2, 3): 2.0, (1, 2, 3): -1.0})


def _random_offdiagonal_keys(k: int, n: int, density: float, rng: np.random.Generator) -> List[Edge]:
    keys = [key for key in itertools.combinations_with_replacement(range(n), k) if len(set(key)) > 1]
    return [key for key in keys if rng.random() < density]


def random_nonneg(k: int, n: int, rng: np.random.Generator, density: float = 0.6, scale: float = 1.0) -> SymTensor:
    entries = {key: scale * rng.random() for key in _random_offdiagonal_keys(k, n, density, rng)}
    for i in range(n):
        if rng.random() < density:
            entries[(i,) * k] = scale * rng.random()
    return SymTensor(k, n, entries)


def random_ess_nonpos(k: int, n: int, rng: np.random.Generator, density: float = 0.6,
                      scale: float = 1.0) -> SymTensor:
    """Nonpositive off-diagonals; diagonal uniform on [-scale, scale * n^(k-1)]."""
    entries = {key: -scale * rng.random() for key in _random_offdiagonal_keys(k, n, density, rng)}
    for i in range(n):
        entries[(i,) * k] = rng.uniform(-scale, scale * n ** (k - 1))
    return SymTensor(k, n, entries)


def validate_edges(edges: Sequence[Sequence[int]], k: int, n: int) -> List[Edge]:
    """Sorted 0-based k-subsets from 1-based edge lists."""
    checked = []
    for edge in edges:
        members = tuple(sorted(int(v) for v in edge))
        if len(members) != k or len(set(members)) != k:
            raise TensorFormatError(f"edge {list(edge)} is not a set of {k} distinct vertices")
        if not all(1 <= v <= n for v in members):
            raise TensorFormatError(f"edge {list(edge)} has a vertex outside 1..{n}")
        checked.append(tuple(v - 1 for v in members))
    if len(set(checked)) != len(checked):
        raise TensorFormatError("repeated edges")
    return checked


def random_regular_edges(n: int, k: int, degree: int, rng: np.random.Generator,
                         attempts: int = 10000) -> List[Edge]:
    """Random d-regular k-uniform hypergraph by shuffling d copies of every vertex into k-sets."""
    if (n * degree) % k:
        raise TensorFormatError(f"no {degree}-regular {k}-uniform hypergraph on {n} vertices (k must divide n*d)")
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(attempts):
        groups = [tuple(sorted(group)) for group in rng.permutation(stubs).reshape(-1, k).tolist()]
        if all(len(set(group)) == k for group in groups) and len(set(groups)) == len(groups):
            return sorted(tuple(v + 1 for v in group) for group in groups)
    raise TensorFormatError(f"no {degree}-regular {k}-uniform hypergraph on {n} vertices found "
                            f"in {attempts} attempts")


def hypergraph_adjacency(k: int, n: int, edges: Sequence[Sequence[int]]) -> SymTensor:
    """1/(k-1)! at every ordering of every edge, so row sums equal degrees."""
    weight = 1.0 / math.factorial(k - 1)
    return SymTensor(k, n, {edge: weight for edge in validate_edges(edges, k, n)})


def degree_tensor(k: int, n: int, edges: Sequence[Sequence[int]]) -> SymTensor:
    degrees = np.zeros(n)
    for edge in validate_edges(edges, k, n):
        degrees[list(edge)] += 1
    return diagonal_tensor(k, degrees)


def hypergraph_laplacian(k: int, n: int, edges: Sequence[Sequence[int]]) -> SymTensor:
    return degree_tensor(k, n, edges).add(hypergraph_adjacency(k, n, edges).negate())


def hypergraph_signless_laplacian(k: int, n: int, edges: Sequence[Sequence[int]]) -> SymTensor:
    return degree_tensor(k, n, edges).add(hypergraph_adjacency(k, n, edges))


class TensorGenerator(LoggingMixin):

    def __init__(self, seed: Optional[int] = None):
        self.seed = default_seed() if seed is None else seed

    def generate(self, kind, parameters: Optional[Dict[str, Any]] = None) -> SymTensor:
        """Build a tensor of ``kind``.

        Parameters: ``order``, ``dim`` for the sized kinds; ``diagonal``;
        ``factors``; ``density`` and ``scale`` for the random kinds;
        ``edges`` or ``regular_degree`` for the hypergraph kinds.
        """
        try:
            kind = GeneratorKind(kind)
        except ValueError:
            raise TensorFormatError(f"unknown generator kind {kind!r}; choose from "
                                    f"{', '.join(member.value for member in GeneratorKind)}")
        params = dict(parameters or {})
        rng = np.random.default_rng(self.seed)
        order = int(params.get("order", 3))
        if order < 2:
            raise TensorFormatError(f"order must be >= 2, got {order}")
        dim = int(params.get("dim", 2))
        self.logger.info("Generating %s (order %d, dim %d, seed %d)", kind.value, order, dim, self.seed)

        try:
            if kind is GeneratorKind.IDENTITY:
                return identity_tensor(order, dim)
            if kind is GeneratorKind.ALLONES:
                return all_ones_tensor(order, dim)
            if kind is GeneratorKind.DIAGONAL:
                return diagonal_tensor(order, self._require(params, "diagonal"))
            if kind is GeneratorKind.RANDOM_NONNEG:
                return random_nonneg(order, dim, rng, float(params.get("density", 0.6)),
                                     float(params.get("scale", 1.0)))
            if kind is GeneratorKind.RANDOM_ESS_NONPOS:
                return random_ess_nonpos(order, dim, rng, float(params.get("density", 0.6)),
                                         float(params.get("scale", 1.0)))
            if kind is GeneratorKind.CP:
                return cp_sum(self._require(params, "factors"), order)
            if kind is GeneratorKind.COUNTEREXAMPLE:
                return counterexample_tensor()
            edges = params.get("edges")
            if edges is None:
                edges = random_regular_edges(dim, order, int(self._require(params, "regular_degree")), rng)
            builders = {
                GeneratorKind.HYPERGRAPH_ADJACENCY: hypergraph_adjacency,
                GeneratorKind.HYPERGRAPH_LAPLACIAN: hypergraph_laplacian,
                GeneratorKind.HYPERGRAPH_SIGNLESS_LAPLACIAN: hypergraph_signless_laplacian,
            }
            return builders[kind](order, dim, edges)
        except TensorFormatError:
            raise
        except TensorCertError as e:
            raise TensorFormatError(f"invalid parameters for {kind.value}: {e.message}")

    @staticmethod
    def _require(params: Dict[str, Any], name: str):
        if params.get(name) is None:
            raise TensorFormatError(f"parameter {name!r} is required")
        return params[name]


def generate(kind, parameters: Optional[Dict[str, Any]] = None, seed: Optional[int] = None) -> SymTensor:
    return TensorGenerator(seed).generate(kind, parameters)
