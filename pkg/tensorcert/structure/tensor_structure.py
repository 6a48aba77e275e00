"""Sign classes, reducibility and the weakly irreducible block partition."""
import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor
from tensorcert.core.tensor_config import REDUCIBILITY_SUBSET_LIMIT
from tensorcert.structure.union_find import UnionFind

logger = logging.getLogger(__name__)

IndexSet = Tuple[int, ...]


@dataclass(frozen=True)
class StructureClass:
    symmetric: bool
    nonnegative: bool
    essentially_nonnegative: bool
    essentially_nonpositive: bool
    reducible: bool
    weakly_irreducible: bool

    def labels(self):
        return [name for name, flag in vars(self).items() if flag]


@dataclass(frozen=True)
class RepresentationGraph:
    dim: int
    edges: FrozenSet[Tuple[int, int]]

    @property
    def vertices(self) -> IndexSet:
        return tuple(range(1, self.dim + 1))

    def components(self):
        union_find = UnionFind(self.dim)
        for i, j in self.edges:
            union_find.union(i - 1, j - 1)
        return [tuple(i + 1 for i in members) for members in union_find.components()]

    def is_connected(self) -> bool:
        return len(self.components()) == 1


@dataclass(frozen=True)
class Partition:
    """Blocks I_1, ..., I_s as sorted 1-based tuples, ordered by smallest member."""
    blocks: Tuple[IndexSet, ...]

    @property
    def dim(self) -> int:
        return sum(len(block) for block in self.blocks)

    def block_of(self, i: int) -> int:
        for position, block in enumerate(self.blocks):
            if i in block:
                return position
        raise KeyError(i)

    def __len__(self):
        return len(self.blocks)


def classify(a: SymTensor) -> StructureClass:
    off_diagonal = list(a.off_diagonal_values())
    graph_connected = representation_graph(a).is_connected()
    return StructureClass(
        symmetric=a.has_symmetric_values(),
        nonnegative=a.is_nonnegative(),
        essentially_nonnegative=all(v >= 0 for v in off_diagonal),
        essentially_nonpositive=all(v <= 0 for v in off_diagonal),
        reducible=is_reducible(a) is not None,
        weakly_irreducible=graph_connected,
    )


def _require_essentially_nonnegative(a: SymTensor):
    if any(v < 0 for v in a.off_diagonal_values()):
        raise TensorPreconditionError("tensor is not essentially nonnegative", requirement="essentially_nonnegative")


def essential_decomposition(a: SymTensor) -> Tuple[SymTensor, float]:
    """Split A = B + cI with B nonnegative and c = min(0, d_min(A))."""
    _require_essentially_nonnegative(a)
    c = min(0.0, a.diag_stats().d_min)
    if c == 0.0:
        return a, 0.0
    return a.shift_diagonal(-c), c


def representation_graph(a: SymTensor) -> RepresentationGraph:
    """Collapsed co-occurrence graph: {i, j} is an edge iff i != j share a nonzero entry."""
    edges = set()
    for key in a.entries:
        members = sorted(set(key))
        edges.update(itertools.combinations(members, 2))
    return RepresentationGraph(a.dim, frozenset((i + 1, j + 1) for i, j in edges))


def is_weakly_irreducible(a: SymTensor) -> bool:
    return representation_graph(a).is_connected()


def _reduces(a: SymTensor, subset: FrozenSet[int]) -> bool:
    for key in a.entries:
        if a.symmetric:
            if sum(i in subset for i in key) == 1:
                return False
        elif key[0] in subset and not any(i in subset for i in key[1:]):
            return False
    return True


def is_reducible(a: SymTensor) -> Optional[IndexSet]:
    """A reducing set I (1-based) if A is reducible, otherwise None."""
    if a.dim == 1:
        return None
    if a.symmetric:
        components = representation_graph(a).components()
        if len(components) > 1:
            return components[0]
    if a.dim > REDUCIBILITY_SUBSET_LIMIT:
        logger.warning("Reducibility search skipped for dimension %d > %d; treating the tensor as irreducible",
                       a.dim, REDUCIBILITY_SUBSET_LIMIT)
        return None
    for size in range(1, a.dim):
        for subset in itertools.combinations(range(a.dim), size):
            if _reduces(a, frozenset(subset)):
                return tuple(i + 1 for i in subset)
    return None


def weakly_irreducible_partition(a: SymTensor) -> Partition:
    if not a.has_symmetric_values():
        raise TensorPreconditionError("the block partition needs a symmetric tensor", requirement="symmetric")
    blocks = tuple(representation_graph(a).components())
    logger.debug("Partition of %r: %s", a, blocks)
    return Partition(blocks)


def crossing_entries(a: SymTensor, partition: Partition):
    """Stored entries whose indices fall into more than one block."""
    block_of = {}
    for position, block in enumerate(partition.blocks):
        for i in block:
            block_of[i - 1] = position
    return [key for key in a.entries if len({block_of[i] for i in key}) > 1]
