"""Multi-index helpers.

Index tuples are 1-based at the boundary (files, CLI, public results) and
0-based everywhere inside the package. ``to_internal``/``to_external`` are
the only places that translate between the two.
"""
import functools
import itertools
import math
from collections import Counter
from typing import Iterable, Iterator, Tuple

from tensorcert.core.exceptions.tensor_shape_error import TensorShapeError

MultiIndex = Tuple[int, ...]


def canonical(indices: Iterable[int]) -> MultiIndex:
    """Non-decreasing sort of an index tuple."""
    return tuple(sorted(indices))


@functools.lru_cache(maxsize=None)
def permutation_count(index: MultiIndex) -> int:
    """Number of distinct orderings of ``index``, i.e. the multinomial k! / prod(c_j!)."""
    count = math.factorial(len(index))
    for multiplicity in Counter(index).values():
        count //= math.factorial(multiplicity)
    return count


def distinct_permutations(index: MultiIndex) -> Iterator[MultiIndex]:
    return iter(sorted(set(itertools.permutations(index))))


def is_diagonal(index: MultiIndex) -> bool:
    return all(i == index[0] for i in index)


def remove_one(index: MultiIndex, i: int) -> MultiIndex:
    """Drop a single occurrence of ``i`` from a canonical index."""
    position = index.index(i)
    return index[:position] + index[position + 1:]


def to_internal(indices: Iterable[int], order: int, dim: int) -> MultiIndex:
    indices = tuple(int(i) for i in indices)
    if len(indices) != order:
        raise TensorShapeError(f"expected {order} indices, got {len(indices)}",
                               expected=order, actual=len(indices))
    for i in indices:
        if not 1 <= i <= dim:
            raise TensorShapeError(f"index {i} out of range 1..{dim}", expected=dim, actual=i)
    return tuple(i - 1 for i in indices)


def to_external(index: MultiIndex) -> MultiIndex:
    return tuple(i + 1 for i in index)


def index_set_to_internal(index_set: Iterable[int], dim: int) -> Tuple[int, ...]:
    """Validate a 1-based index set and return it sorted and 0-based."""
    members = sorted(set(int(i) for i in index_set))
    if not members:
        raise TensorShapeError("index set must not be empty")
    for i in members:
        if not 1 <= i <= dim:
            raise TensorShapeError(f"index {i} out of range 1..{dim}", expected=dim, actual=i)
    return tuple(i - 1 for i in members)
