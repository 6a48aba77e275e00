import itertools
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from tensorcert.core.exceptions.tensor_format_error import TensorFormatError
from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.exceptions.tensor_shape_error import TensorShapeError
from tensorcert.core.multi_index import (
    MultiIndex,
    canonical,
    distinct_permutations,
    index_set_to_internal,
    is_diagonal,
    permutation_count,
    remove_one,
    to_external,
    to_internal,
)
from tensorcert.core.tensor_config import DENSE_ORACLE_MAX_ENTRIES

Vec = np.ndarray


class RowStats(NamedTuple):
    r_max: float
    r_min: float
    r_bar: float


class DiagStats(NamedTuple):
    d_max: float
    d_min: float
    d_bar: float


def as_vec(x, dim: int) -> Vec:
    """Coerce ``x`` to a float vector of length ``dim``."""
    vec = np.asarray(x, dtype=float)
    if vec.ndim != 1 or vec.shape[0] != dim:
        raise TensorShapeError(f"vector of length {dim} expected, got shape {vec.shape}",
                               expected=dim, actual=vec.shape)
    return vec


def power_vec(x, r: int) -> Vec:
    """x^[r], the componentwise r-th power."""
    if r < 1:
        raise TensorShapeError(f"power must be >= 1, got {r}")
    return np.asarray(x, dtype=float) ** r


def k_norm_normalize(x, k: int) -> Vec:
    """Scale a nonnegative nonzero vector onto sum(x_i^k) = 1."""
    x = np.asarray(x, dtype=float)
    total = np.sum(np.abs(x) ** k)
    if total <= 0:
        raise TensorPreconditionError("cannot normalize the zero vector", requirement="nonzero")
    return x / total ** (1.0 / k)


def unit_vector(i: int, dim: int) -> Vec:
    """e^(i) with a 1-based ``i``."""
    e = np.zeros(dim)
    e[index_set_to_internal([i], dim)[0]] = 1.0
    return e


class SymTensor:
    """Real order-k, dimension-n tensor in sparse storage.

    Symmetric tensors keep one value per sorted index; evaluations weight
    it by the number of distinct orderings. General tensors (``symmetric``
    false) keep raw index tuples. Keys are 0-based; zero values are never
    stored. Instances are immutable.
    """

    def __init__(self, order: int, dim: int, entries: Optional[Mapping[MultiIndex, float]] = None,
                 symmetric: bool = True, index_map: Optional[Sequence[int]] = None):
        if order < 2:
            raise TensorShapeError(f"order must be >= 2, got {order}", expected=2, actual=order)
        if dim < 1:
            raise TensorShapeError(f"dimension must be >= 1, got {dim}", expected=1, actual=dim)
        self._order = int(order)
        self._dim = int(dim)
        self._symmetric = bool(symmetric)
        self._index_map = tuple(index_map) if index_map is not None else tuple(range(1, dim + 1))

        seen: Dict[MultiIndex, float] = {}
        for key, value in (entries or {}).items():
            key = tuple(int(i) for i in key)
            if len(key) != order or any(not 0 <= i < dim for i in key):
                raise TensorShapeError(f"index {to_external(key)} does not fit order {order}, dimension {dim}")
            if self._symmetric:
                key = canonical(key)
                if key in seen and seen[key] != float(value):
                    raise TensorFormatError(
                        f"conflicting values {seen[key]} and {value} for symmetric entry {to_external(key)}")
            seen[key] = float(value)
        stored = {key: value for key, value in seen.items() if value != 0.0}
        self._entries = MappingProxyType(dict(sorted(stored.items())))
        self._build_terms()

    @classmethod
    def from_entries(cls, order: int, dim: int, entries: Mapping[Iterable[int], float],
                     symmetric: bool = True) -> "SymTensor":
        """Build from 1-based index tuples."""
        return cls(order, dim, {to_internal(key, order, dim): value for key, value in entries.items()},
                   symmetric=symmetric)

    @classmethod
    def from_dense(cls, array, symmetric: bool = True) -> "SymTensor":
        array = np.asarray(array, dtype=float)
        order, dim = array.ndim, array.shape[0]
        if any(size != dim for size in array.shape):
            raise TensorShapeError(f"dense tensor must be cubical, got shape {array.shape}")
        entries = {}
        for key in zip(*np.nonzero(array)):
            key = tuple(int(i) for i in key)
            if symmetric:
                value = array[key]
                if any(array[position] != value for position in distinct_permutations(key)):
                    raise TensorPreconditionError(f"dense tensor is not symmetric at {to_external(key)}",
                                                  requirement="symmetric")
                entries[canonical(key)] = value
            else:
                entries[key] = array[key]
        return cls(order, dim, entries, symmetric=symmetric)

    def _build_terms(self):
        k = self._order
        eval_idx, eval_coef = [], []
        apply_rows, apply_idx, apply_coef = [], [], []
        for key, value in self._entries.items():
            if self._symmetric:
                eval_idx.append(key)
                eval_coef.append(value * permutation_count(key))
                for i in sorted(set(key)):
                    rest = remove_one(key, i)
                    apply_rows.append(i)
                    apply_idx.append(rest)
                    apply_coef.append(value * permutation_count(rest))
            else:
                eval_idx.append(key)
                eval_coef.append(value)
                apply_rows.append(key[0])
                apply_idx.append(key[1:])
                apply_coef.append(value)
        self._eval_idx = np.array(eval_idx, dtype=np.intp).reshape(-1, k)
        self._eval_coef = np.array(eval_coef, dtype=float)
        self._apply_rows = np.array(apply_rows, dtype=np.intp)
        self._apply_idx = np.array(apply_idx, dtype=np.intp).reshape(-1, k - 1)
        self._apply_coef = np.array(apply_coef, dtype=float)
        for array in (self._eval_idx, self._eval_coef, self._apply_rows, self._apply_idx, self._apply_coef):
            array.setflags(write=False)

    @property
    def order(self) -> int:
        return self._order

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def symmetric(self) -> bool:
        return self._symmetric

    @property
    def entries(self) -> Mapping[MultiIndex, float]:
        return self._entries

    @property
    def index_map(self) -> Tuple[int, ...]:
        """1-based indices of the parent tensor, for subtensors."""
        return self._index_map

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def entry(self, *indices: int) -> float:
        """Value at a 1-based index tuple."""
        key = to_internal(indices, self._order, self._dim)
        if self._symmetric:
            key = canonical(key)
        return self._entries.get(key, 0.0)

    def items(self) -> Iterator[Tuple[MultiIndex, float]]:
        """Stored entries with 1-based keys."""
        for key, value in self._entries.items():
            yield to_external(key), value

    def expanded_items(self) -> Iterator[Tuple[MultiIndex, float]]:
        """Every nonzero position with a 0-based key."""
        for key, value in self._entries.items():
            if self._symmetric:
                for position in distinct_permutations(key):
                    yield position, value
            else:
                yield key, value

    def positions_count(self) -> int:
        if self._symmetric:
            return sum(permutation_count(key) for key in self._entries)
        return len(self._entries)

    def diagonal(self) -> Vec:
        diag = np.zeros(self._dim)
        for key, value in self._entries.items():
            if is_diagonal(key):
                diag[key[0]] = value
        return diag

    def max_abs_entry(self) -> float:
        return max((abs(v) for v in self._entries.values()), default=0.0)

    # evaluations

    def eval_form(self, x) -> float:
        """A x^k."""
        x = as_vec(x, self._dim)
        return float(np.dot(self._eval_coef, np.prod(x[self._eval_idx], axis=1)))

    def eval_form_many(self, points) -> Vec:
        """A x^k for every row of ``points``."""
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self._dim:
            raise TensorShapeError(f"points must have shape (p, {self._dim}), got {points.shape}")
        if not self._entries:
            return np.zeros(points.shape[0])
        return np.prod(points[:, self._eval_idx], axis=2) @ self._eval_coef

    def apply(self, x) -> Vec:
        """The vector A x^(k-1)."""
        x = as_vec(x, self._dim)
        weights = self._apply_coef * np.prod(x[self._apply_idx], axis=1)
        return np.bincount(self._apply_rows, weights=weights, minlength=self._dim).astype(float)

    def row_sums(self) -> Vec:
        return self.apply(np.ones(self._dim))

    def row_sum(self, i: int) -> float:
        """R_i(A) for a 1-based row."""
        return float(self.row_sums()[index_set_to_internal([i], self._dim)[0]])

    def row_stats(self) -> RowStats:
        sums = self.row_sums()
        return RowStats(float(sums.max()), float(sums.min()), float(sums.mean()))

    def diag_stats(self) -> DiagStats:
        diag = self.diagonal()
        return DiagStats(float(diag.max()), float(diag.min()), float(diag.mean()))

    # structure helpers

    def has_symmetric_values(self) -> bool:
        """True when every index orbit carries a single value."""
        if self._symmetric:
            return True
        for key, value in self._entries.items():
            for position in distinct_permutations(key):
                if self._entries.get(position, 0.0) != value:
                    return False
        return True

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self._entries.values())

    def off_diagonal_values(self) -> Iterator[float]:
        return (v for key, v in self._entries.items() if not is_diagonal(key))

    # cone operations

    def _check_same_shape(self, other: "SymTensor"):
        if (self._order, self._dim) != (other.order, other.dim):
            raise TensorShapeError(
                f"shape mismatch: order {self._order}/dim {self._dim} vs order {other.order}/dim {other.dim}",
                expected=(self._order, self._dim), actual=(other.order, other.dim))

    def _as_general_entries(self) -> Dict[MultiIndex, float]:
        return dict(self.expanded_items())

    def add(self, other: "SymTensor") -> "SymTensor":
        self._check_same_shape(other)
        if self._symmetric and other.symmetric:
            left, right, symmetric = dict(self._entries), other.entries, True
        else:
            left, right, symmetric = self._as_general_entries(), other._as_general_entries(), False
        for key, value in right.items():
            left[key] = left.get(key, 0.0) + value
        return SymTensor(self._order, self._dim, left, symmetric=symmetric)

    def scale(self, alpha: float) -> "SymTensor":
        return SymTensor(self._order, self._dim, {key: alpha * v for key, v in self._entries.items()},
                         symmetric=self._symmetric, index_map=self._index_map)

    def negate(self) -> "SymTensor":
        return self.scale(-1.0)

    def shift_diagonal(self, c: float) -> "SymTensor":
        """A + cI."""
        entries = dict(self._entries)
        for i in range(self._dim):
            key = (i,) * self._order
            entries[key] = entries.get(key, 0.0) + c
        return SymTensor(self._order, self._dim, entries, symmetric=self._symmetric, index_map=self._index_map)

    def symmetrize(self) -> "SymTensor":
        """Average every value over its index orbit."""
        if self._symmetric:
            return self
        totals: Dict[MultiIndex, float] = {}
        for key, value in self._entries.items():
            orbit = canonical(key)
            totals[orbit] = totals.get(orbit, 0.0) + value
        averaged = {orbit: total / permutation_count(orbit) for orbit, total in totals.items()}
        return SymTensor(self._order, self._dim, averaged, symmetric=True, index_map=self._index_map)

    def nonpositive_part(self) -> "SymTensor":
        """Keep the diagonal and the negative off-diagonal entries."""
        kept = {key: v for key, v in self._entries.items() if is_diagonal(key) or v < 0}
        return SymTensor(self._order, self._dim, kept, symmetric=self._symmetric, index_map=self._index_map)

    def to_dense(self) -> np.ndarray:
        if self._dim ** self._order > DENSE_ORACLE_MAX_ENTRIES:
            raise TensorShapeError(f"dense view of {self._dim}^{self._order} entries is too large")
        dense = np.zeros((self._dim,) * self._order)
        for position, value in self.expanded_items():
            dense[position] = value
        return dense

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self._order, self._dim, self._symmetric, dict(self._entries)) == \
            (other.order, other.dim, other.symmetric, dict(other.entries))

    def __hash__(self):
        return hash((self._order, self._dim, self._symmetric, tuple(self._entries.items())))

    def __repr__(self):
        kind = "symmetric" if self._symmetric else "general"
        return f"SymTensor(order={self._order}, dim={self._dim}, {kind}, nnz={len(self._entries)})"


def inner_product(a: SymTensor, b: SymTensor) -> float:
    """<A, B> summed over all n^k positions."""
    a._check_same_shape(b)
    if a.symmetric and b.symmetric:
        return float(sum(value * b.entries.get(key, 0.0) * permutation_count(key)
                         for key, value in a.entries.items()))
    right = b._as_general_entries()
    return float(sum(value * right.get(key, 0.0) for key, value in a.expanded_items()))


def compare_leq(b: SymTensor, a: SymTensor) -> bool:
    """B <= A entrywise."""
    a._check_same_shape(b)
    if a.symmetric and b.symmetric:
        left, right = b.entries, a.entries
    else:
        left, right = b._as_general_entries(), a._as_general_entries()
    return all(left.get(key, 0.0) <= right.get(key, 0.0) for key in set(left) | set(right))


def subtensor(a: SymTensor, index_set: Iterable[int]) -> SymTensor:
    """A(I) for a 1-based index set, reindexed to 1..|I|."""
    members = index_set_to_internal(index_set, a.dim)
    position = {old: new for new, old in enumerate(members)}
    entries = {tuple(position[i] for i in key): value
               for key, value in a.entries.items() if all(i in position for i in key)}
    return SymTensor(a.order, len(members), entries, symmetric=a.symmetric,
                     index_map=[a.index_map[i] for i in members])


def _check_factor(y, dim: Optional[int] = None) -> Vec:
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or (dim is not None and y.shape[0] != dim):
        raise TensorShapeError(f"factor of length {dim} expected, got shape {y.shape}", expected=dim, actual=y.shape)
    if np.any(y < 0):
        raise TensorPreconditionError(f"factor {y.tolist()} has a negative component", requirement="nonnegative")
    if not np.any(y > 0):
        raise TensorPreconditionError("factor must be nonzero", requirement="nonzero")
    return y


def rank_one_cp(y, k: int) -> SymTensor:
    """The k-fold outer power y^k of a nonnegative vector."""
    return cp_sum([y], k)


def cp_sum(factors: Sequence, k: int) -> SymTensor:
    """Sum of (y^(i))^k over nonnegative factors."""
    if not factors:
        raise TensorPreconditionError("at least one factor is required", requirement="nonempty")
    first = _check_factor(factors[0])
    dim = first.shape[0]
    entries: Dict[MultiIndex, float] = {}
    for y in factors:
        y = _check_factor(y, dim)
        support = np.flatnonzero(y)
        for key in itertools.combinations_with_replacement(support.tolist(), k):
            entries[key] = entries.get(key, 0.0) + float(np.prod(y[list(key)]))
    return SymTensor(k, dim, entries)


def identity_tensor(k: int, n: int) -> SymTensor:
    """I, ones on the diagonal."""
    return SymTensor(k, n, {(i,) * k: 1.0 for i in range(n)})


def all_ones_tensor(k: int, n: int) -> SymTensor:
    """J, every entry 1."""
    return SymTensor(k, n, {key: 1.0 for key in itertools.combinations_with_replacement(range(n), k)})


def diagonal_tensor(k: int, diagonal: Sequence[float]) -> SymTensor:
    return SymTensor(k, len(diagonal), {(i,) * k: float(d) for i, d in enumerate(diagonal)})


def zero_tensor(k: int, n: int) -> SymTensor:
    return SymTensor(k, n, {})
