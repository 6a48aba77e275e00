import pytest

from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor, all_ones_tensor, identity_tensor, subtensor, zero_tensor
from tensorcert.io.generators import random_nonneg
from tensorcert.structure.tensor_structure import (
    Partition,
    classify,
    crossing_entries,
    essential_decomposition,
    is_reducible,
    is_weakly_irreducible,
    representation_graph,
    weakly_irreducible_partition,
)
from tensorcert.structure.union_find import UnionFind


def block_ones(k=3):
    entries = {key: 1.0 for key in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]}
    entries.update({(i + 2, j + 2, l + 2): 1.0 for i, j, l in entries})
    return SymTensor(k, 4, entries)


def test_union_find_roots_are_smallest():
    union_find = UnionFind(6)
    union_find.union(4, 2)
    union_find.union(5, 4)
    union_find.union(3, 0)
    assert union_find.find(5) == 2
    assert union_find.components() == [[0, 3], [1], [2, 4, 5]]
    assert union_find.num_components == 3


def test_classify_examples(ones_3_2, neg_identity_3_3, counterexample):
    ones = classify(ones_3_2)
    assert ones.symmetric and ones.nonnegative and ones.essentially_nonnegative
    assert not ones.essentially_nonpositive
    assert ones.weakly_irreducible and not ones.reducible

    negated = classify(neg_identity_3_3)
    assert negated.symmetric and not negated.nonnegative
    assert negated.essentially_nonnegative and negated.essentially_nonpositive
    assert negated.reducible and not negated.weakly_irreducible

    mixed = classify(counterexample)
    assert not mixed.essentially_nonnegative and not mixed.essentially_nonpositive
    assert "symmetric" in mixed.labels()


def test_nonnegative_implies_essentially_nonnegative(rng):
    for _ in range(10):
        flags = classify(random_nonneg(3, 3, rng))
        assert flags.nonnegative and flags.essentially_nonnegative


def test_essential_decomposition():
    a = all_ones_tensor(3, 2)
    assert essential_decomposition(a) == (a, 0.0)

    b, c = essential_decomposition(identity_tensor(3, 3).negate())
    assert c == -1.0 and b == zero_tensor(3, 3)

    mixed = SymTensor.from_entries(3, 2, {(1, 1, 1): -2.0, (2, 2, 2): 3.0, (1, 1, 2): 1.0, (1, 2, 2): 1.0})
    b, c = essential_decomposition(mixed)
    assert c == -2.0
    assert b.entry(1, 1, 1) == 0.0 and b.entry(2, 2, 2) == 5.0 and b.entry(1, 2, 1) == 1.0
    assert b.is_nonnegative()
    assert b.shift_diagonal(c) == mixed


def test_essential_decomposition_rejects(counterexample):
    with pytest.raises(TensorPreconditionError):
        essential_decomposition(counterexample)


def test_representation_graph(ones_3_2, identity_3_3, counterexample):
    assert representation_graph(ones_3_2).edges == frozenset({(1, 2)})
    assert is_weakly_irreducible(ones_3_2)
    assert representation_graph(identity_3_3).edges == frozenset()
    assert not is_weakly_irreducible(identity_3_3)
    assert representation_graph(counterexample).edges == frozenset({(1, 2), (1, 3), (2, 3)})
    assert is_weakly_irreducible(counterexample)


def test_is_reducible_examples(identity_3_3, ones_3_2):
    assert is_reducible(identity_3_3) == (1,)
    assert is_reducible(ones_3_2) is None
    assert is_reducible(block_ones()) == (1, 2)


def test_connected_but_reducible(row_sum_example):
    # a_112 is the only coupling entry, so no entry has i_1 = 1 with i_2, i_3 = 2
    assert is_weakly_irreducible(row_sum_example)
    assert is_reducible(row_sum_example) == (1,)


def test_general_storage_reducibility():
    general = SymTensor.from_entries(2, 2, {(1, 2): 1.0}, symmetric=False)
    assert is_reducible(general) == (2,)


def test_irreducible_implies_weakly_irreducible(rng):
    for _ in range(20):
        a = random_nonneg(3, 4, rng, density=0.3)
        if is_reducible(a) is None:
            assert is_weakly_irreducible(a)


@pytest.mark.parametrize("tensor, blocks", [
    (all_ones_tensor(3, 3), ((1, 2, 3),)),
    (identity_tensor(3, 3), ((1,), (2,), (3,))),
    (block_ones(), ((1, 2), (3, 4))),
    (zero_tensor(3, 2), ((1,), (2,))),
])
def test_partition_examples(tensor, blocks):
    partition = weakly_irreducible_partition(tensor)
    assert partition.blocks == blocks
    assert partition.dim == tensor.dim


def test_partition_soundness(rng):
    for _ in range(20):
        a = random_nonneg(3, 5, rng, density=0.15)
        partition = weakly_irreducible_partition(a)
        assert sorted(i for block in partition.blocks for i in block) == list(range(1, 6))
        assert crossing_entries(a, partition) == []
        for block in partition.blocks:
            assert is_weakly_irreducible(subtensor(a, block))


def test_partition_block_lookup(two_blocks):
    partition = weakly_irreducible_partition(two_blocks)
    assert partition == Partition(((1, 2), (3, 4, 5)))
    assert partition.block_of(4) == 1
    assert len(partition) == 2
    with pytest.raises(KeyError):
        partition.block_of(9)


def test_partition_rejects_asymmetric():
    general = SymTensor.from_entries(2, 2, {(1, 2): 1.0}, symmetric=False)
    with pytest.raises(TensorPreconditionError):
        weakly_irreducible_partition(general)
