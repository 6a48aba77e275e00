from typing import Dict, List


class UnionFind:
    """Disjoint sets over 0..size-1 with path compression.

    The smaller element always becomes the root, so every component is
    represented by its smallest member.
    """

    def __init__(self, size: int):
        self.size = size
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        # compress
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int):
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return
        if root_b < root_a:
            root_a, root_b = root_b, root_a
        self.parents[root_b] = root_a
        self.num_components -= 1

    def components(self) -> List[List[int]]:
        """Members of every set, ordered by smallest member."""
        groups: Dict[int, List[int]] = {}
        for i in range(self.size):
            groups.setdefault(self.find(i), []).append(i)
        return [groups[root] for root in sorted(groups)]
