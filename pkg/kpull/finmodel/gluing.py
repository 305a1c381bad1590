"""The glued space (colimit) of a finite gluing model."""

import collections
from dataclasses import dataclass
from typing import Dict, FrozenSet, Generic, Hashable, Mapping, Tuple, TypeVar

from kpull.finmodel.model import FiniteGluingModel

T = TypeVar("T", bound=Hashable)

Point = Tuple[str, str]


class DisjointSet(Generic[T]):
    def __init__(self):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}

    def make_set(self, e: T) -> None:
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e: T) -> T:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x: T, y: T) -> None:
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def sets(self) -> FrozenSet[FrozenSet[T]]:
        sets = collections.defaultdict(set)
        for e in self.parent:
            sets[self.find(e)].add(e)
        return frozenset(frozenset(s) for s in sets.values())

    def sorted(self) -> Tuple[Tuple[T, ...], ...]:
        """Sorted tuple of sorted tuples edition of sets()."""
        return tuple(sorted(tuple(sorted(s)) for s in self.sets()))


@dataclass(frozen=True)
class GluedSpace:
    """
    X = (disjoint union of the X_i) / ~, where iota^i_j(y) ~ iota^j_i(y).

    Classes are sorted tuples of (label, element) points, listed in sorted
    order; `quotient[label][element]` is the index of the class.
    """

    classes: Tuple[Tuple[Point, ...], ...]
    quotient: Mapping[str, Mapping[str, int]]

    @property
    def size(self) -> int:
        return len(self.classes)

    def class_of(self, label: str, element: str) -> int:
        return self.quotient[label][element]

    def image(self, label: str) -> FrozenSet[int]:
        return frozenset(self.quotient[label].values())

    def common(self, *labels: str) -> Tuple[int, ...]:
        """Classes met by every listed component."""
        hit = frozenset.intersection(*(self.image(label) for label in labels))
        return tuple(sorted(hit))


def glued_space(model: FiniteGluingModel) -> GluedSpace:
    ds: DisjointSet[Point] = DisjointSet()
    for label, xs in model.sets.items():
        for x in xs:
            ds.make_set((label, x))
    for overlap in model.overlaps.values():
        i, j = sorted(overlap.maps)
        for y in overlap.points:
            ds.union((i, overlap.embed(i, y)), (j, overlap.embed(j, y)))

    classes = ds.sorted()
    quotient: Dict[str, Dict[str, int]] = {label: {} for label in model.index}
    for k, members in enumerate(classes):
        for label, x in members:
            quotient[label][x] = k
    return GluedSpace(classes, quotient)
