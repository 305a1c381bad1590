"""
K-level data of a pullback family.

Node keys are index labels ("1"), unordered pair keys ("12") and the
triple node "123", which stands for B^pi/(I1+I2+I3). Arrows pi^i_j are
keyed (i, pair); the eta maps out of each pair node into "123" are keyed
by the pair.
"""

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Dict, Optional, Tuple

from kpull.abgroup import AbelianGroup, GroupHom
from kpull.shared.errors import DimensionError

TRIPLE = "123"

GIVEN = "given"
EXTERNAL_FACT = "external-fact"
DERIVED = "derived"


@dataclass(frozen=True)
class KPair:
    """K0 and K1 of one algebra; `unit` is the K0 class of the unit when known."""

    k0: AbelianGroup
    k1: AbelianGroup
    unit: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.unit is not None:
            object.__setattr__(self, "unit", tuple(int(v) for v in self.unit))
            if len(self.unit) != self.k0.generators:
                raise DimensionError(f"unit {self.unit} does not fit K0 = {self.k0}")

    def unit_generator(self) -> Optional[int]:
        """Index of the basis vector the unit is, if it is one."""
        if self.unit is None or sorted(self.unit) != [0] * (len(self.unit) - 1) + [1]:
            return None
        return self.unit.index(1)

    def __str__(self) -> str:
        return f"K0 = {self.k0}, K1 = {self.k1}"


@dataclass(frozen=True)
class KMap:
    """Induced maps on K0 and K1; k1 None when nothing is known about it."""

    k0: GroupHom
    k1: Optional[GroupHom] = None

    def k1_or_unknown(self, src: KPair, dst: KPair) -> GroupHom:
        if self.k1 is not None:
            return self.k1
        if src.k1.is_zero() or dst.k1.is_zero():
            return GroupHom.zero(src.k1, dst.k1)
        return GroupHom.unknown(src.k1, dst.k1)


def pair_key(i: str, j: str) -> str:
    return "".join(sorted((i, j)))


@dataclass(frozen=True)
class PullbackFamily:
    """A family indexed by J = {1, 2} or {1, 2, 3} at the level of K-groups."""

    name: str
    index: Tuple[str, ...]
    nodes: Dict[str, KPair] = field(default_factory=dict)
    arrows: Dict[Tuple[str, str], KMap] = field(default_factory=dict)
    etas: Dict[str, KMap] = field(default_factory=dict)
    cocycle_certified: bool = False
    cocycle_source: Optional[str] = None
    provenance: Dict[str, str] = field(default_factory=dict)
    notes: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(sorted(self.index)))
        if len(self.index) not in (2, 3) or len(set(self.index)) != len(self.index) \
                or not set(self.index) <= set(TRIPLE):
            raise ValueError(f"index set must be 2 or 3 distinct labels from 1, 2, 3, got {self.index}")
        if self.cocycle_certified and not self.cocycle_source:
            raise ValueError("a cocycle certificate needs a source note")

        for key in self.nodes:
            if key not in self.node_keys():
                raise ValueError(f"unexpected node '{key}' for index {self.index}")
        for (i, pair), kmap in self.arrows.items():
            self._check_arrow(f"pi {i}->{pair}", i, pair, kmap)
        for pair, kmap in self.etas.items():
            if len(self.index) != 3:
                raise ValueError("eta maps only exist for three-piece families")
            self._check_arrow(f"eta {pair}->{TRIPLE}", pair, TRIPLE, kmap)

    def _check_arrow(self, name: str, src_key: str, dst_key: str, kmap: KMap) -> None:
        src, dst = self.nodes.get(src_key), self.nodes.get(dst_key)
        if src is None or dst is None:
            return
        if kmap.k0.domain != src.k0 or kmap.k0.codomain != dst.k0:
            raise DimensionError(f"{name}: K0 map does not match node K-data")
        if kmap.k1 is not None and (kmap.k1.domain != src.k1 or kmap.k1.codomain != dst.k1):
            raise DimensionError(f"{name}: K1 map does not match node K-data")

    def pairs(self) -> Tuple[str, ...]:
        return tuple(pair_key(i, j) for i, j in combinations(self.index, 2))

    def node_keys(self) -> Tuple[str, ...]:
        keys = self.index + self.pairs()
        return keys + (TRIPLE,) if len(self.index) == 3 else keys

    def arrow_keys(self) -> Tuple[Tuple[str, str], ...]:
        return tuple(
            (i, pair_key(i, j)) for i in self.index for j in self.index if i != j
        )

    def node(self, key: str) -> KPair:
        return self.nodes[key]

    def pi(self, i: str, j: str) -> KMap:
        """The induced map of pi^i_j : B_i -> B_ij."""
        return self.arrows[(i, pair_key(i, j))]

    def eta(self, i: str, j: str) -> KMap:
        return self.etas[pair_key(i, j)]

    def without_certificate(self) -> "PullbackFamily":
        return replace(self, cocycle_certified=False, cocycle_source=None)
