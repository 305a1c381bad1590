"""
Finitely generated abelian groups in invariant-factor form.

The canonical generator order is: free generators first, then one
generator per invariant factor in ascending order. Group homomorphism
matrices are always written against this order.
"""

from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple, Sequence, Tuple, Union

from kpull.abgroup.matrix import IntMatrix
from kpull.abgroup.normalforms import inverse_unimodular, smith_normal_form
from kpull.shared.errors import DimensionError


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_t with d_k >= 2 and d_k | d_{k+1}."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError(f"negative free rank {self.free_rank}")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a} and {b} break the divisibility chain")

    @classmethod
    def free(cls, rank: int) -> "AbelianGroup":
        return cls(rank, ())

    @classmethod
    def zero(cls) -> "AbelianGroup":
        return cls(0, ())

    @classmethod
    def cyclic(cls, order: int) -> "AbelianGroup":
        """Z for order 0, the zero group for order 1, Z/order otherwise."""
        if order == 0:
            return cls.free(1)
        if abs(order) == 1:
            return cls.zero()
        return cls(0, (abs(order),))

    @property
    def generators(self) -> int:
        """Number of generators of the canonical presentation."""
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> Tuple[int, ...]:
        """Order of each canonical generator, 0 for infinite order."""
        return (0,) * self.free_rank + self.torsion

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return reduce(lambda x, y: x * y, self.torsion, 1)

    def relation_matrix(self) -> IntMatrix:
        """Relations of the canonical presentation, one column per torsion generator."""
        n = self.generators
        return IntMatrix.from_rows(
            [[d if i == self.free_rank + k else 0 for k, d in enumerate(self.torsion)]
             for i in range(n)],
            cols=len(self.torsion),
        )

    def presentation(self) -> "Presentation":
        return Presentation(self.generators, self.relation_matrix())

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return direct_sum(self, other)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Presentation:
    """Generators and relations; the relators are the columns of `relations`."""

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise DimensionError(
                f"relation matrix has {self.relations.rows} rows for "
                f"{self.generators} generators"
            )

    @classmethod
    def free(cls, n: int) -> "Presentation":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "Presentation":
        """Direct sum of cyclic groups, order 0 meaning Z."""
        torsion = [i for i, d in enumerate(orders) if d]
        return cls(
            len(orders),
            IntMatrix.from_rows(
                [[orders[i] if i == k else 0 for k in torsion] for i in range(len(orders))],
                cols=len(torsion),
            ),
        )


class CanonicalCoordinates(NamedTuple):
    """
    A presented group in canonical form together with coordinate changes.

    to_canonical maps presentation generators to canonical coordinates
    (entries meaningful modulo the canonical orders); from_canonical sends
    each canonical generator to a presentation element.
    """

    group: AbelianGroup
    to_canonical: IntMatrix
    from_canonical: IntMatrix


def canonical_coordinates(P: Presentation) -> CanonicalCoordinates:
    """Normalize P and keep track of the generators."""
    n = P.generators
    U, D, V = smith_normal_form(P.relations)
    diag = D.diagonal_entries()
    factor = [diag[i] if i < len(diag) else 0 for i in range(n)]

    free_rows = [i for i in range(n) if factor[i] == 0]
    torsion_rows = [i for i in range(n) if factor[i] > 1]
    order = free_rows + torsion_rows

    group = AbelianGroup(len(free_rows), tuple(factor[i] for i in torsion_rows))
    U_inv = inverse_unimodular(U)
    return CanonicalCoordinates(
        group,
        U.select_rows(order),
        U_inv.select_columns(order),
    )


def normalize(P: Union[Presentation, AbelianGroup]) -> AbelianGroup:
    """Invariant-factor form of a presented group."""
    if isinstance(P, AbelianGroup):
        return P
    factors = smith_normal_form(P.relations).invariant_factors
    free_rank = P.generators - len(factors)
    return AbelianGroup(free_rank, tuple(d for d in factors if d > 1))


def is_isomorphic(A: Union[Presentation, AbelianGroup], B: Union[Presentation, AbelianGroup]) -> bool:
    return normalize(A) == normalize(B)


def direct_sum(*groups: AbelianGroup) -> AbelianGroup:
    orders = [d for g in groups for d in g.orders]
    return normalize(Presentation.from_orders(orders))


def direct_sum_coordinates(*groups: AbelianGroup) -> CanonicalCoordinates:
    """Canonical form of a direct sum, with coordinates against the concatenated generators."""
    orders = [d for g in groups for d in g.orders]
    return canonical_coordinates(Presentation.from_orders(orders))


def render(group: AbelianGroup) -> str:
    """'Z^2 + Z/2 + Z/4'; the zero group renders as '0'."""
    if group.is_zero():
        return "0"
    parts = []
    if group.free_rank == 1:
        parts.append("Z")
    elif group.free_rank > 1:
        parts.append(f"Z^{group.free_rank}")
    parts.extend(f"Z/{d}" for d in group.torsion)
    return " + ".join(parts)


def parse_group(text: str) -> AbelianGroup:
    """Inverse of render, tolerant of spacing ('Z^2+Z/2')."""
    text = text.strip()
    if text in ("0", ""):
        return AbelianGroup.zero()
    orders = []
    for part in text.split("+"):
        part = part.strip()
        if part == "Z":
            orders.append(0)
        elif part.startswith("Z^"):
            orders.extend([0] * int(part[2:]))
        elif part.startswith("Z/"):
            orders.append(int(part[2:]))
        else:
            raise ValueError(f"cannot parse group summand '{part}'")
    return normalize(Presentation.from_orders(orders))
