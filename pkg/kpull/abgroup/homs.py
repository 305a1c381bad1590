"""
Homomorphisms between finitely generated abelian groups.

A GroupHom stores one column per canonical generator of the domain and one
row per canonical generator of the codomain. Entries may be UNKNOWN; the
engine never solves for them, it only derives what holds for every integer
completion.
"""

from dataclasses import dataclass
from typing import Any, Iterable, List, Sequence, Tuple, Union

from kpull.abgroup.groups import (
    AbelianGroup,
    Presentation,
    direct_sum_coordinates,
    normalize,
)
from kpull.abgroup.matrix import IntMatrix
from kpull.abgroup.normalforms import (
    canonical_basis,
    kernel_basis,
    solve_integer_columns,
)
from kpull.shared.errors import DimensionError, UnknownEntryError


class Unknown:
    """Placeholder for a matrix entry nobody has determined."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "?"

    def __reduce__(self):
        return (Unknown, ())


UNKNOWN = Unknown()

Entry = Union[int, Unknown]


def as_entry(value: Any) -> Entry:
    """Coerce "?", None or UNKNOWN to UNKNOWN and everything else to int."""
    if value is None or value is UNKNOWN or value == "?":
        return UNKNOWN
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a matrix entry: {value!r}")
    return int(value)


def _mul(a: Entry, b: Entry) -> Entry:
    if a == 0 or b == 0:
        return 0
    if a is UNKNOWN or b is UNKNOWN:
        return UNKNOWN
    return a * b


def _dot(row: Sequence[Entry], col: Sequence[Entry]) -> Entry:
    total = 0
    for a, b in zip(row, col):
        term = _mul(a, b)
        if term is UNKNOWN:
            return UNKNOWN
        total += term
    return total


def _matmul(a: Sequence[Sequence[Entry]], b: Sequence[Sequence[Entry]], inner: int, cols: int) -> List[List[Entry]]:
    b_cols = [[b[k][j] for k in range(inner)] for j in range(cols)]
    return [[_dot(row, col) for col in b_cols] for row in a]


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism domain -> codomain as a matrix over (int | UNKNOWN)."""

    domain: AbelianGroup
    codomain: AbelianGroup
    entries: Tuple[Tuple[Entry, ...], ...]

    def __post_init__(self):
        rows, cols = self.codomain.generators, self.domain.generators
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise DimensionError(
                f"matrix shape does not match {cols} domain and {rows} codomain generators"
            )
        orders = self.codomain.orders
        reduced = []
        for i, row in enumerate(self.entries):
            d = orders[i]
            reduced.append(tuple(
                UNKNOWN if e is UNKNOWN else (e % d if d else e)
                for e in (as_entry(v) for v in row)
            ))
        object.__setattr__(self, "entries", tuple(reduced))
        self._check_well_defined()

    def _check_well_defined(self) -> None:
        # a generator of order e must land on an element killed by e
        for j, e in enumerate(self.domain.orders):
            if e == 0:
                continue
            for i, d in enumerate(self.codomain.orders):
                v = self.entries[i][j]
                if v is UNKNOWN:
                    continue
                if (d == 0 and v != 0) or (d and (e * v) % d):
                    raise ValueError(
                        f"generator {j} of order {e} cannot map to {v} in a summand of order {d or 'infinity'}"
                    )

    @classmethod
    def from_rows(cls, domain: AbelianGroup, codomain: AbelianGroup, rows: Iterable[Sequence[Any]]) -> "GroupHom":
        return cls(domain, codomain, tuple(tuple(as_entry(v) for v in row) for row in rows))

    @classmethod
    def from_matrix(cls, domain: AbelianGroup, codomain: AbelianGroup, M: IntMatrix) -> "GroupHom":
        return cls(domain, codomain, M.entries)

    @classmethod
    def zero(cls, domain: AbelianGroup, codomain: AbelianGroup) -> "GroupHom":
        return cls(domain, codomain, tuple((0,) * domain.generators for _ in range(codomain.generators)))

    @classmethod
    def unknown(cls, domain: AbelianGroup, codomain: AbelianGroup) -> "GroupHom":
        return cls(domain, codomain, tuple((UNKNOWN,) * domain.generators for _ in range(codomain.generators)))

    @classmethod
    def identity(cls, group: AbelianGroup) -> "GroupHom":
        return cls.from_matrix(group, group, IntMatrix.identity(group.generators))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.codomain.generators, self.domain.generators)

    def is_known(self) -> bool:
        return all(e is not UNKNOWN for row in self.entries for e in row)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def unknown_positions(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.entries) for j, e in enumerate(row) if e is UNKNOWN]

    def known_columns(self) -> List[int]:
        return [j for j in range(self.domain.generators)
                if all(self.entries[i][j] is not UNKNOWN for i in range(self.codomain.generators))]

    def matrix(self) -> IntMatrix:
        """The integer matrix; raises UnknownEntryError when an entry is unknown."""
        if not self.is_known():
            raise UnknownEntryError(
                f"map {self.domain} -> {self.codomain} has unknown entries at {self.unknown_positions()}"
            )
        return IntMatrix(self.codomain.generators, self.domain.generators, self.entries)

    def complete(self, values: Iterable[int]) -> "GroupHom":
        """Fill the unknown entries in row-major order."""
        it = iter(values)
        rows = [[next(it) if e is UNKNOWN else e for e in row] for row in self.entries]
        return GroupHom.from_rows(self.domain, self.codomain, rows)

    def with_column(self, j: int, column: Sequence[Entry]) -> "GroupHom":
        rows = [list(row) for row in self.entries]
        for i, v in enumerate(column):
            rows[i][j] = v
        return GroupHom.from_rows(self.domain, self.codomain, rows)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        if first.codomain != self.domain:
            raise DimensionError(f"cannot compose {first.codomain} into {self.domain}")
        rows = _matmul(self.entries, first.entries, self.domain.generators, first.domain.generators)
        return GroupHom.from_rows(first.domain, self.codomain, rows)

    def __neg__(self) -> "GroupHom":
        return GroupHom.from_rows(
            self.domain, self.codomain,
            [[e if e is UNKNOWN else -e for e in row] for row in self.entries],
        )

    def apply(self, vector: Sequence[int]) -> Tuple[Entry, ...]:
        return tuple(_dot(row, vector) for row in self.entries)

    @staticmethod
    def hstack(*maps: "GroupHom") -> "GroupHom":
        """(f_1, ..., f_n): A_1 + ... + A_n -> C."""
        codomain = maps[0].codomain
        if any(f.codomain != codomain for f in maps):
            raise DimensionError("hstack needs a common codomain")
        coords = direct_sum_coordinates(*(f.domain for f in maps))
        concat = [sum((list(f.entries[i]) for f in maps), []) for i in range(codomain.generators)]
        inner = sum(f.domain.generators for f in maps)
        rows = _matmul(concat, coords.from_canonical.entries, inner, coords.group.generators)
        return GroupHom.from_rows(coords.group, codomain, rows)

    @staticmethod
    def vstack(*maps: "GroupHom") -> "GroupHom":
        """x -> (f_1 x, ..., f_n x): A -> C_1 + ... + C_n."""
        domain = maps[0].domain
        if any(f.domain != domain for f in maps):
            raise DimensionError("vstack needs a common domain")
        coords = direct_sum_coordinates(*(f.codomain for f in maps))
        stacked = [list(row) for f in maps for row in f.entries]
        rows = _matmul(coords.to_canonical.entries, stacked, len(stacked), domain.generators)
        return GroupHom.from_rows(domain, coords.group, rows)

    @staticmethod
    def block(*maps: "GroupHom") -> "GroupHom":
        """f_1 + ... + f_n acting summand-wise."""
        src = direct_sum_coordinates(*(f.domain for f in maps))
        dst = direct_sum_coordinates(*(f.codomain for f in maps))
        n_in = sum(f.domain.generators for f in maps)
        n_out = sum(f.codomain.generators for f in maps)
        diag: List[List[Entry]] = [[0] * n_in for _ in range(n_out)]
        r = c = 0
        for f in maps:
            for i, row in enumerate(f.entries):
                for j, e in enumerate(row):
                    diag[r + i][c + j] = e
            r += f.codomain.generators
            c += f.domain.generators
        inner = _matmul(diag, src.from_canonical.entries, n_in, src.group.generators)
        rows = _matmul(dst.to_canonical.entries, inner, n_out, src.group.generators)
        return GroupHom.from_rows(src.group, dst.group, rows)

    def __str__(self) -> str:
        body = "; ".join(" ".join(repr(e) if e is UNKNOWN else str(e) for e in row) for row in self.entries)
        return f"{self.domain} -> {self.codomain} [{body}]"


def _require_known(f: GroupHom) -> IntMatrix:
    return f.matrix()


def kernel(f: GroupHom) -> Tuple[AbelianGroup, IntMatrix]:
    """Kernel of a map between free groups, with a canonical basis as columns."""
    M = _require_known(f)
    if not (f.domain.is_free() and f.codomain.is_free()):
        raise ValueError("kernel() needs free domain and codomain; use kernel_presented()")
    basis = kernel_basis(M)
    return AbelianGroup.free(basis.cols), basis


def _preimage_lattice(f: GroupHom) -> IntMatrix:
    """Canonical basis of {x in Z^n : F x lies in the codomain relations}."""
    M = _require_known(f)
    n = f.domain.generators
    K = kernel_basis(M.hstack(f.codomain.relation_matrix()))
    return canonical_basis(K.select_rows(range(n)), n)


def cokernel(f: GroupHom) -> AbelianGroup:
    M = _require_known(f)
    return normalize(Presentation(f.codomain.generators, M.hstack(f.codomain.relation_matrix())))


def image(f: GroupHom) -> AbelianGroup:
    """Image of f, presented on the images of the domain generators."""
    _require_known(f)
    return normalize(Presentation(f.domain.generators, _preimage_lattice(f)))


def kernel_presented(f: GroupHom) -> AbelianGroup:
    """Kernel of f when domain or codomain may carry torsion."""
    L = _preimage_lattice(f)
    relations = solve_integer_columns(L, f.domain.relation_matrix())
    if relations is None:
        raise ValueError(f"domain relations of {f} escape the kernel lattice")
    return normalize(Presentation(L.cols, relations))


def image_lattice(f: GroupHom) -> IntMatrix:
    """Canonical basis of the lift of im f to Z^m (codomain relations included)."""
    M = _require_known(f)
    return canonical_basis(M.hstack(f.codomain.relation_matrix()), f.codomain.generators)


def kernel_lattice(f: GroupHom) -> IntMatrix:
    """Canonical basis of the lift of ker f to Z^n (contains the domain relations)."""
    return _preimage_lattice(f)


def lattice_contains(outer: IntMatrix, inner: IntMatrix) -> bool:
    if inner.cols == 0:
        return True
    if outer.cols == 0:
        return inner.is_zero()
    return solve_integer_columns(outer, inner) is not None


def is_surjective(f: GroupHom) -> bool:
    return cokernel(f).is_zero()


def is_injective(f: GroupHom) -> bool:
    return kernel_presented(f).is_zero()
