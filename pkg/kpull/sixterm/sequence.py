"""
Cyclic six-term sequences and solver reports.

Slots are indexed 0..5 in the order

    K0(A) -> K0(A1)+K0(A2) -> K0(A12) -> K1(A) -> K1(A1)+K1(A2) -> K1(A12) -> K0(A)

and map m_i goes from node i to node i+1 (mod 6). m2 is the index map,
m5 the exponential map.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from kpull.abgroup import AbelianGroup, GroupHom
from kpull.shared.errors import DimensionError

NODE_NAMES = (
    "K0(A)",
    "K0(A1)+K0(A2)",
    "K0(A12)",
    "K1(A)",
    "K1(A1)+K1(A2)",
    "K1(A12)",
)

MAP_ROLES = {2: "index map", 5: "exponential map"}

GIVEN = "given"
EXTERNAL_FACT = "external-fact"
SOLVED = "solved"
PROVENANCES = (GIVEN, EXTERNAL_FACT, SOLVED)


def map_name(i: int) -> str:
    i %= 6
    role = MAP_ROLES.get(i)
    return f"m{i} ({role})" if role else f"m{i}"


def image_slot(i: int) -> str:
    i %= 6
    return f"im m{(i - 1) % 6} = ker m{i}"


class Status(str, Enum):
    SOLVED = "Solved"
    UNDERDETERMINED = "Underdetermined"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class SixTermSequence:
    """Six group slots and six map slots; None marks an unknown slot."""

    nodes: Tuple[Optional[AbelianGroup], ...] = (None,) * 6
    maps: Tuple[Optional[GroupHom], ...] = (None,) * 6
    provenance: Tuple[Optional[str], ...] = ()
    labels: Tuple[str, ...] = NODE_NAMES

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.nodes) != 6 or len(self.maps) != 6 or len(self.labels) != 6:
            raise DimensionError("a six-term sequence has exactly six nodes, maps and labels")

        provenance = tuple(self.provenance) or tuple(
            GIVEN if g is not None else None for g in self.nodes
        )
        if len(provenance) != 6:
            raise DimensionError("provenance needs one entry per node")
        for g, p in zip(self.nodes, provenance):
            if (g is None) != (p is None) or (p is not None and p not in PROVENANCES):
                raise ValueError(f"bad provenance {p!r} for node {g}")
        object.__setattr__(self, "provenance", provenance)

        for i, f in enumerate(self.maps):
            if f is None:
                continue
            src, dst = self.nodes[i], self.nodes[(i + 1) % 6]
            if src is None or dst is None:
                raise DimensionError(f"{map_name(i)} is given but an endpoint group is unknown")
            if f.domain != src or f.codomain != dst:
                raise DimensionError(
                    f"{map_name(i)} is {f.domain} -> {f.codomain}, expected {src} -> {dst}"
                )

    def with_node(self, i: int, group: AbelianGroup, provenance: str = EXTERNAL_FACT) -> "SixTermSequence":
        nodes = list(self.nodes)
        prov = list(self.provenance)
        nodes[i], prov[i] = group, provenance
        return replace(self, nodes=tuple(nodes), provenance=tuple(prov))

    def is_fully_known(self) -> bool:
        return all(g is not None for g in self.nodes) and all(
            f is not None and f.is_known() for f in self.maps
        )

    def known_nodes(self) -> int:
        return sum(1 for g in self.nodes if g is not None)


@dataclass(frozen=True)
class Step:
    """One rule application: `slot` := `value`, derived from `premises`."""

    rule: str
    slot: str
    value: str
    premises: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Blocker:
    slot: str
    reasons: Tuple[str, ...]


@dataclass(frozen=True)
class Witness:
    """Two derivations of one slot that disagree."""

    slot: str
    existing: str
    derived: str
    chain: Tuple[Step, ...]


@dataclass(frozen=True)
class SolveReport:
    status: Status
    sequence: SixTermSequence
    steps: Tuple[Step, ...]
    images: Tuple[Optional[AbelianGroup], ...] = (None,) * 6
    unresolved: Tuple[Blocker, ...] = ()
    witness: Optional[Witness] = None
    ambiguities: Tuple[str, ...] = ()
    origins: Dict[str, Step] = field(default_factory=dict, compare=False, repr=False)

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED

    def node(self, i: int) -> Optional[AbelianGroup]:
        return self.sequence.nodes[i]

    def chain(self, slot: str) -> List[Step]:
        """Rule applications that `slot` depends on, premises first."""
        seen: Dict[str, Step] = {}

        def visit(name: str) -> None:
            step = self.origins.get(name)
            if step is None or name in seen:
                return
            seen[name] = step
            for premise in step.premises:
                visit(premise)

        visit(slot)
        order = {s: k for k, s in enumerate(self.steps)}
        return sorted(seen.values(), key=lambda s: order.get(s, -1))


def render_nodes(nodes: Sequence[Optional[AbelianGroup]], labels: Sequence[str]) -> List[str]:
    return [f"{label} = {g if g is not None else '?'}" for label, g in zip(labels, nodes)]
