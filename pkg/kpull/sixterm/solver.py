"""
Rule-based chase of a cyclic six-term exact sequence.

State per node i: the group N_i and I_i, the image of m_{i-1} (equal to
the kernel of m_i). Rules run round-robin over the nodes until nothing
changes:

    R1  a zero node has zero image and zero kernel around it
    R2  a fully known map determines its image, kernel and cokernel
    R3  a map onto for every completion kills the next map
    R4  0 -> I_i -> N_i -> I_{i+1} -> 0 is short exact
    R5  every derived value is compared with what is already known

Unknown map entries are never solved for.
"""

import logging
from typing import List, Optional, Tuple

from kpull.abgroup import (
    UNKNOWN,
    AbelianGroup,
    GroupHom,
    IntMatrix,
    Presentation,
    cokernel,
    direct_sum,
    image,
    kernel_presented,
    normalize,
)
from kpull.abgroup.homs import image_lattice, kernel_lattice
from kpull.sixterm.sequence import (
    EXTERNAL_FACT,
    GIVEN,
    SOLVED,
    Blocker,
    SixTermSequence,
    SolveReport,
    Status,
    Step,
    Witness,
    image_slot,
    map_name,
)
from kpull.shared.errors import DimensionError

logger = logging.getLogger(__name__)

ZERO = AbelianGroup.zero()


def surjective_for_all_completions(f: GroupHom) -> bool:
    """
    True when the fully known columns of f already generate the codomain.

    Then every integer completion of the unknown entries is onto. False
    means undecided, not "not onto".
    """
    rows = f.codomain.generators
    cols = f.known_columns()
    known = IntMatrix.from_rows(
        [[f.entries[i][j] for j in cols] for i in range(rows)], cols=len(cols)
    )
    quotient = Presentation(rows, known.hstack(f.codomain.relation_matrix()))
    return normalize(quotient).is_zero()


class _Contradiction(Exception):
    def __init__(self, witness: Witness):
        super().__init__(witness.slot)
        self.witness = witness


def _map_slot(i: int) -> str:
    return f"m{i % 6}"


class _Chase:
    def __init__(self, seq: SixTermSequence):
        self.labels = seq.labels
        self.nodes: List[Optional[AbelianGroup]] = list(seq.nodes)
        self.maps: List[Optional[GroupHom]] = list(seq.maps)
        self.provenance = list(seq.provenance)
        self.images: List[Optional[AbelianGroup]] = [None] * 6
        self.bases: List[Optional[IntMatrix]] = [None] * 6
        self.steps: List[Step] = []
        self.origins = {}
        self.ambiguities: List[str] = []

        for i, g in enumerate(self.nodes):
            if g is not None:
                rule = EXTERNAL_FACT if self.provenance[i] == EXTERNAL_FACT else GIVEN
                self.origins[self.labels[i]] = Step(rule, self.labels[i], str(g))
        for i, f in enumerate(self.maps):
            if f is not None:
                self.origins[_map_slot(i)] = Step(GIVEN, _map_slot(i), str(f))

    def node_slot(self, i: int) -> str:
        return self.labels[i % 6]

    def _record(self, rule: str, slot: str, value: str, premises: Tuple[str, ...]) -> None:
        step = Step(rule, slot, value, premises)
        self.steps.append(step)
        self.origins[slot] = step
        logger.debug("%s: %s := %s  (from %s)", rule, slot, value, ", ".join(premises) or "-")

    def _conflict(self, slot: str, existing: str, derived: str, rule: str, premises: Tuple[str, ...]):
        attempted = Step(rule, slot, derived, premises)
        seen = {}

        def visit(name: str) -> None:
            step = self.origins.get(name)
            if step is None or name in seen:
                return
            seen[name] = step
            for p in step.premises:
                visit(p)

        visit(slot)
        for p in premises:
            visit(p)
        chain = tuple(seen.values()) + (attempted,)
        logger.debug("R5: %s is %s but %s derives %s", slot, existing, rule, derived)
        raise _Contradiction(Witness(slot, existing, derived, chain))

    # -- assignment (R5 lives here) ---------------------------------------

    def assign_node(self, i: int, group: AbelianGroup, rule: str, premises: Tuple[str, ...]) -> bool:
        i %= 6
        current = self.nodes[i]
        if current is None:
            self.nodes[i] = group
            self.provenance[i] = SOLVED
            self._record(rule, self.node_slot(i), str(group), premises)
            return True
        if current != group:
            self._conflict(self.node_slot(i), str(current), str(group), rule, premises)
        return False

    def assign_image(
        self,
        i: int,
        group: AbelianGroup,
        rule: str,
        premises: Tuple[str, ...],
        basis: Optional[IntMatrix] = None,
    ) -> bool:
        i %= 6
        slot = image_slot(i)
        current = self.images[i]
        if current is not None:
            if current != group:
                self._conflict(slot, str(current), str(group), rule, premises)
            if basis is not None and self.bases[i] is None:
                self.bases[i] = basis
            return False

        N = self.nodes[i]
        if N is not None and not _fits_inside(group, N):
            self._conflict(
                slot, f"subgroup of {N}", str(group), rule, premises + (self.node_slot(i),)
            )
        self.images[i] = group
        if basis is not None:
            self.bases[i] = basis
        self._record(rule, slot, str(group), premises)
        return True

    def assign_map(self, i: int, f: GroupHom, rule: str, premises: Tuple[str, ...]) -> bool:
        i %= 6
        current = self.maps[i]
        if current is not None:
            if current == f:
                return False
            if current.is_known() or not _refines(current, f):
                self._conflict(_map_slot(i), str(current), str(f), rule, premises)
        self.maps[i] = f
        self._record(rule, _map_slot(i), str(f), premises)
        return True

    # -- rules ----------------------------------------------------------

    def zero_node(self, i: int) -> bool:
        N = self.nodes[i]
        if N is None or not N.is_zero():
            return False
        premises = (self.node_slot(i),)
        changed = self.assign_image(i, ZERO, "R1", premises)
        changed |= self.assign_image(i + 1, ZERO, "R1", premises)
        return changed

    def known_map(self, i: int) -> bool:
        f = self.maps[i]
        if f is None or not f.is_known():
            return False
        premises = (_map_slot(i),)
        src, dst = self.nodes[i], self.nodes[(i + 1) % 6]
        changed = self.assign_image(
            i + 1, image(f), "R2", premises, image_lattice(f) if dst.is_free() else None
        )
        changed |= self.assign_image(
            i, kernel_presented(f), "R2", premises, kernel_lattice(f) if src.is_free() else None
        )
        changed |= self.assign_image(i + 2, cokernel(f), "R2", premises)
        return changed

    def onto_cut(self, i: int) -> bool:
        f = self.maps[i]
        if f is None or f.is_known() or not surjective_for_all_completions(f):
            return False
        dst = self.nodes[(i + 1) % 6]
        premises = (_map_slot(i),)
        changed = self.assign_image(
            i + 1, dst, "R3", premises, IntMatrix.identity(dst.generators) if dst.is_free() else None
        )
        changed |= self.assign_image(i + 2, ZERO, "R3", premises)
        return changed

    def zero_map(self, i: int) -> bool:
        I_next = self.images[(i + 1) % 6]
        src, dst = self.nodes[i], self.nodes[(i + 1) % 6]
        if I_next is None or not I_next.is_zero() or src is None or dst is None:
            return False
        current = self.maps[i]
        if current is not None and current.is_known() and current.is_zero():
            return False
        return self.assign_map(i, GroupHom.zero(src, dst), "R1", (image_slot(i + 1),))

    def extension(self, i: int) -> bool:
        A, X, B = self.images[i], self.nodes[i], self.images[(i + 1) % 6]
        if X is None:
            return self._extract(i, A, B)

        changed = False
        premises = (self.node_slot(i),)
        if A is None and B is not None:
            premises += (image_slot(i + 1),)
            if B.is_zero():
                changed = self.assign_image(
                    i, X, "R4", premises, IntMatrix.identity(X.generators) if X.is_free() else None
                )
            elif X.is_free():
                changed = self.assign_image(i, self._free_rest(i, X, B, premises), "R4", premises)
            elif X.is_finite() and B.is_finite() and X.order() == B.order():
                changed = self.assign_image(i, ZERO, "R4", premises)
        elif B is None and A is not None:
            premises += (image_slot(i),)
            nxt = self.nodes[(i + 1) % 6]
            if A.is_zero():
                changed = self.assign_image(i + 1, X, "R4", premises)
            elif nxt is not None and nxt.is_free():
                changed = self.assign_image(i + 1, self._free_rest(i, X, A, premises), "R4", premises)
            elif X.is_finite() and A.is_finite() and X.order() == A.order():
                changed = self.assign_image(i + 1, ZERO, "R4", premises)
        elif A is not None and B is not None:
            self._check_extension(i, A, X, B)
        return changed

    def _free_rest(self, i: int, X: AbelianGroup, part: AbelianGroup, premises) -> AbelianGroup:
        rank = X.free_rank - part.free_rank
        if rank < 0:
            self._conflict(
                self.node_slot(i), str(X), f"rank at least {part.free_rank}", "R4", premises
            )
        return AbelianGroup.free(rank)

    def _extract(self, i: int, A: Optional[AbelianGroup], B: Optional[AbelianGroup]) -> bool:
        if A is None or B is None:
            return False
        premises = (image_slot(i), image_slot(i + 1))
        if B.is_zero():
            value = A
        elif A.is_zero():
            value = B
        elif B.is_free():
            value = direct_sum(A, B)
        else:
            note = (
                f"{self.node_slot(i)}: extension of {B} by {A} is not determined "
                f"(torsion quotient)"
            )
            if note not in self.ambiguities:
                self.ambiguities.append(note)
                logger.debug("R4: %s", note)
            return False

        changed = self.assign_node(i, value, "R4", premises)
        nxt = self.nodes[(i + 1) % 6]
        basis = self.bases[(i + 1) % 6]
        current = self.maps[i]
        if (
            A.is_zero()
            and B.is_free()
            and nxt is not None
            and basis is not None
            and basis.cols == value.generators
            and (current is None or not current.is_known())
        ):
            # the node is the kernel of the next map, included by its basis
            changed |= self.assign_map(
                i, GroupHom.from_matrix(value, nxt, basis), "R4",
                premises + (_map_slot(i + 1),),
            )
        return changed

    def _check_extension(self, i: int, A: AbelianGroup, X: AbelianGroup, B: AbelianGroup) -> None:
        premises = (image_slot(i), image_slot(i + 1))
        if B.is_zero():
            expected = A
        elif A.is_zero():
            expected = B
        elif B.is_free():
            expected = direct_sum(A, B)
        else:
            expected = None

        if expected is not None:
            if expected != X:
                self._conflict(self.node_slot(i), str(X), str(expected), "R4", premises)
            return
        if X.free_rank != A.free_rank + B.free_rank:
            self._conflict(
                self.node_slot(i), str(X), f"rank {A.free_rank + B.free_rank}", "R4", premises
            )
        if X.is_finite() and A.is_finite() and B.is_finite() and X.order() != A.order() * B.order():
            self._conflict(
                self.node_slot(i), str(X), f"order {A.order() * B.order()}", "R4", premises
            )

    # -- driver -----------------------------------------------------------

    def run(self) -> None:
        rules = (self.zero_node, self.known_map, self.onto_cut, self.zero_map, self.extension)
        passes = 0
        changed = True
        while changed:
            changed = False
            passes += 1
            for i in range(6):
                for rule in rules:
                    changed |= rule(i)
        logger.debug("fixpoint after %d passes, %d steps", passes, len(self.steps))

    def sequence(self) -> SixTermSequence:
        return SixTermSequence(
            nodes=tuple(self.nodes),
            maps=tuple(self.maps),
            provenance=tuple(self.provenance),
            labels=self.labels,
        )

    def blockers(self) -> Tuple[Blocker, ...]:
        blockers = []
        for i in range(6):
            if self.nodes[i] is not None:
                continue
            into, out = (i - 1) % 6, i
            reasons = [
                f"maps at {self.node_slot(i)}: {map_name(into)} {self._map_state(into)}, "
                f"{map_name(out)} {self._map_state(out)}"
            ]
            for j in (i, (i + 1) % 6):
                if self.images[j] is None:
                    into, out = (j - 1) % 6, j
                    reasons.append(
                        f"{image_slot(j)} unknown: {map_name(into)} {self._map_state(into)}, "
                        f"{map_name(out)} {self._map_state(out)}"
                    )
            reasons.extend(a for a in self.ambiguities if a.startswith(self.node_slot(i) + ":"))
            blockers.append(Blocker(self.node_slot(i), tuple(reasons)))
        return tuple(blockers)

    def _map_state(self, i: int) -> str:
        f = self.maps[i % 6]
        if f is None:
            if self.nodes[i % 6] is None or self.nodes[(i + 1) % 6] is None:
                return "unknown (endpoint unknown)"
            return "unknown"
        if f.is_known():
            return "known"
        return f"has unknown entries {f.unknown_positions()}"


def solve(seq: SixTermSequence) -> SolveReport:
    """Chase seq to a fixpoint; contradictions come back as Inconsistent reports."""
    if seq.known_nodes() == 0:
        raise DimensionError("solve needs at least one known node")

    chase = _Chase(seq)
    try:
        chase.run()
    except _Contradiction as e:
        logger.info("inconsistent at %s", e.witness.slot)
        return SolveReport(
            status=Status.INCONSISTENT,
            sequence=chase.sequence(),
            steps=tuple(chase.steps),
            images=tuple(chase.images),
            witness=e.witness,
            ambiguities=tuple(chase.ambiguities),
            origins=dict(chase.origins),
        )

    result = chase.sequence()
    blockers = chase.blockers()
    status = Status.UNDERDETERMINED if blockers else Status.SOLVED
    logger.info("%s after %d steps", status.value, len(chase.steps))
    return SolveReport(
        status=status,
        sequence=result,
        steps=tuple(chase.steps),
        images=tuple(chase.images),
        unresolved=blockers,
        ambiguities=tuple(chase.ambiguities),
        origins=dict(chase.origins),
    )


def _fits_inside(sub: AbelianGroup, group: AbelianGroup) -> bool:
    """Necessary conditions for sub to be isomorphic to a subgroup of group."""
    if sub.free_rank > group.free_rank:
        return False
    if group.is_free() and not sub.is_free():
        return False
    if group.is_finite():
        return sub.is_finite() and group.order() % sub.order() == 0
    return True


def _refines(partial: GroupHom, f: GroupHom) -> bool:
    if partial.domain != f.domain or partial.codomain != f.codomain:
        return False
    return all(
        a == f_entry
        for row_p, row_f in zip(partial.entries, f.entries)
        for a, f_entry in zip(row_p, row_f)
        if a is not UNKNOWN
    )