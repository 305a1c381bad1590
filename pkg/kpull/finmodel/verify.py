"""
Exact checks of the gluing lemmas on finite models.

B_i is Q^{X_i} and pi^i_j is restriction along iota^i_j. The
multi-pullback B^pi is cut out of the product of the B_i by the
compatibility constraints; every quotient of B^pi is carried as the
matrix of a quotient map in coordinates of a fixed basis of B^pi.
Nothing below uses the glued space: it is the independent side of the
oracle.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

from kpull.diagram.family import pair_key
from kpull.finmodel.cocycle import cocycle_check
from kpull.finmodel.model import FiniteGluingModel
from kpull.finmodel.ratlinalg import (
    QMatrix,
    annihilator,
    block_diagonal,
    hstack,
    induced,
    intersection,
    is_onto,
    same_span,
    subspace_sum,
    vstack,
)
from kpull.shared.errors import LiftFailure, PreconditionViolated

logger = logging.getLogger(__name__)


class ModelAlgebra:
    """Coordinates, constraints and the restriction maps of one model."""

    def __init__(self, model: FiniteGluingModel):
        self.model = model
        self.coords = model.variables()
        self.position = {c: n for n, c in enumerate(self.coords)}
        self.offsets: Dict[str, int] = {}
        offset = 0
        for i in model.index:
            self.offsets[i] = offset
            offset += model.size(i)

        self.constraints = self.constraint_matrix(model.pairs())
        self.basis = self.constraints.kernel()

    @property
    def dim(self) -> int:
        return self.basis.cols

    def constraint_matrix(self, pairs) -> QMatrix:
        """Rows e_(i, iota^i_j y) - e_(j, iota^j_i y) over the given pairs."""
        rows: List[List[int]] = []
        for key in pairs:
            overlap = self.model.overlaps[key]
            i, j = sorted(overlap.maps)
            for y in overlap.points:
                row = [0] * len(self.coords)
                row[self.position[(i, overlap.embed(i, y))]] += 1
                row[self.position[(j, overlap.embed(j, y))]] -= 1
                rows.append(row)
        return QMatrix.from_rows(rows, len(self.coords))

    def restriction(self, i: str, j: str) -> QMatrix:
        """pi^i_j : B_i -> B_ij."""
        xs = self.model.sets[i]
        column = {x: n for n, x in enumerate(xs)}
        ov = self.model.overlap(i, j)
        return QMatrix.selection([column[ov.embed(i, y)] for y in ov.points], len(xs))

    def selector(self, i: str) -> QMatrix:
        """Coordinates of component i inside the product."""
        return QMatrix.selection(
            range(self.offsets[i], self.offsets[i] + self.model.size(i)), len(self.coords)
        )

    def projection(self, i: str) -> QMatrix:
        """pi_i : B^pi -> B_i in basis coordinates."""
        return self.selector(i) @ self.basis

    def ideal(self, *labels: str) -> QMatrix:
        """I_i + I_j + ... as columns in basis coordinates."""
        return subspace_sum(*(self.projection(i).kernel() for i in labels))

    def quotient(self, *labels: str) -> QMatrix:
        """B^pi -> B^pi / (I_i + ...)."""
        return annihilator(self.ideal(*labels))


def _require_cocycle(model: FiniteGluingModel, what: str) -> None:
    result = cocycle_check(model)
    if not result.ok:
        raise PreconditionViolated(f"{what} needs the cocycle condition; {result.witness}")


def _require_three(model: FiniteGluingModel, what: str) -> None:
    if len(model.index) != 3:
        raise PreconditionViolated(f"{what} needs three pieces, model has {len(model.index)}")


def multipullback_dim(model: FiniteGluingModel) -> int:
    """dim of {(f_i) : f_i o iota^i_j = f_j o iota^j_i} by rank of the constraints."""
    return ModelAlgebra(model).dim


def verify_rebracketing(model: FiniteGluingModel) -> bool:
    """
    Build P = P1 x_{B_ac + B_bc} B_c as two nested constraint systems and
    check that regrouping coordinates carries B^pi onto P bijectively.
    """
    _require_three(model, "verify_rebracketing")
    alg = ModelAlgebra(model)
    a, b, c = model.index

    sel_ab = vstack(alg.selector(a), alg.selector(b))
    p1_constraints = alg.constraint_matrix([pair_key(a, b)]) @ sel_ab.T
    p1 = p1_constraints.kernel()

    gamma = block_diagonal(alg.restriction(a, c), alg.restriction(b, c)) @ p1
    delta = vstack(alg.restriction(c, a), alg.restriction(c, b))
    p = hstack(gamma, -delta).kernel()

    regrouped = block_diagonal(p1, QMatrix.identity(model.size(c))) @ p
    ok = p.cols == alg.dim and same_span(regrouped, alg.basis)
    if not ok:
        logger.debug("rebracketing: dim P = %d, dim B^pi = %d", p.cols, alg.dim)
    return ok


def verify_canonical_form(model: FiniteGluingModel) -> bool:
    """
    B^pi is the multi-pullback of the canonical surjections
    B^pi/I_i -> B^pi/(I_i + I_j).
    """
    alg = ModelAlgebra(model)
    quotients = {i: alg.quotient(i) for i in model.index}
    total = sum(quotients[i].rows for i in model.index)

    rows: List[QMatrix] = []
    for i, j in combinations(model.index, 2):
        target = alg.quotient(i, j)
        left, right = induced(quotients[i], target), induced(quotients[j], target)
        if left is None or right is None:
            return False
        blocks = {i: left, j: -right}
        rows.append(
            hstack(*(blocks.get(l, QMatrix.zeros(target.rows, quotients[l].rows)) for l in model.index))
        )
    system = vstack(*rows) if rows else QMatrix.zeros(0, total)
    rebuilt = system.kernel()
    canonical = vstack(*(quotients[i] for i in model.index))
    return rebuilt.cols == alg.dim and canonical.rank() == alg.dim


def verify_quotient_isos(model: FiniteGluingModel) -> bool:
    """
    (a) every pi_i is onto, (b) B^pi/I_i has dim |X_i|,
    (c) B^pi/(I_i + I_j) has dim |X_ij|, (d) the canonical form.
    """
    _require_cocycle(model, "verify_quotient_isos")
    alg = ModelAlgebra(model)
    for i in model.index:
        pi = alg.projection(i)
        if not is_onto(pi):
            logger.debug("pi_%s is not onto", i)
            return False
        if alg.dim - alg.ideal(i).cols != model.size(i):
            logger.debug("B^pi/I_%s has the wrong dimension", i)
            return False
    for i, j in combinations(model.index, 2):
        if alg.dim - alg.ideal(i, j).cols != model.size(pair_key(i, j)):
            logger.debug("B^pi/(I_%s+I_%s) has the wrong dimension", i, j)
            return False
    return verify_canonical_form(model)


def iterd_arrows(model: FiniteGluingModel) -> Dict[str, bool]:
    """Surjectivity of every arrow of the iterated quotient diagram, by name."""
    alg = ModelAlgebra(model)
    a, b, c = model.index
    q = {i: alg.quotient(i) for i in model.index}
    q_pair = {key: alg.quotient(*key) for key in model.pairs()}
    q_all = alg.quotient(*model.index)

    def down(src: QMatrix, dst: QMatrix, name: str) -> QMatrix:
        m = induced(src, dst)
        if m is None:
            raise PreconditionViolated(f"{name} is not well defined")
        return m

    ab, ac, bc = pair_key(a, b), pair_key(a, c), pair_key(b, c)
    a_ab = down(q[a], q_pair[ab], f"B{a} -> B{ab}")
    b_ab = down(q[b], q_pair[ab], f"B{b} -> B{ab}")
    a_ac = down(q[a], q_pair[ac], f"B{a} -> B{ac}")
    b_bc = down(q[b], q_pair[bc], f"B{b} -> B{bc}")
    c_ac = down(q[c], q_pair[ac], f"B{c} -> B{ac}")
    c_bc = down(q[c], q_pair[bc], f"B{c} -> B{bc}")
    ac_all = down(q_pair[ac], q_all, f"B{ac} -> B123")
    bc_all = down(q_pair[bc], q_all, f"B{bc} -> B123")

    p1 = hstack(a_ab, -b_ab).kernel()
    p2 = hstack(ac_all, -bc_all).kernel()
    gamma = block_diagonal(a_ac, b_bc) @ p1
    delta = vstack(c_ac, c_bc)
    p = hstack(gamma, -delta).kernel()

    r_a, r_ac, r_c = q[a].rows, q_pair[ac].rows, q[c].rows
    arrows = {
        f"B{a} -> B{ab}": is_onto(a_ab),
        f"B{b} -> B{ab}": is_onto(b_ab),
        f"B{ac} -> B123": is_onto(ac_all),
        f"B{bc} -> B123": is_onto(bc_all),
        f"P1 -> B{a}": is_onto(p1.row_block(0, r_a)),
        f"P1 -> B{b}": is_onto(p1.row_block(r_a, p1.rows)),
        f"P2 -> B{ac}": is_onto(p2.row_block(0, r_ac)),
        f"P2 -> B{bc}": is_onto(p2.row_block(r_ac, p2.rows)),
        "gamma": same_span(gamma, p2),
        "delta": same_span(delta, p2),
        "P -> P1": is_onto(p.row_block(0, p1.cols)),
        f"P -> B{c}": is_onto(p.row_block(p1.cols, p1.cols + r_c)),
        "P = B^pi": p.cols == alg.dim,
    }
    return arrows


def verify_surjectivity_iterd(model: FiniteGluingModel) -> bool:
    _require_cocycle(model, "verify_surjectivity_iterd")
    _require_three(model, "verify_surjectivity_iterd")
    failed = [name for name, ok in iterd_arrows(model).items() if not ok]
    if failed:
        logger.debug("not onto: %s", ", ".join(failed))
    return not failed


@dataclass(frozen=True)
class EtaMaps:
    """eta^a : B_ac -> B^pi_123 and eta^b : B_bc -> B^pi_123 as rational matrices."""

    first: Tuple[Tuple[Fraction, ...], ...]
    second: Tuple[Tuple[Fraction, ...], ...]
    lift_independent: bool
    commutes: bool


def _eta(alg: ModelAlgebra, i: str, c: str, q_all: QMatrix) -> Tuple[QMatrix, bool]:
    through = alg.restriction(i, c) @ alg.projection(i)
    columns = []
    for n in range(through.rows):
        target = QMatrix.selection([0 if r == n else None for r in range(through.rows)], 1)
        lift = through.solve(target)
        if lift is None:
            raise LiftFailure(f"basis element {n} of B{pair_key(i, c)} has no preimage in B^pi")
        columns.append(q_all @ lift)
    eta = hstack(*columns) if columns else QMatrix.zeros(q_all.rows, 0)
    independent = (q_all @ through.kernel()).is_zero()
    return eta, independent


def eta_maps(model: FiniteGluingModel) -> EtaMaps:
    """eta^i(b) = (any lift of b to B^pi) + I_1 + I_2 + I_3."""
    _require_cocycle(model, "eta_maps")
    _require_three(model, "eta_maps")
    alg = ModelAlgebra(model)
    a, b, c = model.index
    q_all = alg.quotient(*model.index)

    eta_a, free_a = _eta(alg, a, c, q_all)
    eta_b, free_b = _eta(alg, b, c, q_all)

    # both ways round B^pi -> B123, and delta lands in the pullback P2
    pi_c = alg.projection(c)
    commutes = (
        eta_a @ alg.restriction(a, c) @ alg.projection(a) == q_all
        and eta_b @ alg.restriction(b, c) @ alg.projection(b) == q_all
        and eta_a @ alg.restriction(c, a) @ pi_c == eta_b @ alg.restriction(c, b) @ pi_c
    )
    return EtaMaps(
        first=tuple(map(tuple, eta_a.to_fractions())),
        second=tuple(map(tuple, eta_b.to_fractions())),
        lift_independent=free_a and free_b,
        commutes=commutes,
    )


def check_distributive(model: FiniteGluingModel) -> bool:
    """
    I & (J + K) = I & J + I & K for the ideals I_i of B^pi. Subspace
    lattices are modular, so the identities on the generators suffice.
    Two ideals always generate a distributive lattice.
    """
    alg = ModelAlgebra(model)
    ideals = {i: alg.ideal(i) for i in model.index}
    for i in model.index:
        rest = [j for j in model.index if j != i]
        if len(rest) < 2:
            continue
        j, k = rest
        x, y, z = ideals[i], ideals[j], ideals[k]
        left = intersection(x, subspace_sum(y, z))
        right = subspace_sum(intersection(x, y), intersection(x, z))
        if not same_span(left, right):
            logger.debug("I_%s & (I_%s + I_%s) differs from I_%s & I_%s + I_%s & I_%s", i, j, k, i, j, i, k)
            return False
    return True
