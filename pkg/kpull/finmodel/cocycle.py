"""
The cocycle condition on a finite gluing model.

Dually to the algebra side, for distinct i, j, k:

    D^i_jk = (iota^i_j)^-1(im iota^i_k)        a subset of X_ij
    T^i_jk = im iota^i_j & im iota^i_k         a subset of X_i

Functions on D^i_jk are B_ij / pi^i_j(ker pi^i_k) and functions on T^i_jk
are B_i / (ker pi^i_j + ker pi^i_k). The first clause is D^i_jk = D^j_ik.
Under it, psi^ij_k = iota^j_i o (iota^i_j)^-1 is a bijection
T^i_jk -> T^j_ik, and phi^ij_k is pullback along it, so the second clause
reads psi^ik_j = psi^jk_i o psi^ij_k on T^i_jk.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from kpull.finmodel.model import FiniteGluingModel

Triple = Tuple[str, str, str]


@dataclass(frozen=True)
class CocycleWitness:
    """Where a clause fails: the ordered triple and the offending element."""

    clause: int
    triple: Triple
    element: str
    detail: str

    def __str__(self) -> str:
        i, j, k = self.triple
        return f"clause {self.clause} fails at (i,j,k)=({i},{j},{k}), element {self.element}: {self.detail}"


@dataclass(frozen=True)
class CocycleResult:
    ok: bool
    witness: Optional[CocycleWitness] = None

    def __bool__(self) -> bool:
        return self.ok


class TripleOverlapData:
    """D-sets, T-sets and the partial bijections psi of a model."""

    def __init__(self, model: FiniteGluingModel):
        self.model = model

    def d_set(self, i: str, j: str, k: str) -> FrozenSet[str]:
        """D^i_jk, as points of X_ij."""
        ov = self.model.overlap(i, j)
        return frozenset(ov.preimage(i, self.model.overlap(i, k).image(i)))

    def t_set(self, i: str, j: str, k: str) -> FrozenSet[str]:
        """T^i_jk, as elements of X_i."""
        return self.model.overlap(i, j).image(i) & self.model.overlap(i, k).image(i)

    def psi(self, i: str, j: str, k: str) -> Dict[str, str]:
        """psi^ij_k : T^i_jk -> T^j_ik; only meaningful when D^i_jk = D^j_ik."""
        ov = self.model.overlap(i, j)
        back = ov.inverse(i)
        return {t: ov.embed(j, back[t]) for t in sorted(self.t_set(i, j, k))}


def _clause_one(data: TripleOverlapData, triple: Triple) -> Optional[CocycleWitness]:
    i, j, k = triple
    left, right = data.d_set(i, j, k), data.d_set(j, i, k)
    if left == right:
        return None
    y = min(left ^ right)
    side = i if y in left else j
    return CocycleWitness(
        1, triple, y, f"point of X_{i}{j} over the {k}-overlap only on the {side} side"
    )


def _clause_two(data: TripleOverlapData, triple: Triple) -> Optional[CocycleWitness]:
    i, j, k = triple
    direct = data.psi(i, k, j)
    first, second = data.psi(i, j, k), data.psi(j, k, i)
    for t in sorted(direct):
        composed = second.get(first.get(t))
        if composed != direct[t]:
            return CocycleWitness(
                2, triple, t, f"goes to {direct[t]} directly but to {composed} through X_{j}"
            )
    return None


def cocycle_check(model: FiniteGluingModel) -> CocycleResult:
    """Both clauses for every ordered triple; vacuous for two pieces."""
    data = TripleOverlapData(model)
    triples = list(model.triples())
    # psi is only well defined once the first clause holds everywhere
    for check in (_clause_one, _clause_two):
        for triple in triples:
            witness = check(data, triple)
            if witness is not None:
                return CocycleResult(False, witness)
    return CocycleResult(True)


def evaluate_clause(model: FiniteGluingModel, witness: CocycleWitness) -> bool:
    """Re-evaluate one clause at the witness element; True when it holds there."""
    data = TripleOverlapData(model)
    i, j, k = witness.triple
    if witness.clause == 1:
        return (witness.element in data.d_set(i, j, k)) == (witness.element in data.d_set(j, i, k))
    if witness.clause == 2:
        direct = data.psi(i, k, j).get(witness.element)
        composed = data.psi(j, k, i).get(data.psi(i, j, k).get(witness.element))
        return direct is not None and direct == composed
    raise ValueError(f"no clause {witness.clause}")
