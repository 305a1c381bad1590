"""
K-theory of finite models through the pipeline.

K0(C(X)) = Z^X with the minimal projections as basis and K1 = 0.
Restriction along an injection sends the projection at x to the one at
its preimage, or to 0, so every induced K0 map is a 0/1 matrix.
"""

from typing import Dict, Mapping, Optional, Sequence

from kpull.abgroup import AbelianGroup, GroupHom
from kpull.diagram import KMap, KPair, PullbackFamily, run_pipeline
from kpull.diagram.family import DERIVED, TRIPLE, pair_key
from kpull.finmodel.cocycle import cocycle_check
from kpull.finmodel.gluing import GluedSpace, glued_space
from kpull.finmodel.model import FiniteGluingModel
from kpull.shared.errors import PreconditionViolated

COCYCLE_SOURCE = "finite model cocycle_check"

ZERO = AbelianGroup.zero()


def _kpair(n: int) -> KPair:
    return KPair(AbelianGroup.free(n), ZERO, unit=(1,) * n)


def _zero_k1() -> GroupHom:
    return GroupHom.zero(ZERO, ZERO)


def _pullback_rows(embedding: Mapping[str, str], points: Sequence[str], elements: Sequence[str]):
    """Row y, column x is 1 iff the embedding sends y to x."""
    return [[1 if embedding[y] == x else 0 for x in elements] for y in points]


def _triple_rows(model: FiniteGluingModel, space: GluedSpace, key: str, triple: Sequence[int]):
    overlap = model.overlaps[key]
    i = sorted(overlap.maps)[0]
    classes = {p: space.class_of(i, overlap.embed(i, p)) for p in overlap.points}
    return [[1 if classes[p] == t else 0 for p in overlap.points] for t in triple]


def family_from_model(model: FiniteGluingModel, space: Optional[GluedSpace] = None) -> PullbackFamily:
    """
    The K-level family of a model. B123 is the quotient onto the functions
    on the classes every piece meets; eta sends the projection at y to the
    projection at its class when that class is in the triple part, else 0.
    """
    space = space if space is not None else glued_space(model)
    nodes: Dict[str, KPair] = {}
    for i in model.index:
        nodes[i] = _kpair(model.size(i))
    for key in model.pairs():
        nodes[key] = _kpair(model.size(key))

    arrows = {}
    for i in model.index:
        for j in model.index:
            if i == j:
                continue
            key = pair_key(i, j)
            rows = _pullback_rows(model.embedding(i, j), model.overlaps[key].points, model.sets[i])
            k0 = GroupHom.from_rows(nodes[i].k0, nodes[key].k0, rows)
            arrows[(i, key)] = KMap(k0, _zero_k1())

    etas = {}
    certified = False
    if len(model.index) == 3:
        certified = cocycle_check(model).ok
        triple = space.common(*model.index)
        nodes[TRIPLE] = _kpair(len(triple))
        for key in model.pairs():
            k0 = GroupHom.from_rows(nodes[key].k0, nodes[TRIPLE].k0, _triple_rows(model, space, key, triple))
            etas[key] = KMap(k0, _zero_k1())

    return PullbackFamily(
        name=model.name,
        index=model.index,
        nodes=nodes,
        arrows=arrows,
        etas=etas,
        cocycle_certified=certified,
        cocycle_source=COCYCLE_SOURCE if certified else None,
        provenance={key: DERIVED for key in nodes},
        notes={key: "zero algebra overlap" for key in model.zero_overlaps()},
    )


def k_pipeline_oracle(model: FiniteGluingModel) -> KPair:
    """K(B^pi) of a model by the pipeline; expected (Z^|glued space|, 0)."""
    result = cocycle_check(model)
    if not result.ok:
        raise PreconditionViolated(f"k_pipeline_oracle needs the cocycle condition; {result.witness}")
    outcome = run_pipeline(family_from_model(model))
    if outcome.kpair is None:
        raise PreconditionViolated(
            f"pipeline stopped {outcome.status.value} at stage {outcome.trace.failed_stage}"
        )
    return outcome.kpair
