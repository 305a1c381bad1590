"""
Built-in families.

cp2: the quantum complex projective plane glued from three copies of the
Toeplitz square T (x) T. Pairwise overlaps are T (x) C(S^1), the triple
overlap is the torus C(S^1) (x) C(S^1).

mirror: the mirror quantum sphere, two Toeplitz algebras glued over C(S^1)
along the symbol map.
"""

from typing import Tuple

from kpull.abgroup import AbelianGroup, GroupHom
from kpull.diagram.family import (
    EXTERNAL_FACT,
    TRIPLE,
    KMap,
    KPair,
    PullbackFamily,
    pair_key,
)
from kpull.diagram.trace import ExternalFact

Z = AbelianGroup.free(1)
Z2 = AbelianGroup.free(2)
ZERO = AbelianGroup.zero()

CP2_COCYCLE_SOURCE = "[pmh, Lemma 3.2]"
P2_CITATION = "[Section 3, hms]"

TOEPLITZ = KPair(Z, ZERO, unit=(1,))
CIRCLE = KPair(Z, Z, unit=(1,))
TOEPLITZ_SQUARE = TOEPLITZ
TOEPLITZ_CIRCLE = KPair(Z, Z, unit=(1,))
TORUS = KPair(Z2, Z2, unit=(1, 0))

K1_ROW_NOTE = "K1 row of the published table is printed as K0; read as K1"


def build_cp2_family() -> PullbackFamily:
    index = ("1", "2", "3")
    nodes = {i: TOEPLITZ_SQUARE for i in index}
    provenance = {i: EXTERNAL_FACT for i in index}
    notes = {i: K1_ROW_NOTE for i in index}

    arrows = {}
    for i in index:
        for j in index:
            if i == j:
                continue
            pair = pair_key(i, j)
            nodes[pair] = TOEPLITZ_CIRCLE
            provenance[pair] = EXTERNAL_FACT
            notes[pair] = K1_ROW_NOTE
            # unital: [1] goes to [1]; K1(T(x)T) = 0
            arrows[(i, pair)] = KMap(
                GroupHom.from_rows(Z, Z, [[1]]), GroupHom.zero(ZERO, Z)
            )

    nodes[TRIPLE] = TORUS
    provenance[TRIPLE] = EXTERNAL_FACT
    notes[TRIPLE] = "Kunneth for C(S^1) (x) C(S^1)"

    # only the unit class column is known on K0; K1 is left open
    etas = {
        pair: KMap(GroupHom.from_rows(Z, Z2, [[1], [0]]), GroupHom.unknown(Z, Z2))
        for pair in ("12", "13", "23")
    }
    return PullbackFamily(
        name="cp2",
        index=index,
        nodes=nodes,
        arrows=arrows,
        etas=etas,
        cocycle_certified=True,
        cocycle_source=CP2_COCYCLE_SOURCE,
        provenance=provenance,
        notes=notes,
    )


def cp2_external_facts() -> Tuple[ExternalFact, ...]:
    """K0(P2) = Z generated by [1], K1(P2) = Z."""
    return (ExternalFact("P2", KPair(Z, Z, unit=(1,)), P2_CITATION),)


def build_mirror_family() -> PullbackFamily:
    nodes = {"1": TOEPLITZ, "2": TOEPLITZ, "12": CIRCLE}
    symbol = KMap(GroupHom.from_rows(Z, Z, [[1]]), GroupHom.zero(ZERO, Z))
    return PullbackFamily(
        name="mirror",
        index=("1", "2"),
        nodes=nodes,
        arrows={("1", "12"): symbol, ("2", "12"): symbol},
        provenance={key: EXTERNAL_FACT for key in nodes},
        notes={"12": "symbol map T -> C(S^1) is unital on K0"},
    )
