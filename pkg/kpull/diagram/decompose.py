"""
Iterated pullback decomposition of a three-piece family.

For the order (a, b, c):

    stage 1   P1   = B_a  x_{B_ab}  B_b
    stage 2   P2   = B_ac x_{B123}  B_bc       (over the eta maps)
    stage 3   B^pi = P1   x_{P2}    B_c       (over gamma and delta)

Each stage is a Mayer-Vietoris six-term problem whose first map is the
difference (x, y) -> f(x) - g(y). Stage 3 can only be written down once
P1 and P2 are known, so decompose_iterated leaves its groups open.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from kpull.abgroup import GroupHom
from kpull.abgroup.normalforms import solve_integer_columns
from kpull.diagram.family import TRIPLE, KMap, KPair, PullbackFamily, pair_key
from kpull.shared.errors import MissingCertificate, MissingData
from kpull.sixterm import SixTermSequence

PULLBACK = "B^pi"


@dataclass(frozen=True)
class StageProblem:
    """One Mayer-Vietoris instance: `pullback` = `left` x_`over` `right`."""

    stage: int
    pullback: str
    left: str
    right: str
    over: str
    sequence: SixTermSequence


@dataclass(frozen=True)
class Decomposition:
    order: Tuple[str, ...]
    stages: Tuple[StageProblem, ...]

    @property
    def single(self) -> bool:
        return len(self.stages) == 1


def stage_labels(pullback: str, left: str, right: str, over: str) -> Tuple[str, ...]:
    return (
        f"K0({pullback})",
        f"K0({left})+K0({right})",
        f"K0({over})",
        f"K1({pullback})",
        f"K1({left})+K1({right})",
        f"K1({over})",
    )


def mayer_vietoris(
    stage: int,
    names: Tuple[str, str, str, str],
    left: KPair,
    right: KPair,
    over: KPair,
    f: KMap,
    g: KMap,
) -> StageProblem:
    """Six-term problem for pullback = left x_over right along f and g."""
    pullback, lname, rname, oname = names
    d0 = GroupHom.hstack(f.k0, -g.k0)
    d1 = GroupHom.hstack(f.k1_or_unknown(left, over), -g.k1_or_unknown(right, over))
    seq = SixTermSequence(
        nodes=(None, d0.domain, over.k0, None, d1.domain, over.k1),
        maps=(None, d0, None, None, d1, None),
        labels=stage_labels(pullback, lname, rname, oname),
    )
    return StageProblem(stage, pullback, lname, rname, oname, seq)


def _require(fam: PullbackFamily, order: Sequence[str]) -> None:
    missing: List[str] = []
    for key in fam.node_keys():
        if key not in fam.nodes:
            missing.append(f"B{key}")
    for i, pair in fam.arrow_keys():
        if (i, pair) not in fam.arrows:
            missing.append(f"pi {i}->{pair}")
    if len(fam.index) == 3:
        for pair in fam.pairs():
            if pair not in fam.etas:
                missing.append(f"eta {pair}->{TRIPLE}")
    if missing:
        raise MissingData(missing)


def resolve_order(fam: PullbackFamily, order: Optional[Sequence[str]]) -> Tuple[str, ...]:
    if order is None:
        return fam.index
    order = tuple(str(i) for i in order)
    if sorted(order) != sorted(fam.index):
        raise ValueError(f"order {''.join(order)} is not a permutation of {''.join(fam.index)}")
    return order


def decompose_iterated(fam: PullbackFamily, order: Optional[Sequence[str]] = None) -> Decomposition:
    """Split fam into its Mayer-Vietoris stages for the given order."""
    order = resolve_order(fam, order)
    if len(fam.index) == 2:
        # two pieces: plain pullback, no triple overlaps to be coherent about
        _require(fam, order)
        a, b = order
        ab = pair_key(a, b)
        only = mayer_vietoris(
            1, (PULLBACK, f"B{a}", f"B{b}", f"B{ab}"),
            fam.node(a), fam.node(b), fam.node(ab), fam.pi(a, b), fam.pi(b, a),
        )
        return Decomposition(order, (only,))

    if not fam.cocycle_certified:
        raise MissingCertificate(
            f"family '{fam.name}' has no cocycle certificate; the iterated decomposition needs one"
        )
    _require(fam, order)
    a, b, c = order
    ab, ac, bc = pair_key(a, b), pair_key(a, c), pair_key(b, c)

    first = mayer_vietoris(
        1, ("P1", f"B{a}", f"B{b}", f"B{ab}"),
        fam.node(a), fam.node(b), fam.node(ab), fam.pi(a, b), fam.pi(b, a),
    )
    second = mayer_vietoris(
        2, ("P2", f"B{ac}", f"B{bc}", f"B{TRIPLE}"),
        fam.node(ac), fam.node(bc), fam.node(TRIPLE), fam.etas[ac], fam.etas[bc],
    )
    third = StageProblem(
        3, PULLBACK, "P1", f"B{c}", "P2",
        SixTermSequence(labels=stage_labels(PULLBACK, "P1", f"B{c}", "P2")),
    )
    return Decomposition(order, (first, second, third))


@dataclass(frozen=True)
class Embedding:
    """Injective K0/K1 maps of a pullback into left + right."""

    k0: Optional[GroupHom]
    k1: Optional[GroupHom]


def _through(embed: Optional[GroupHom], target: GroupHom) -> Optional[GroupHom]:
    """The map h with embed . h = target, when both are known and integral."""
    if embed is None or not target.is_known():
        return None
    if not (embed.domain.is_free() and embed.codomain.is_free() and target.domain.is_free()):
        return None
    X = solve_integer_columns(embed.matrix(), target.matrix())
    if X is None:
        return None
    return GroupHom.from_matrix(target.domain, embed.domain, X)


def _unit_column(src: KPair, dst: KPair) -> GroupHom:
    """Unknown map of K0 groups except that unit goes to unit."""
    f = GroupHom.unknown(src.k0, dst.k0)
    j = src.unit_generator()
    if j is not None and dst.unit is not None:
        f = f.with_column(j, dst.unit)
    return f


def connecting_maps(
    fam: PullbackFamily,
    order: Sequence[str],
    p1: KPair,
    p2: KPair,
    e1: Embedding,
    e2: Embedding,
) -> Tuple[KMap, KMap]:
    """
    gamma_*: K(P1) -> K(P2) and delta_*: K(B_c) -> K(P2).

    Exact when both pullbacks come with embeddings, otherwise unknown
    apart from unit columns.
    """
    a, b, c = order
    node_c = fam.node(c)
    pi_a, pi_b = fam.pi(a, c), fam.pi(b, c)
    pi_ca, pi_cb = fam.pi(c, a), fam.pi(c, b)

    gamma0 = gamma1 = delta1 = None
    if e1.k0 is not None:
        gamma0 = _through(e2.k0, GroupHom.block(pi_a.k0, pi_b.k0).compose(e1.k0))
    delta0 = _through(e2.k0, GroupHom.vstack(pi_ca.k0, pi_cb.k0))

    if e1.k1 is not None and e2.k1 is not None:
        block1 = GroupHom.block(
            pi_a.k1_or_unknown(fam.node(a), fam.node(pair_key(a, c))),
            pi_b.k1_or_unknown(fam.node(b), fam.node(pair_key(b, c))),
        )
        gamma1 = _through(e2.k1, block1.compose(e1.k1))
        delta1 = _through(
            e2.k1,
            GroupHom.vstack(
                pi_ca.k1_or_unknown(node_c, fam.node(pair_key(c, a))),
                pi_cb.k1_or_unknown(node_c, fam.node(pair_key(c, b))),
            ),
        )

    gamma = KMap(gamma0 if gamma0 is not None else _unit_column(p1, p2), gamma1)
    delta = KMap(delta0 if delta0 is not None else _unit_column(node_c, p2), delta1)
    return gamma, delta


def final_stage(
    fam: PullbackFamily,
    order: Sequence[str],
    p1: KPair,
    p2: KPair,
    e1: Embedding,
    e2: Embedding,
) -> StageProblem:
    """Stage 3 once P1 and P2 are known."""
    c = order[2]
    gamma, delta = connecting_maps(fam, order, p1, p2, e1, e2)
    return mayer_vietoris(3, (PULLBACK, "P1", f"B{c}", "P2"), p1, fam.node(c), p2, gamma, delta)
