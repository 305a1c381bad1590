"""
The chained Mayer-Vietoris computation of K(B^pi).

Stage 1 gives K(P1), stage 2 gives K(P2) (or takes it from a cited
external fact when the chase alone cannot), stage 3 combines both with
K(B_c). Families with two pieces run a single stage.
"""

import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from kpull.diagram.decompose import (
    PULLBACK,
    Embedding,
    StageProblem,
    decompose_iterated,
    final_stage,
)
from kpull.diagram.family import KPair, PullbackFamily
from kpull.diagram.trace import DerivationTrace, ExternalFact, TraceEntry
from kpull.shared.errors import CitationRequired
from kpull.sixterm import EXTERNAL_FACT, SolveReport, Status, solve

logger = logging.getLogger(__name__)


class PipelineResult(NamedTuple):
    kpair: Optional[KPair]
    trace: DerivationTrace

    @property
    def status(self) -> Status:
        return self.trace.status


def _check_facts(facts: Sequence[ExternalFact], stage_names: Sequence[str]) -> Dict[str, ExternalFact]:
    by_node: Dict[str, ExternalFact] = {}
    for fact in facts:
        if not fact.citation or not fact.citation.strip():
            raise CitationRequired(f"external fact for {fact.node} has no citation")
        if fact.node not in stage_names:
            raise ValueError(f"external fact names {fact.node}; stages are {', '.join(stage_names)}")
        if fact.node in by_node:
            raise ValueError(f"two external facts for {fact.node}")
        by_node[fact.node] = fact
    return by_node


def _embedding(report: SolveReport) -> Embedding:
    """The solved inclusions of the pullback, where the chase produced them."""
    seq = report.sequence
    images = report.images

    def injective(node: int) -> bool:
        im = images[node]
        return im is not None and im.is_zero()

    k0 = seq.maps[0] if seq.maps[0] is not None and seq.maps[0].is_known() and injective(0) else None
    k1 = seq.maps[3] if seq.maps[3] is not None and seq.maps[3].is_known() and injective(3) else None
    return Embedding(k0, k1)


def _run_stage(
    problem: StageProblem, fact: Optional[ExternalFact], entries: List[TraceEntry]
) -> SolveReport:
    logger.info("stage %d: solving for %s", problem.stage, problem.pullback)
    report = solve(problem.sequence)
    entries.append(TraceEntry(
        problem.stage, problem.pullback, problem.left, problem.right, problem.over, problem.sequence, report
    ))
    if fact is None or report.status is Status.INCONSISTENT:
        return report

    logger.info(
        "stage %d: injecting %s = (%s, %s) from %s",
        problem.stage, fact.node, fact.kpair.k0, fact.kpair.k1, fact.citation,
    )
    seq = problem.sequence.with_node(0, fact.kpair.k0, EXTERNAL_FACT)
    seq = seq.with_node(3, fact.kpair.k1, EXTERNAL_FACT)
    report = solve(seq)
    entries.append(TraceEntry(
        problem.stage, problem.pullback, problem.left, problem.right, problem.over, seq, report, (fact,)
    ))
    return report


def _stage_pair(report: SolveReport, fact: Optional[ExternalFact]) -> KPair:
    nodes = report.sequence.nodes
    unit = fact.kpair.unit if fact is not None else None
    return KPair(nodes[0], nodes[3], unit)


def run_pipeline(
    fam: PullbackFamily,
    external_facts: Sequence[ExternalFact] = (),
    order: Optional[Sequence[str]] = None,
) -> PipelineResult:
    """K-groups of the multi-pullback of fam, with the full derivation trace."""
    decomposition = decompose_iterated(fam, order)
    names = [s.pullback for s in decomposition.stages]
    facts = _check_facts(external_facts, names)
    entries: List[TraceEntry] = []

    def finish(status: Status, result: Optional[KPair] = None, failed: Optional[int] = None) -> PipelineResult:
        trace = DerivationTrace(
            family=fam.name,
            order=decomposition.order,
            entries=tuple(entries),
            status=status,
            result=result,
            failed_stage=failed,
            cocycle_source=fam.cocycle_source,
            facts=tuple(external_facts),
        )
        if status is Status.SOLVED:
            logger.info("%s: %s", fam.name, result)
        else:
            logger.info("%s: %s at stage %s", fam.name, status.value, failed)
        return PipelineResult(result, trace)

    solved: Dict[str, Tuple[KPair, Embedding]] = {}
    for problem in decomposition.stages:
        if problem.stage == 3:
            p1, e1 = solved["P1"]
            p2, e2 = solved["P2"]
            problem = final_stage(fam, decomposition.order, p1, p2, e1, e2)
        fact = facts.get(problem.pullback)
        report = _run_stage(problem, fact, entries)
        if not report.solved:
            return finish(report.status, failed=problem.stage)
        solved[problem.pullback] = (_stage_pair(report, fact), _embedding(report))

    result, _ = solved[PULLBACK]
    return finish(Status.SOLVED, result)
