"""
Derivation traces of pipeline runs, their JSON form and replay.

A trace records, for every solve the pipeline performed, the exact input
sequence (facts already injected) and the report. Replaying re-solves each
recorded input and demands an identical report.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

from kpull.diagram.family import KPair
from kpull.shared.errors import KpullError, SchemaError
from kpull.shared.serialization import (
    group_from_dict,
    group_to_dict,
    int_list,
    require,
)
from kpull.sixterm import SixTermSequence, SolveReport, Status, solve
from kpull.sixterm.codec import report_to_dict, sequence_from_dict, sequence_to_dict


class ReplayMismatch(KpullError):
    """A recorded stage does not reproduce."""


@dataclass(frozen=True)
class ExternalFact:
    """K-groups of a stage pullback taken from the literature."""

    node: str
    kpair: KPair
    citation: str


@dataclass(frozen=True)
class TraceEntry:
    stage: int
    pullback: str
    left: str
    right: str
    over: str
    sequence: SixTermSequence
    report: SolveReport
    facts: Tuple[ExternalFact, ...] = ()


@dataclass(frozen=True)
class DerivationTrace:
    family: str
    order: Tuple[str, ...]
    entries: Tuple[TraceEntry, ...]
    status: Status
    result: Optional[KPair] = None
    failed_stage: Optional[int] = None
    cocycle_source: Optional[str] = None
    facts: Tuple[ExternalFact, ...] = ()

    def stage_result(self, pullback: str) -> Optional[KPair]:
        """Last solved K-pair recorded for a stage pullback ("P1", "P2", "B^pi")."""
        for entry in reversed(self.entries):
            if entry.pullback == pullback and entry.report.solved:
                nodes = entry.report.sequence.nodes
                return KPair(nodes[0], nodes[3])
        return None


def kpair_to_dict(kpair: KPair) -> Dict[str, Any]:
    doc = {"k0": group_to_dict(kpair.k0), "k1": group_to_dict(kpair.k1)}
    if kpair.unit is not None:
        doc["unit"] = list(kpair.unit)
    return doc


def kpair_from_dict(data: Any, path: str) -> KPair:
    k0 = group_from_dict(require(data, "k0", path), f"{path}.k0")
    k1 = group_from_dict(require(data, "k1", path), f"{path}.k1")
    unit = data.get("unit")
    if unit is not None:
        unit = tuple(int_list(unit, f"{path}.unit"))
        if len(unit) != k0.generators:
            raise SchemaError("unit length must match the K0 generators", f"{path}.unit")
    return KPair(k0, k1, unit)


def fact_to_dict(fact: ExternalFact) -> Dict[str, Any]:
    doc = kpair_to_dict(fact.kpair)
    doc.update({"node": fact.node, "citation": fact.citation})
    return doc


def fact_from_dict(data: Any, path: str) -> ExternalFact:
    node = require(data, "node", path)
    citation = data.get("citation", "")
    if not isinstance(node, str):
        raise SchemaError("node must be a string", f"{path}.node")
    if not isinstance(citation, str):
        raise SchemaError("citation must be a string", f"{path}.citation")
    return ExternalFact(node, kpair_from_dict(data, path), citation)


def trace_to_dict(trace: DerivationTrace) -> Dict[str, Any]:
    return {
        "kind": "trace",
        "family": trace.family,
        "order": "".join(trace.order),
        "status": trace.status.value,
        "result": kpair_to_dict(trace.result) if trace.result is not None else None,
        "failed_stage": trace.failed_stage,
        "cocycle_source": trace.cocycle_source,
        "facts": [fact_to_dict(f) for f in trace.facts],
        "stages": [
            {
                "stage": e.stage,
                "pullback": e.pullback,
                "facts": [fact_to_dict(f) for f in e.facts],
                "input": sequence_to_dict(e.sequence),
                "report": report_to_dict(e.report),
            }
            for e in trace.entries
        ],
    }


def replay_trace(trace: Union[DerivationTrace, Dict[str, Any]]) -> Optional[KPair]:
    """Re-solve every recorded stage; returns the recorded result if all reproduce."""
    doc = trace_to_dict(trace) if isinstance(trace, DerivationTrace) else trace
    if doc.get("kind") != "trace":
        raise SchemaError("expected kind trace", "$.kind")

    stages = require(doc, "stages", "$")
    if not isinstance(stages, list):
        raise SchemaError("stages must be a list", "$.stages")
    for k, stage in enumerate(stages):
        path = f"$.stages[{k}]"
        seq = sequence_from_dict(require(stage, "input", path), f"{path}.input")
        replayed = report_to_dict(solve(seq))
        if replayed != require(stage, "report", path):
            raise ReplayMismatch(
                f"stage {stage.get('stage')} ({stage.get('pullback')}) does not reproduce"
            )

    result = doc.get("result")
    return kpair_from_dict(result, "$.result") if result is not None else None
