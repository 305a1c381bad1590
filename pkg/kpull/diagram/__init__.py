"""
K-level pullback families, their iterated decomposition and the chained
Mayer-Vietoris pipeline.
"""

from kpull.diagram.decompose import Decomposition, StageProblem, decompose_iterated
from kpull.diagram.family import KMap, KPair, PullbackFamily
from kpull.diagram.pipeline import PipelineResult, run_pipeline
from kpull.diagram.scenarios import build_cp2_family, build_mirror_family, cp2_external_facts
from kpull.diagram.trace import DerivationTrace, ExternalFact, replay_trace, trace_to_dict

__all__ = [
    "Decomposition",
    "DerivationTrace",
    "ExternalFact",
    "KMap",
    "KPair",
    "PipelineResult",
    "PullbackFamily",
    "StageProblem",
    "build_cp2_family",
    "build_mirror_family",
    "cp2_external_facts",
    "decompose_iterated",
    "replay_trace",
    "run_pipeline",
    "trace_to_dict",
]
