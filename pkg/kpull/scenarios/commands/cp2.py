"""
cp2: K-groups of the quantum complex projective plane.

Three Toeplitz squares glued pairwise along T (x) C(S^1). K(P2) is not
determined by the chase alone and comes in as a cited external fact.
"""

from typing import Any, Dict, Optional

from kpull.base import BaseCommand
from kpull.diagram import build_cp2_family, cp2_external_facts, run_pipeline


class Cp2Command(BaseCommand):
    name = "cp2"
    description = "K-groups of C(CP^2_q) by the iterated Mayer-Vietoris pipeline"

    def run(self, external_facts: bool = True, order: Optional[str] = None, **kwargs) -> Dict[str, Any]:
        facts = cp2_external_facts() if external_facts else ()
        outcome = run_pipeline(build_cp2_family(), facts, order)
        return {
            "scenario": self.name,
            "status": outcome.status,
            "kpair": outcome.kpair,
            "trace": outcome.trace,
        }
