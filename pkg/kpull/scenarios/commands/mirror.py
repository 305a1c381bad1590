"""mirror: the mirror quantum sphere, a single pullback of Toeplitz algebras."""

from typing import Any, Dict

from kpull.base import BaseCommand
from kpull.diagram import build_mirror_family, run_pipeline


class MirrorCommand(BaseCommand):
    name = "mirror"
    description = "K-groups of the mirror quantum sphere"

    def run(self, **kwargs) -> Dict[str, Any]:
        outcome = run_pipeline(build_mirror_family())
        return {
            "scenario": self.name,
            "status": outcome.status,
            "kpair": outcome.kpair,
            "trace": outcome.trace,
        }
