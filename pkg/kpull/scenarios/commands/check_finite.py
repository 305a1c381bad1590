"""check-finite: the seeded finite-model property harness."""

from typing import Any, Dict, Optional

from kpull.base import BaseCommand
from kpull.finmodel import run_harness


class CheckFiniteCommand(BaseCommand):
    name = "check-finite"
    description = "Check the gluing lemmas and the pipeline on random finite models"

    def run(
        self,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        max_size: Optional[int] = None,
        adversarial: bool = False,
        workers: Optional[int] = None,
        **kwargs,
    ) -> Dict[str, Any]:
        settings = self.settings.override(trials=trials, seed=seed, max_size=max_size, workers=workers)
        report = run_harness(
            settings.trials, settings.seed, settings.max_size, adversarial, settings.workers
        )
        return {"scenario": self.name, "harness": report}
