"""
Seeded property harness over random finite models.

Trial k of a run with base seed s uses seed s + k, so a failing trial can
be rerun alone. Results are reported in trial order whatever the number of
worker processes.
"""

import logging
import random
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

from kpull.abgroup import AbelianGroup
from kpull.finmodel.cocycle import cocycle_check, evaluate_clause
from kpull.finmodel.generators import constructive_model, uniform_model
from kpull.finmodel.gluing import glued_space
from kpull.finmodel.model import FiniteGluingModel, model_from_dict, model_to_dict
from kpull.finmodel.oracle import k_pipeline_oracle
from kpull.finmodel.verify import (
    check_distributive,
    eta_maps,
    multipullback_dim,
    verify_quotient_isos,
    verify_rebracketing,
    verify_surjectivity_iterd,
)
from kpull.shared.errors import KpullError

logger = logging.getLogger(__name__)

WITNESS_SAMPLES = 5


@dataclass(frozen=True)
class TrialResult:
    index: int
    seed: int
    generator: str
    sizes: Dict[str, int]
    cocycle: bool
    checks: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[str] = None
    zero_overlaps: Tuple[str, ...] = ()
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        if self.generator == "constructive" and not self.cocycle:
            return False
        return all(self.checks.values())

    @property
    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "seed": self.seed,
            "generator": self.generator,
            "sizes": dict(self.sizes),
            "cocycle": self.cocycle,
            "checks": dict(self.checks),
            "witness": self.witness,
            "zero_overlaps": list(self.zero_overlaps),
            "error": self.error,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class HarnessReport:
    trials: int
    seed: int
    max_size: int
    adversarial: bool
    results: Tuple[TrialResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[TrialResult]:
        return next((r for r in self.results if not r.passed), None)

    @property
    def cocycle_split(self) -> Tuple[int, int]:
        """(models passing the cocycle check, models failing it)."""
        ok = sum(1 for r in self.results if r.cocycle)
        return ok, len(self.results) - ok

    def witness_samples(self, limit: int = WITNESS_SAMPLES) -> List[str]:
        return [f"seed {r.seed}: {r.witness}" for r in self.results if r.witness][:limit]

    def flagged(self) -> int:
        """Models with a zero algebra overlap."""
        return sum(1 for r in self.results if r.zero_overlaps)

    def to_dict(self) -> Dict[str, Any]:
        ok, failed = self.cocycle_split
        first = self.first_failure
        return {
            "kind": "harness",
            "trials": self.trials,
            "seed": self.seed,
            "max_size": self.max_size,
            "generator": "uniform" if self.adversarial else "constructive",
            "passed": self.passed,
            "first_failing_seed": first.seed if first is not None else None,
            "cocycle": {"pass": ok, "fail": failed},
            "zero_overlap_models": self.flagged(),
            "witness_samples": self.witness_samples(),
            "results": [r.to_dict() for r in self.results],
        }


def _verify(model: FiniteGluingModel) -> Dict[str, bool]:
    """Every property a cocycle-passing model must have."""
    space = glued_space(model)
    eta = eta_maps(model)
    kpair = k_pipeline_oracle(model)
    return {
        "dim_matches_glued": multipullback_dim(model) == space.size,
        "rebracketing": verify_rebracketing(model),
        "quotient_isos": verify_quotient_isos(model),
        "surjectivity": verify_surjectivity_iterd(model),
        "eta_lift_independent": eta.lift_independent,
        "eta_commutes": eta.commutes,
        "distributive": check_distributive(model),
        "k_oracle": kpair.k0 == AbelianGroup.free(space.size) and kpair.k1.is_zero(),
    }


def run_trial(seed: int, max_size: int, adversarial: bool = False, index: int = 0) -> TrialResult:
    rng = random.Random(seed)
    generator = "uniform" if adversarial else "constructive"
    model = uniform_model(rng, max_size) if adversarial else constructive_model(rng, max_size)
    sizes = {key: model.size(key) for key in model.index + model.pairs()}

    result = cocycle_check(model)
    checks = {"round_trip": model_from_dict(model_to_dict(model)) == model}
    witness = str(result.witness) if result.witness is not None else None
    error = None
    try:
        if result.ok:
            checks.update(_verify(model))
        else:
            # a reported failure has to fail again when replayed
            checks["witness_reproduces"] = not evaluate_clause(model, result.witness)
    except KpullError as e:
        error = f"{type(e).__name__}: {e}"

    trial = TrialResult(
        index=index,
        seed=seed,
        generator=generator,
        sizes=sizes,
        cocycle=result.ok,
        checks=checks,
        witness=witness,
        zero_overlaps=model.zero_overlaps(),
        error=error,
    )
    if not trial.passed:
        logger.warning("trial %d (seed %d) failed: %s", index, seed, error or ", ".join(trial.failed_checks) or "cocycle")
    return trial


def _run_indexed(args: Tuple[int, int, int, bool]) -> TrialResult:
    index, seed, max_size, adversarial = args
    return run_trial(seed, max_size, adversarial, index)


def run_harness(
    trials: int, seed: int, max_size: int, adversarial: bool = False, workers: int = 1
) -> HarnessReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(k, seed + k, max_size, adversarial) for k in range(trials)]
    logger.info("running %d %s trials from seed %d", trials, "uniform" if adversarial else "constructive", seed)
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.map(_run_indexed, jobs)
    else:
        results = [_run_indexed(job) for job in jobs]
    return HarnessReport(trials, seed, max_size, adversarial, tuple(results))
