"""Finite gluing models: function algebras on finite sets as exact oracles."""

from kpull.finmodel.cocycle import CocycleResult, CocycleWitness, TripleOverlapData, cocycle_check, evaluate_clause
from kpull.finmodel.generators import constructive_model, uniform_model
from kpull.finmodel.gluing import DisjointSet, GluedSpace, glued_space
from kpull.finmodel.harness import HarnessReport, TrialResult, run_harness, run_trial
from kpull.finmodel.model import FiniteGluingModel, Overlap, model_from_dict, model_to_dict
from kpull.finmodel.oracle import family_from_model, k_pipeline_oracle
from kpull.finmodel.verify import (
    EtaMaps,
    check_distributive,
    eta_maps,
    multipullback_dim,
    verify_canonical_form,
    verify_quotient_isos,
    verify_rebracketing,
    verify_surjectivity_iterd,
)

__all__ = [
    "CocycleResult",
    "CocycleWitness",
    "DisjointSet",
    "EtaMaps",
    "FiniteGluingModel",
    "GluedSpace",
    "HarnessReport",
    "Overlap",
    "TrialResult",
    "TripleOverlapData",
    "check_distributive",
    "cocycle_check",
    "constructive_model",
    "evaluate_clause",
    "eta_maps",
    "family_from_model",
    "glued_space",
    "k_pipeline_oracle",
    "model_from_dict",
    "model_to_dict",
    "multipullback_dim",
    "run_harness",
    "run_trial",
    "uniform_model",
    "verify_canonical_form",
    "verify_quotient_isos",
    "verify_rebracketing",
    "verify_surjectivity_iterd",
]
