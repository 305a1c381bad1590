"""
solve: run the engine on a user document.

A "sequence" document goes straight to the six-term solver, a "family"
through the pipeline (with its facts and order), a "trace" is replayed and
a "model" is checked and sent through the pipeline oracle.
"""

from pathlib import Path
from typing import Any, Dict, Optional

from kpull.base import BaseCommand
from kpull.diagram import replay_trace, run_pipeline
from kpull.diagram.codec import family_from_dict
from kpull.finmodel import cocycle_check, glued_space, k_pipeline_oracle, model_from_dict
from kpull.shared.errors import SchemaError
from kpull.shared.serialization import expect_kind, load_document
from kpull.sixterm import Status, solve
from kpull.sixterm.codec import sequence_from_dict


class SolveCommand(BaseCommand):
    name = "solve"
    description = "Solve a six-term sequence, family, trace or finite model document"

    def run(self, path: Path = None, order: Optional[str] = None, **kwargs) -> Dict[str, Any]:
        document = load_document(path)
        kind = expect_kind(document, "sequence", "family", "trace", "model")
        handler = getattr(self, f"_solve_{kind}")
        result = handler(document, order)
        result.update({"scenario": self.name, "kind": kind, "source": str(path)})
        return result

    def _solve_sequence(self, document: Dict[str, Any], order: Optional[str]) -> Dict[str, Any]:
        report = solve(sequence_from_dict(document))
        return {"status": report.status, "report": report}

    def _solve_family(self, document: Dict[str, Any], order: Optional[str]) -> Dict[str, Any]:
        family, facts, doc_order = family_from_dict(document)
        outcome = run_pipeline(family, facts, order or doc_order)
        return {"status": outcome.status, "kpair": outcome.kpair, "trace": outcome.trace}

    def _solve_trace(self, document: Dict[str, Any], order: Optional[str]) -> Dict[str, Any]:
        kpair = replay_trace(document)
        try:
            status = Status(document.get("status", Status.SOLVED.value))
        except ValueError as e:
            raise SchemaError(str(e), "$.status") from e
        return {"status": status, "kpair": kpair, "replayed": True}

    def _solve_model(self, document: Dict[str, Any], order: Optional[str]) -> Dict[str, Any]:
        model = model_from_dict(document)
        check = cocycle_check(model)
        result: Dict[str, Any] = {
            "cocycle": check,
            "glued_size": glued_space(model).size,
            "zero_overlaps": model.zero_overlaps(),
        }
        if not check.ok:
            result.update({"status": Status.INCONSISTENT, "kpair": None})
            return result
        result.update({"status": Status.SOLVED, "kpair": k_pipeline_oracle(model)})
        return result
