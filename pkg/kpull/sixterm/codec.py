"""JSON codec for six-term sequences and solve reports."""

from typing import Any, Dict

from kpull.shared.errors import DimensionError, SchemaError
from kpull.shared.serialization import (
    group_to_dict,
    hom_from_rows,
    hom_to_rows,
    optional_group_from_dict,
    require,
)
from kpull.sixterm.sequence import (
    NODE_NAMES,
    PROVENANCES,
    SixTermSequence,
    SolveReport,
    Step,
)

NODE_KEYS = ("k0_a", "k0_pieces", "k0_overlap", "k1_a", "k1_pieces", "k1_overlap")


def sequence_to_dict(seq: SixTermSequence) -> Dict[str, Any]:
    return {
        "kind": "sequence",
        "labels": list(seq.labels),
        "nodes": {
            key: None if g is None else group_to_dict(g) for key, g in zip(NODE_KEYS, seq.nodes)
        },
        "maps": {
            key: None if f is None else hom_to_rows(f) for key, f in zip(NODE_KEYS, seq.maps)
        },
        "provenance": {key: p for key, p in zip(NODE_KEYS, seq.provenance)},
    }


def sequence_from_dict(data: Dict[str, Any], path: str = "$") -> SixTermSequence:
    nodes_doc = require(data, "nodes", path)
    if not isinstance(nodes_doc, dict):
        raise SchemaError("nodes must be an object", f"{path}.nodes")
    unknown = sorted(set(nodes_doc) - set(NODE_KEYS))
    if unknown:
        raise SchemaError(f"unknown node key '{unknown[0]}'", f"{path}.nodes")
    nodes = tuple(
        optional_group_from_dict(nodes_doc.get(key), f"{path}.nodes.{key}") for key in NODE_KEYS
    )

    maps_doc = data.get("maps") or {}
    if not isinstance(maps_doc, dict):
        raise SchemaError("maps must be an object keyed by source node", f"{path}.maps")
    maps = []
    for i, key in enumerate(NODE_KEYS):
        rows = maps_doc.get(key)
        if rows is None:
            maps.append(None)
            continue
        src, dst = nodes[i], nodes[(i + 1) % 6]
        if src is None or dst is None:
            raise SchemaError("a map needs both endpoint groups", f"{path}.maps.{key}")
        maps.append(hom_from_rows(rows, src, dst, f"{path}.maps.{key}"))

    prov_doc = data.get("provenance")
    provenance = ()
    if prov_doc is not None:
        if not isinstance(prov_doc, dict):
            raise SchemaError("provenance must be an object", f"{path}.provenance")
        provenance = tuple(prov_doc.get(key) for key in NODE_KEYS)
        for key, (g, p) in zip(NODE_KEYS, zip(nodes, provenance)):
            if (g is None) != (p is None) or (p is not None and p not in PROVENANCES):
                raise SchemaError(f"bad provenance {p!r}", f"{path}.provenance.{key}")

    labels = data.get("labels") or list(NODE_NAMES)
    if not isinstance(labels, list) or len(labels) != 6:
        raise SchemaError("labels must list six names", f"{path}.labels")
    try:
        return SixTermSequence(nodes, tuple(maps), provenance, tuple(labels))
    except (DimensionError, ValueError) as e:
        raise SchemaError(str(e), path) from e


def step_to_dict(step: Step) -> Dict[str, Any]:
    return {
        "rule": step.rule,
        "slot": step.slot,
        "value": step.value,
        "premises": list(step.premises),
    }


def step_from_dict(data: Dict[str, Any]) -> Step:
    return Step(data["rule"], data["slot"], data["value"], tuple(data.get("premises", ())))


def report_to_dict(report: SolveReport) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "kind": "report",
        "status": report.status.value,
        "sequence": sequence_to_dict(report.sequence),
        "steps": [step_to_dict(s) for s in report.steps],
        "unresolved": [
            {"slot": b.slot, "reasons": list(b.reasons)} for b in report.unresolved
        ],
        "ambiguities": list(report.ambiguities),
        "witness": None,
    }
    if report.witness is not None:
        w = report.witness
        doc["witness"] = {
            "slot": w.slot,
            "existing": w.existing,
            "derived": w.derived,
            "chain": [step_to_dict(s) for s in w.chain],
        }
    return doc
