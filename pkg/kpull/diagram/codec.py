"""JSON codec for pullback families."""

from typing import Any, Dict, List, Optional, Tuple

from kpull.diagram.family import TRIPLE, KMap, PullbackFamily
from kpull.diagram.trace import ExternalFact, fact_from_dict, fact_to_dict, kpair_from_dict, kpair_to_dict
from kpull.shared.errors import DimensionError, SchemaError
from kpull.shared.serialization import hom_from_rows, hom_to_rows, require, split_pair, str_list


def _kmap_to_dict(kmap: KMap) -> Dict[str, Any]:
    return {
        "k0": hom_to_rows(kmap.k0),
        "k1": hom_to_rows(kmap.k1) if kmap.k1 is not None else None,
    }


def family_to_dict(
    fam: PullbackFamily,
    facts: Tuple[ExternalFact, ...] = (),
    order: Optional[Tuple[str, ...]] = None,
) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "kind": "family",
        "name": fam.name,
        "index": list(fam.index),
        "nodes": {key: kpair_to_dict(kp) for key, kp in fam.nodes.items()},
        "arrows": {f"{i}->{pair}": _kmap_to_dict(k) for (i, pair), k in fam.arrows.items()},
        "eta": {pair: _kmap_to_dict(k) for pair, k in fam.etas.items()},
        "cocycle": {"certified": fam.cocycle_certified, "source": fam.cocycle_source},
        "provenance": dict(fam.provenance),
        "notes": dict(fam.notes),
        "facts": [fact_to_dict(f) for f in facts],
    }
    if order is not None:
        doc["order"] = "".join(order)
    return doc


def _kmap_from_dict(data: Any, src, dst, path: str) -> KMap:
    k0 = hom_from_rows(require(data, "k0", path), src.k0, dst.k0, f"{path}.k0")
    rows = data.get("k1")
    k1 = hom_from_rows(rows, src.k1, dst.k1, f"{path}.k1") if rows is not None else None
    return KMap(k0, k1)


def family_from_dict(data: Dict[str, Any], path: str = "$") -> Tuple[PullbackFamily, List[ExternalFact], Optional[str]]:
    """Family, external facts and requested order (or None) from a document."""
    index = str_list(require(data, "index", path), f"{path}.index")

    nodes_doc = require(data, "nodes", path)
    if not isinstance(nodes_doc, dict):
        raise SchemaError("nodes must be an object", f"{path}.nodes")
    nodes = {str(key): kpair_from_dict(v, f"{path}.nodes.{key}") for key, v in nodes_doc.items()}

    arrows = {}
    for key, value in (data.get("arrows") or {}).items():
        apath = f"{path}.arrows.{key}"
        src_key, _, pair = str(key).partition("->")
        if not pair or src_key not in pair:
            raise SchemaError("arrow keys look like '1->12'", apath)
        if src_key not in nodes or pair not in nodes:
            raise SchemaError("arrow endpoint has no K-data", apath)
        arrows[(src_key, pair)] = _kmap_from_dict(value, nodes[src_key], nodes[pair], apath)

    etas = {}
    for pair, value in (data.get("eta") or {}).items():
        epath = f"{path}.eta.{pair}"
        split_pair(pair, index)
        if pair not in nodes or TRIPLE not in nodes:
            raise SchemaError("eta endpoint has no K-data", epath)
        etas[pair] = _kmap_from_dict(value, nodes[pair], nodes[TRIPLE], epath)

    cocycle = data.get("cocycle") or {}
    if not isinstance(cocycle, dict):
        raise SchemaError("cocycle must be an object", f"{path}.cocycle")
    certified = cocycle.get("certified", False)
    if not isinstance(certified, bool):
        raise SchemaError("certified must be true or false", f"{path}.cocycle.certified")

    facts = [fact_from_dict(f, f"{path}.facts[{k}]") for k, f in enumerate(data.get("facts") or [])]
    order = data.get("order")
    if order is not None and not isinstance(order, str):
        raise SchemaError("order is a string such as '123'", f"{path}.order")

    try:
        fam = PullbackFamily(
            name=str(data.get("name", "family")),
            index=tuple(index),
            nodes=nodes,
            arrows=arrows,
            etas=etas,
            cocycle_certified=certified,
            cocycle_source=cocycle.get("source"),
            provenance=dict(data.get("provenance") or {}),
            notes=dict(data.get("notes") or {}),
        )
    except (DimensionError, ValueError) as e:
        raise SchemaError(str(e), path) from e
    return fam, facts, order
