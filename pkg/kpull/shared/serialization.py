"""
JSON/YAML document helpers shared by the codecs.

Groups encode as {"rank": n, "torsion": [d, ...]}, matrices as row-major
lists with the string "?" for unknown entries. Every document carries a
"kind". Output is sorted and indented so reruns are byte-identical.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import yaml

from kpull.abgroup import UNKNOWN, AbelianGroup, GroupHom
from kpull.shared.errors import DimensionError, SchemaError

KINDS = ("sequence", "family", "model", "trace", "report", "harness")


def dump_json(document: Dict[str, Any], indent: int = 2) -> str:
    return json.dumps(document, indent=indent, sort_keys=True) + "\n"


def write_json(path: Path, document: Dict[str, Any], indent: int = 2) -> None:
    Path(path).write_text(dump_json(document, indent))


def load_document(path: Path) -> Dict[str, Any]:
    """Read a JSON or YAML document; parse errors carry the line number."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from e

    if path.suffix.lower() in (".yaml", ".yml"):
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise SchemaError(
                f"invalid YAML: {getattr(e, 'problem', e)}",
                line=mark.line + 1 if mark is not None else None,
            ) from e
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e.msg}", line=e.lineno) from e

    if not isinstance(data, dict):
        raise SchemaError("document must be an object")
    return data


def expect_kind(document: Dict[str, Any], *kinds: str) -> str:
    kind = document.get("kind")
    if kind not in kinds:
        raise SchemaError(f"expected kind {' or '.join(kinds)}, got {kind!r}", "$.kind")
    return kind


def require(mapping: Any, key: str, path: str) -> Any:
    if not isinstance(mapping, dict):
        raise SchemaError("expected an object", path)
    if key not in mapping:
        raise SchemaError(f"missing field '{key}'", path)
    return mapping[key]


def group_to_dict(group: AbelianGroup) -> Dict[str, Any]:
    return {"rank": group.free_rank, "torsion": list(group.torsion)}


def group_from_dict(data: Any, path: str) -> AbelianGroup:
    rank = require(data, "rank", path)
    torsion = data.get("torsion", [])
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise SchemaError("rank must be a non-negative integer", f"{path}.rank")
    if not isinstance(torsion, list) or not all(
        isinstance(d, int) and not isinstance(d, bool) for d in torsion
    ):
        raise SchemaError("torsion must be a list of integers", f"{path}.torsion")
    try:
        return AbelianGroup(rank, tuple(torsion))
    except ValueError as e:
        raise SchemaError(str(e), f"{path}.torsion") from e


def optional_group_from_dict(data: Any, path: str) -> Optional[AbelianGroup]:
    if data is None or data == "?":
        return None
    return group_from_dict(data, path)


def hom_to_rows(hom: GroupHom) -> List[List[Any]]:
    return [["?" if e is UNKNOWN else e for e in row] for row in hom.entries]


def hom_from_rows(
    rows: Any, domain: AbelianGroup, codomain: AbelianGroup, path: str
) -> GroupHom:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("matrix must be a list of rows", path)
    for r, row in enumerate(rows):
        for c, value in enumerate(row):
            if value != "?" and (not isinstance(value, int) or isinstance(value, bool)):
                raise SchemaError(f"entry must be an integer or \"?\", got {value!r}", f"{path}[{r}][{c}]")
    try:
        return GroupHom.from_rows(domain, codomain, rows)
    except (DimensionError, ValueError) as e:
        raise SchemaError(str(e), path) from e


def int_list(data: Any, path: str) -> List[int]:
    if not isinstance(data, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in data
    ):
        raise SchemaError("expected a list of integers", path)
    return list(data)


def str_list(data: Any, path: str) -> List[str]:
    if not isinstance(data, list) or not all(isinstance(v, str) for v in data):
        raise SchemaError("expected a list of strings", path)
    return list(data)


def split_pair(key: str, labels: Sequence[str]) -> tuple:
    for a in labels:
        for b in labels:
            if a < b and a + b == key:
                return a, b
    raise SchemaError(f"'{key}' is not a pair of {list(labels)}")
