"""
Finite gluing models.

A model is a family of finite sets X_i with, for every unordered pair, a
shared overlap set X_ij and injections X_ij -> X_i, X_ij -> X_j. It stands
for the family of restriction maps C(X_i) -> C(X_ij), which are onto
because the injections are. Element labels are strings and every
iteration is in sorted order.
"""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, Tuple

from kpull.diagram.family import TRIPLE, pair_key
from kpull.shared.errors import SchemaError
from kpull.shared.serialization import require, str_list


@dataclass(frozen=True)
class Overlap:
    """X_ij with its two injections, keyed by the index label they land in."""

    points: Tuple[str, ...]
    maps: Mapping[str, Mapping[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(set(self.points))))
        object.__setattr__(
            self, "maps", {label: dict(sorted(m.items())) for label, m in sorted(self.maps.items())}
        )

    def embed(self, label: str, point: str) -> str:
        return self.maps[label][point]

    def image(self, label: str) -> FrozenSet[str]:
        return frozenset(self.maps[label].values())

    def preimage(self, label: str, elements) -> Tuple[str, ...]:
        """Points whose image in X_label lies in `elements`."""
        target = set(elements)
        return tuple(p for p in self.points if self.maps[label][p] in target)

    def inverse(self, label: str) -> Dict[str, str]:
        return {x: p for p, x in self.maps[label].items()}


@dataclass(frozen=True)
class FiniteGluingModel:
    index: Tuple[str, ...]
    sets: Mapping[str, Tuple[str, ...]]
    overlaps: Mapping[str, Overlap] = field(default_factory=dict)
    name: str = "model"

    def __post_init__(self):
        index = tuple(sorted(self.index))
        if len(index) not in (2, 3) or len(set(index)) != len(index) or not set(index) <= set(TRIPLE):
            raise ValueError(f"index set must be 2 or 3 distinct labels from 1, 2, 3, got {self.index}")
        object.__setattr__(self, "index", index)

        if set(self.sets) != set(index):
            raise ValueError(f"sets must be given for exactly {', '.join(index)}")
        object.__setattr__(self, "sets", {i: tuple(sorted(set(self.sets[i]))) for i in index})

        overlaps = dict(self.overlaps)
        for key in overlaps:
            if key not in self.pairs():
                raise ValueError(f"unexpected overlap '{key}' for index {index}")
        for i, j in combinations(index, 2):
            key = pair_key(i, j)
            if key not in overlaps or not (overlaps[key].points or any(overlaps[key].maps.values())):
                overlaps[key] = Overlap((), {i: {}, j: {}})
        object.__setattr__(self, "overlaps", {key: overlaps[key] for key in self.pairs()})

        for i, j in combinations(index, 2):
            self._check_overlap(i, j)

    def _check_overlap(self, i: str, j: str) -> None:
        key = pair_key(i, j)
        overlap = self.overlaps[key]
        if set(overlap.maps) != {i, j}:
            raise ValueError(f"overlap {key} needs maps into {i} and {j}")
        for label in (i, j):
            m = overlap.maps[label]
            if set(m) != set(overlap.points):
                raise ValueError(f"map {key} -> {label} must be defined on every point of X_{key}")
            stray = sorted(set(m.values()) - set(self.sets[label]))
            if stray:
                raise ValueError(f"map {key} -> {label} hits {stray[0]}, which is not in X_{label}")
            if len(set(m.values())) != len(m):
                raise ValueError(f"map {key} -> {label} is not injective")

    def pairs(self) -> Tuple[str, ...]:
        return tuple(pair_key(i, j) for i, j in combinations(self.index, 2))

    def triples(self) -> Iterator[Tuple[str, str, str]]:
        """Ordered triples of distinct labels, in sorted order."""
        if len(self.index) == 3:
            yield from permutations(self.index)

    def overlap(self, i: str, j: str) -> Overlap:
        return self.overlaps[pair_key(i, j)]

    def embedding(self, i: str, j: str) -> Mapping[str, str]:
        """iota^i_j : X_ij -> X_i as a dict."""
        return self.overlap(i, j).maps[i]

    def size(self, key: str) -> int:
        if key in self.sets:
            return len(self.sets[key])
        return len(self.overlaps[key].points)

    def variables(self) -> List[Tuple[str, str]]:
        """(label, element) coordinates of the product of the B_i."""
        return [(i, x) for i in self.index for x in self.sets[i]]

    def zero_overlaps(self) -> Tuple[str, ...]:
        """Pairs whose overlap algebra is the zero algebra."""
        return tuple(key for key in self.pairs() if not self.overlaps[key].points)


def model_to_dict(model: FiniteGluingModel) -> Dict[str, Any]:
    return {
        "kind": "model",
        "name": model.name,
        "index": list(model.index),
        "sets": {i: list(xs) for i, xs in model.sets.items()},
        "overlaps": {
            key: {
                "points": list(o.points),
                "maps": {label: dict(m) for label, m in o.maps.items()},
            }
            for key, o in model.overlaps.items()
        },
    }


def _string_map(data: Any, path: str) -> Dict[str, str]:
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise SchemaError("expected an object of string labels", path)
    return dict(data)


def model_from_dict(data: Dict[str, Any], path: str = "$") -> FiniteGluingModel:
    index = str_list(require(data, "index", path), f"{path}.index")
    sets_doc = require(data, "sets", path)
    if not isinstance(sets_doc, dict):
        raise SchemaError("sets must be an object", f"{path}.sets")
    sets = {str(i): tuple(str_list(xs, f"{path}.sets.{i}")) for i, xs in sets_doc.items()}

    overlaps = {}
    for key, value in (data.get("overlaps") or {}).items():
        opath = f"{path}.overlaps.{key}"
        points = str_list(require(value, "points", opath), f"{opath}.points")
        maps_doc = require(value, "maps", opath)
        if not isinstance(maps_doc, dict):
            raise SchemaError("maps must be an object", f"{opath}.maps")
        maps = {str(label): _string_map(m, f"{opath}.maps.{label}") for label, m in maps_doc.items()}
        overlaps[str(key)] = Overlap(tuple(points), maps)

    try:
        return FiniteGluingModel(
            index=tuple(index), sets=sets, overlaps=overlaps, name=str(data.get("name", "model"))
        )
    except ValueError as e:
        raise SchemaError(str(e), path) from e
