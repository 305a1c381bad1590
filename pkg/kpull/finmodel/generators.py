"""
Seeded random models.

constructive_model builds a glued space first and cuts the X_i out of it
as subsets, overlaps being intersections; such models satisfy the cocycle
condition by construction. uniform_model picks sizes and injections
uniformly and mostly fails it.
"""

import random
from itertools import combinations
from typing import Dict, List, Sequence

from kpull.diagram.family import pair_key
from kpull.finmodel.model import FiniteGluingModel, Overlap

INDEX = ("1", "2", "3")


def _names(prefix: str, count: int, rng: random.Random) -> List[str]:
    names = [f"{prefix}{n}" for n in range(count)]
    rng.shuffle(names)
    return names


def constructive_model(rng: random.Random, max_size: int, index: Sequence[str] = INDEX) -> FiniteGluingModel:
    universe = list(range(rng.randint(1, 2 * max_size)))
    pieces = {
        i: sorted(rng.sample(universe, rng.randint(1, min(max_size, len(universe)))))
        for i in index
    }
    # element of X_i standing over each point of the universe
    label: Dict[str, Dict[int, str]] = {
        i: dict(zip(points, _names("x", len(points), rng))) for i, points in pieces.items()
    }

    overlaps = {}
    for i, j in combinations(index, 2):
        shared = sorted(set(pieces[i]) & set(pieces[j]))
        names = _names("y", len(shared), rng)
        overlaps[pair_key(i, j)] = Overlap(
            tuple(names),
            {
                i: {y: label[i][p] for y, p in zip(names, shared)},
                j: {y: label[j][p] for y, p in zip(names, shared)},
            },
        )
    return FiniteGluingModel(
        index=tuple(index),
        sets={i: tuple(label[i].values()) for i in index},
        overlaps=overlaps,
        name="constructive",
    )


def uniform_model(rng: random.Random, max_size: int, index: Sequence[str] = INDEX) -> FiniteGluingModel:
    sets = {i: tuple(f"x{n}" for n in range(rng.randint(1, max_size))) for i in index}
    overlaps = {}
    for i, j in combinations(index, 2):
        size = rng.randint(0, min(len(sets[i]), len(sets[j])))
        names = [f"y{n}" for n in range(size)]
        overlaps[pair_key(i, j)] = Overlap(
            tuple(names),
            {
                i: dict(zip(names, rng.sample(sets[i], size))),
                j: dict(zip(names, rng.sample(sets[j], size))),
            },
        )
    return FiniteGluingModel(index=tuple(index), sets=sets, overlaps=overlaps, name="uniform")
