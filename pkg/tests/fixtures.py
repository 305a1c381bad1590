"""
Small hand-built finite gluing models shared by the finmodel tests.
"""

from kpull.finmodel import FiniteGluingModel, Overlap


def build(sets, overlaps=None, name="model"):
    """sets: {label: [elements]}, overlaps: {"12": {label: {point: element}}}."""
    built = {}
    for key, maps in (overlaps or {}).items():
        points = sorted(next(iter(maps.values())))
        built[key] = Overlap(tuple(points), maps)
    return FiniteGluingModel(index=tuple(sets), sets=sets, overlaps=built, name=name)


def triangle():
    """Three two-point sets glued at a single shared point: four glued points."""
    sets = {i: ("a", "b") for i in "123"}
    overlaps = {
        key: {key[0]: {"x": "b"}, key[1]: {"x": "b"}} for key in ("12", "13", "23")
    }
    return build(sets, overlaps, "triangle")


def two_pieces():
    """Two two-point sets sharing one point."""
    return build(
        {"1": ("a", "b"), "2": ("c", "d")},
        {"12": {"1": {"y": "b"}, "2": {"y": "c"}}},
        "two-pieces",
    )


def product():
    """Two two-point sets with nothing in common."""
    return build({"1": ("a", "b"), "2": ("c", "d")}, name="product")


def misplaced_overlap():
    """X_12 sits over the 13-overlap on the 1 side but not on the 2 side."""
    sets = {i: ("p", "q") for i in "123"}
    overlaps = {
        "12": {"1": {"u": "p"}, "2": {"u": "p"}},
        "13": {"1": {"v": "p"}, "3": {"v": "p"}},
        "23": {"2": {"w": "q"}, "3": {"w": "q"}},
    }
    return build(sets, overlaps, "misplaced")


def twisted():
    """Every overlap identifies a with a and b with b, except X_23 -> X_3 swaps them."""
    sets = {i: ("a", "b") for i in "123"}
    straight = {"s": "a", "t": "b"}
    overlaps = {
        "12": {"1": straight, "2": straight},
        "13": {"1": straight, "3": straight},
        "23": {"2": straight, "3": {"s": "b", "t": "a"}},
    }
    return build(sets, overlaps, "twisted")
