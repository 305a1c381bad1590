"""
Exact arithmetic of finitely generated abelian groups and their homomorphisms.
"""

from kpull.abgroup.groups import (
    AbelianGroup,
    Presentation,
    direct_sum,
    is_isomorphic,
    normalize,
    parse_group,
    render,
)
from kpull.abgroup.homs import (
    UNKNOWN,
    GroupHom,
    Unknown,
    cokernel,
    image,
    is_injective,
    is_surjective,
    kernel,
    kernel_presented,
)
from kpull.abgroup.matrix import IntMatrix
from kpull.abgroup.normalforms import hermite_normal_form, smith_normal_form

__all__ = [
    "AbelianGroup",
    "GroupHom",
    "IntMatrix",
    "Presentation",
    "UNKNOWN",
    "Unknown",
    "cokernel",
    "direct_sum",
    "hermite_normal_form",
    "image",
    "is_injective",
    "is_isomorphic",
    "is_surjective",
    "kernel",
    "kernel_presented",
    "normalize",
    "parse_group",
    "render",
    "smith_normal_form",
]
