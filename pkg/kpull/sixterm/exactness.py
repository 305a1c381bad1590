"""
Exactness check for fully known six-term sequences.

At each node the lift of im m_{i-1} and the lift of ker m_i to Z^n are
compared as lattices; both contain the node's relations, so equality of
their canonical bases is equality of subgroups.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from kpull.abgroup.homs import image_lattice, kernel_lattice, lattice_contains
from kpull.sixterm.sequence import SixTermSequence, map_name
from kpull.shared.errors import UnknownEntryError


@dataclass(frozen=True)
class ExactnessFailure:
    node: int
    label: str
    reason: str


@dataclass(frozen=True)
class ExactnessResult:
    exact: bool
    failures: Tuple[ExactnessFailure, ...] = ()

    @property
    def locus(self) -> Optional[ExactnessFailure]:
        return self.failures[0] if self.failures else None

    def __bool__(self) -> bool:
        return self.exact


def check_exactness(seq: SixTermSequence) -> ExactnessResult:
    """image = kernel at all six nodes of a fully known sequence."""
    if not seq.is_fully_known():
        raise UnknownEntryError("check_exactness needs every node and map known")

    failures = []
    for i in range(6):
        incoming = seq.maps[(i - 1) % 6]
        outgoing = seq.maps[i]
        im = image_lattice(incoming)
        ker = kernel_lattice(outgoing)
        if im == ker:
            continue
        if lattice_contains(ker, im):
            reason = f"image of {map_name(i - 1)} is a proper subgroup of ker {map_name(i)}"
        elif lattice_contains(im, ker):
            reason = f"{map_name(i)} after {map_name(i - 1)} is not zero"
        else:
            reason = f"image of {map_name(i - 1)} and kernel of {map_name(i)} are incomparable"
        failures.append(ExactnessFailure(i, seq.labels[i], reason))
    return ExactnessResult(not failures, tuple(failures))
