"""
Tests for kpull.sixterm.exactness - image = kernel at every node.
"""

import random
import unittest

from kpull.abgroup import AbelianGroup, GroupHom, IntMatrix, Presentation
from kpull.abgroup.groups import canonical_coordinates
from kpull.abgroup.normalforms import rank
from kpull.shared.errors import UnknownEntryError
from kpull.sixterm import SixTermSequence, Status, check_exactness, solve

ZERO = AbelianGroup.zero()


def short_exact(M: IntMatrix) -> SixTermSequence:
    """0 -> Z^k -M-> Z^n -> coker M -> 0, padded with zeros to six terms."""
    n, k = M.shape
    coords = canonical_coordinates(Presentation(n, M))
    A, B, C = AbelianGroup.free(k), AbelianGroup.free(n), coords.group
    return SixTermSequence(
        nodes=(A, B, C, ZERO, ZERO, ZERO),
        maps=(
            GroupHom.from_matrix(A, B, M),
            GroupHom.from_matrix(B, C, coords.to_canonical),
            GroupHom.zero(C, ZERO),
            GroupHom.zero(ZERO, ZERO),
            GroupHom.zero(ZERO, ZERO),
            GroupHom.zero(ZERO, A),
        ),
    )


class TestCheckExactness(unittest.TestCase):
    """Exactness of fully known sequences and of solver outputs."""

    def test_random_short_exact_sequences(self):
        """Every injective M gives an exact sequence the solver accepts as Solved."""
        rng = random.Random(11)
        checked = 0
        while checked < 150:
            n = rng.randint(1, 3)
            k = rng.randint(0, n)
            M = IntMatrix.from_rows(
                [[rng.randint(-3, 3) for _ in range(k)] for _ in range(n)], cols=k
            )
            if rank(M) != k:
                continue
            seq = short_exact(M)
            self.assertTrue(check_exactness(seq), f"not exact for {M}")
            report = solve(seq)
            self.assertEqual(report.status, Status.SOLVED, f"solver rejects {M}")
            self.assertTrue(check_exactness(report.sequence))
            checked += 1

    def test_image_smaller_than_kernel(self):
        """Z -2-> Z -> 0 fails at the middle node."""
        Z = AbelianGroup.free(1)
        seq = SixTermSequence(
            nodes=(Z, Z, ZERO, ZERO, ZERO, ZERO),
            maps=(
                GroupHom.from_rows(Z, Z, [[2]]),
                GroupHom.zero(Z, ZERO),
                GroupHom.zero(ZERO, ZERO),
                GroupHom.zero(ZERO, ZERO),
                GroupHom.zero(ZERO, ZERO),
                GroupHom.zero(ZERO, Z),
            ),
        )
        result = check_exactness(seq)
        self.assertFalse(result)
        self.assertEqual(result.locus.node, 1)
        self.assertIn("proper subgroup", result.locus.reason)

    def test_composite_not_zero(self):
        """Two identities in a row compose to a nonzero map."""
        Z = AbelianGroup.free(1)
        ident = GroupHom.identity(Z)
        seq = SixTermSequence(
            nodes=(Z, Z, Z, ZERO, ZERO, ZERO),
            maps=(
                ident,
                ident,
                GroupHom.zero(Z, ZERO),
                GroupHom.zero(ZERO, ZERO),
                GroupHom.zero(ZERO, ZERO),
                GroupHom.zero(ZERO, Z),
            ),
        )
        result = check_exactness(seq)
        self.assertFalse(result)
        self.assertEqual(result.locus.node, 1)
        self.assertIn("m1 after m0 is not zero", result.locus.reason)

    def test_requires_known_maps(self):
        """Unknown slots are refused."""
        with self.assertRaises(UnknownEntryError):
            check_exactness(SixTermSequence(nodes=(ZERO,) * 6))


if __name__ == "__main__":
    unittest.main()
