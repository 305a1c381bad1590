"""
Tests for kpull.sixterm - the six-term sequence solver.
"""

import random
import unittest

from kpull.abgroup import AbelianGroup, GroupHom, direct_sum, is_surjective
from kpull.shared.errors import DimensionError
from kpull.sixterm import (
    EXTERNAL_FACT,
    GIVEN,
    SOLVED,
    SixTermSequence,
    Status,
    check_exactness,
    solve,
    surjective_for_all_completions,
)
from kpull.sixterm.codec import report_to_dict, sequence_from_dict, sequence_to_dict

Z = AbelianGroup.free(1)
Z2 = AbelianGroup.free(2)
Z3 = AbelianGroup.free(3)
C2 = AbelianGroup.cyclic(2)
ZERO = AbelianGroup.zero()


def pullback_problem(d0: GroupHom, d1: GroupHom) -> SixTermSequence:
    """The Mayer-Vietoris shape: only the middle groups and difference maps are given."""
    return SixTermSequence(
        nodes=(None, d0.domain, d0.codomain, None, d1.domain, d1.codomain),
        maps=(None, d0, None, None, d1, None),
    )


SMALL_GROUPS = (Z, C2, AbelianGroup.cyclic(3), AbelianGroup.cyclic(4))


def exact_piece(rng: random.Random):
    """A small exact six-term sequence, A -id-> A or Z -n-> Z -> Z/n, rotated to a random start."""
    nodes = [ZERO] * 6
    maps = {}
    r = rng.randrange(6)
    if rng.random() < 0.5:
        A = rng.choice(SMALL_GROUPS)
        nodes[r] = nodes[(r + 1) % 6] = A
        maps[r] = GroupHom.identity(A)
    else:
        n = rng.randint(2, 4)
        nodes[r] = nodes[(r + 1) % 6] = Z
        nodes[(r + 2) % 6] = AbelianGroup.cyclic(n)
        maps[r] = GroupHom.from_rows(Z, Z, [[n]])
        maps[(r + 1) % 6] = GroupHom.from_rows(Z, nodes[(r + 2) % 6], [[1]])
    return nodes, [maps[i] if i in maps else GroupHom.zero(nodes[i], nodes[(i + 1) % 6]) for i in range(6)]


def random_exact_sequence(rng: random.Random) -> SixTermSequence:
    """Block sum of one to three exact pieces."""
    pieces = [exact_piece(rng) for _ in range(rng.randint(1, 3))]
    return SixTermSequence(
        nodes=tuple(direct_sum(*(nodes[i] for nodes, _ in pieces)) for i in range(6)),
        maps=tuple(GroupHom.block(*(maps[i] for _, maps in pieces)) for i in range(6)),
    )


def partial(truth: SixTermSequence, known: set, given: set) -> SixTermSequence:
    return SixTermSequence(
        nodes=tuple(g if i in known else None for i, g in enumerate(truth.nodes)),
        maps=tuple(f if i in given else None for i, f in enumerate(truth.maps)),
    )


class TestSolver(unittest.TestCase):
    """Rule chase on hand-built sequences."""

    def test_two_toeplitz_squares_over_a_circle_square(self):
        """(x, y) -> x - y on Z^2 -> Z with K1 pieces 0 solves to K0 = Z^2, K1 = 0."""
        seq = pullback_problem(GroupHom.from_rows(Z2, Z, [[1, -1]]), GroupHom.zero(ZERO, Z))
        report = solve(seq)
        self.assertEqual(report.status, Status.SOLVED)
        self.assertEqual(report.node(0), Z2)
        self.assertEqual(report.node(3), ZERO)
        self.assertEqual(report.sequence.provenance[0], SOLVED)
        self.assertEqual(report.sequence.provenance[1], GIVEN)

    def test_onto_certificate_with_unknown_entries(self):
        """(m, n, l) -> k m + k' n - l is onto for every k, k', so R3 fires."""
        d0 = GroupHom.from_rows(Z3, Z, [["?", "?", -1]])
        self.assertTrue(surjective_for_all_completions(d0))

        report = solve(pullback_problem(d0, GroupHom.zero(ZERO, Z)))
        self.assertEqual(report.status, Status.SOLVED)
        self.assertEqual(report.node(0), Z3)
        self.assertEqual(report.node(3), ZERO)
        self.assertIn("R3", [step.rule for step in report.steps])

    def test_onto_certificate_against_completions(self):
        """100 random completions of k, k' in [-5, 5] are onto by direct SNF."""
        d0 = GroupHom.from_rows(Z3, Z, [["?", "?", -1]])
        rng = random.Random(3)
        for _ in range(100):
            completed = d0.complete([rng.randint(-5, 5), rng.randint(-5, 5)])
            self.assertTrue(is_surjective(completed), f"{completed} is not onto")

    def test_undecided_surjectivity(self):
        """Known columns that do not generate leave surjectivity undecided."""
        self.assertFalse(surjective_for_all_completions(GroupHom.from_rows(Z2, Z, [["?", 2]])))
        self.assertTrue(surjective_for_all_completions(GroupHom.from_rows(Z2, Z, [["?", 1]])))

    def test_onto_certificate_on_random_partial_maps(self):
        """Whenever the certificate holds, random completions are onto by direct SNF."""
        rng = random.Random(5)
        codomains = (Z, Z2, C2, AbelianGroup(1, (2,)), AbelianGroup(0, (2, 4)))
        certified = 0
        for _ in range(400):
            codomain = rng.choice(codomains)
            domain = AbelianGroup.free(rng.randint(1, 4))
            rows = [
                ["?" if rng.random() < 0.35 else rng.randint(-2, 2) for _ in range(domain.generators)]
                for _ in range(codomain.generators)
            ]
            f = GroupHom.from_rows(domain, codomain, rows)
            if not surjective_for_all_completions(f):
                continue
            certified += 1
            holes = len(f.unknown_positions())
            for _ in range(10):
                completed = f.complete([rng.randint(-6, 6) for _ in range(holes)])
                self.assertTrue(is_surjective(completed), f"{f} certified but {completed} is not onto")
        self.assertGreater(certified, 30)

    def test_contradictory_givens(self):
        """Z -2-> Z -> 0 cannot be exact; the witness names the clashing slot."""
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
        report = solve(seq)
        self.assertEqual(report.status, Status.INCONSISTENT)
        self.assertIsNotNone(report.witness)
        self.assertEqual(report.witness.derived, "Z/2")
        self.assertTrue(report.witness.chain)
        self.assertEqual(report.witness.chain[-1].value, "Z/2")

    def test_clashing_external_fact(self):
        """A fact that contradicts the chase turns the report Inconsistent."""
        seq = pullback_problem(GroupHom.from_rows(Z2, Z, [[1, -1]]), GroupHom.zero(ZERO, Z))
        report = solve(seq.with_node(0, Z, EXTERNAL_FACT))
        self.assertEqual(report.status, Status.INCONSISTENT)

    def test_underdetermined(self):
        """A single known node leaves the other five open, each with reasons."""
        report = solve(SixTermSequence(nodes=(Z, None, None, None, None, None)))
        self.assertEqual(report.status, Status.UNDERDETERMINED)
        self.assertEqual(len(report.unresolved), 5)
        for blocker in report.unresolved:
            self.assertTrue(blocker.reasons)
            self.assertIn("maps at", blocker.reasons[0])

    def test_torsion_extension_is_reported(self):
        """Z/2 by Z/2 could be Z/4 or Z/2 + Z/2; the node stays open with a note."""
        seq = SixTermSequence(
            nodes=(None, C2, ZERO, None, ZERO, C2),
            maps=(None, GroupHom.zero(C2, ZERO), None, None, GroupHom.zero(ZERO, C2), None),
        )
        report = solve(seq)
        self.assertEqual(report.status, Status.UNDERDETERMINED)
        self.assertIsNone(report.node(0))
        self.assertTrue(any("not determined" in a for a in report.ambiguities))
        blocker = next(b for b in report.unresolved if b.slot == "K0(A)")
        self.assertTrue(any("torsion quotient" in r for r in blocker.reasons))

    def test_needs_a_known_node(self):
        """An empty sequence is rejected."""
        with self.assertRaises(DimensionError):
            solve(SixTermSequence())

    def test_chain_reaches_givens(self):
        """The derivation of K0(A) goes back to given slots."""
        seq = pullback_problem(GroupHom.from_rows(Z2, Z, [[1, -1]]), GroupHom.zero(ZERO, Z))
        report = solve(seq)
        chain = report.chain("K0(A)")
        self.assertTrue(chain)
        self.assertEqual(chain[-1].slot, "K0(A)")
        self.assertIn("given", {step.rule for step in chain})

    def test_solving_is_deterministic(self):
        """Two solves of the same input give the same report document."""
        seq = pullback_problem(GroupHom.from_rows(Z2, Z, [[1, -1]]), GroupHom.zero(ZERO, Z))
        self.assertEqual(report_to_dict(solve(seq)), report_to_dict(solve(seq)))


class TestSolverProperties(unittest.TestCase):
    """Seeded runs over block sums of small exact sequences."""

    def test_random_sequences_are_exact(self):
        """The generated sequences are exact and solve as given."""
        rng = random.Random(31)
        for _ in range(40):
            truth = random_exact_sequence(rng)
            self.assertTrue(check_exactness(truth), str(truth.nodes))
            self.assertEqual(solve(truth).status, Status.SOLVED)

    def test_more_data_never_unsolves_a_node(self):
        """Revealing nodes and maps one at a time only grows the set of solved nodes, all correct."""
        rng = random.Random(17)
        for trial in range(150):
            truth = random_exact_sequence(rng)
            known = set(rng.sample(range(6), rng.randint(1, 3)))
            given = {i for i in range(6) if {i, (i + 1) % 6} <= known and rng.random() < 0.5}
            hidden = [("node", i) for i in range(6) if i not in known]
            rng.shuffle(hidden)

            before = solve(partial(truth, known, given))
            while True:
                note = f"trial {trial}: nodes {sorted(known)}, maps {sorted(given)}"
                self.assertNotEqual(before.status, Status.INCONSISTENT, note)
                for i in range(6):
                    if before.node(i) is not None:
                        self.assertEqual(before.node(i), truth.nodes[i], note)

                addable = [("map", i) for i in range(6)
                           if i not in given and {i, (i + 1) % 6} <= known]
                if not hidden and not addable:
                    break
                if hidden and (not addable or rng.random() < 0.5):
                    kind, i = hidden.pop()
                else:
                    kind, i = rng.choice(addable)
                if kind == "node":
                    known.add(i)
                else:
                    given.add(i)

                after = solve(partial(truth, known, given))
                for j in range(6):
                    if before.node(j) is not None:
                        self.assertIsNotNone(after.node(j), f"{note}; lost node {j} after adding {kind} {i}")
                if before.solved:
                    self.assertTrue(after.solved, note)
                before = after
            self.assertTrue(before.solved)


class TestSequenceModel(unittest.TestCase):
    """SixTermSequence validation and its JSON form."""

    def test_map_must_match_nodes(self):
        """A map between the wrong groups is rejected."""
        with self.assertRaises(DimensionError):
            SixTermSequence(
                nodes=(Z, Z2, None, None, None, None),
                maps=(GroupHom.identity(Z), None, None, None, None, None),
            )

    def test_map_needs_known_endpoints(self):
        """A map cannot be given when an endpoint group is unknown."""
        with self.assertRaises(DimensionError):
            SixTermSequence(
                nodes=(Z, None, None, None, None, None),
                maps=(GroupHom.identity(Z), None, None, None, None, None),
            )

    def test_document_keeps_unknown_entries(self):
        """Unknown entries travel as '?' and come back as unknown."""
        seq = pullback_problem(GroupHom.from_rows(Z3, Z, [["?", "?", -1]]), GroupHom.zero(ZERO, Z))
        doc = sequence_to_dict(seq)
        self.assertEqual(doc["maps"]["k0_pieces"], [["?", "?", -1]])
        self.assertEqual(sequence_from_dict(doc), seq)


if __name__ == "__main__":
    unittest.main()
