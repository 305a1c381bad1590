"""
Tests for kpull.finmodel.cocycle - the two clauses and their witnesses.
"""

import unittest

from fixtures import build, misplaced_overlap, triangle, twisted, two_pieces

from kpull.finmodel import CocycleWitness, TripleOverlapData, cocycle_check, evaluate_clause


class TestTripleOverlapData(unittest.TestCase):
    """D-sets, T-sets and psi."""

    def test_triangle(self):
        """Every set reduces to the shared point."""
        data = TripleOverlapData(triangle())
        self.assertEqual(data.d_set("1", "2", "3"), frozenset({"x"}))
        self.assertEqual(data.t_set("1", "2", "3"), frozenset({"b"}))
        self.assertEqual(data.psi("1", "2", "3"), {"b": "b"})

    def test_twisted_psi(self):
        """psi through X_23 swaps a and b."""
        data = TripleOverlapData(twisted())
        self.assertEqual(data.psi("2", "3", "1"), {"a": "b", "b": "a"})
        self.assertEqual(data.psi("1", "3", "2"), {"a": "a", "b": "b"})

    def test_disjoint_overlaps(self):
        """Overlaps that never meet give empty D and T sets."""
        model = build(
            {"1": ("p", "q"), "2": ("r",), "3": ("s",)},
            {"12": {"1": {"u": "p"}, "2": {"u": "r"}}, "13": {"1": {"v": "q"}, "3": {"v": "s"}}},
        )
        data = TripleOverlapData(model)
        self.assertEqual(data.d_set("1", "2", "3"), frozenset())
        self.assertEqual(data.t_set("1", "2", "3"), frozenset())
        self.assertTrue(cocycle_check(model).ok)


class TestCocycleCheck(unittest.TestCase):
    """Witnesses for each clause."""

    def test_passing_models(self):
        """The triangle passes; two pieces pass vacuously."""
        self.assertTrue(cocycle_check(triangle()).ok)
        result = cocycle_check(two_pieces())
        self.assertTrue(result)
        self.assertIsNone(result.witness)

    def test_first_clause_witness(self):
        """The point of X_12 over the 13-overlap on one side only."""
        result = cocycle_check(misplaced_overlap())
        self.assertFalse(result.ok)
        witness = result.witness
        self.assertEqual(witness.clause, 1)
        self.assertEqual(witness.triple, ("1", "2", "3"))
        self.assertEqual(witness.element, "u")
        self.assertIn("clause 1", str(witness))
        self.assertFalse(evaluate_clause(misplaced_overlap(), witness))

    def test_second_clause_witness(self):
        """The first clause holds but the composite of psi maps disagrees."""
        result = cocycle_check(twisted())
        self.assertFalse(result.ok)
        witness = result.witness
        self.assertEqual(witness.clause, 2)
        self.assertEqual(witness.triple, ("1", "2", "3"))
        self.assertEqual(witness.element, "a")
        self.assertIn("through X_2", witness.detail)
        self.assertFalse(evaluate_clause(twisted(), witness))

    def test_first_clause_is_checked_first(self):
        """A model failing both clauses reports clause 1."""
        model = build(
            {i: ("a", "b") for i in "123"},
            {
                "12": {"1": {"s": "a", "t": "b"}, "2": {"s": "a", "t": "b"}},
                "13": {"1": {"s": "a", "t": "b"}, "3": {"s": "a", "t": "b"}},
                "23": {"2": {"s": "a"}, "3": {"s": "b"}},
            },
        )
        self.assertEqual(cocycle_check(model).witness.clause, 1)

    def test_evaluate_clause_holds_on_good_models(self):
        """Re-evaluating a clause on a passing model holds."""
        model = triangle()
        self.assertTrue(evaluate_clause(model, CocycleWitness(1, ("1", "2", "3"), "x", "")))
        self.assertTrue(evaluate_clause(model, CocycleWitness(2, ("1", "2", "3"), "b", "")))

    def test_unknown_clause(self):
        """Only clauses 1 and 2 exist."""
        with self.assertRaises(ValueError):
            evaluate_clause(triangle(), CocycleWitness(3, ("1", "2", "3"), "x", ""))


if __name__ == "__main__":
    unittest.main()
