"""
Tests for kpull.finmodel.harness - the seeded property harness.
"""

import unittest

from kpull.finmodel import TrialResult, run_harness, run_trial


class TestRunTrial(unittest.TestCase):
    """Single trials."""

    def test_constructive_trial_passes(self):
        """A constructive model passes every check, round trip included."""
        trial = run_trial(11, 4)
        self.assertTrue(trial.passed, trial.to_dict())
        self.assertTrue(trial.cocycle)
        self.assertEqual(trial.generator, "constructive")
        for name in ("round_trip", "dim_matches_glued", "quotient_isos", "k_oracle"):
            self.assertTrue(trial.checks[name], name)
        self.assertEqual(set(trial.sizes), {"1", "2", "3", "12", "13", "23"})

    def test_trials_are_reproducible(self):
        """The same seed gives the same result."""
        self.assertEqual(run_trial(21, 5, adversarial=True), run_trial(21, 5, adversarial=True))

    def test_constructive_cocycle_failure_fails_the_trial(self):
        """The constructive generator must never produce a cocycle failure."""
        trial = TrialResult(index=0, seed=1, generator="constructive", sizes={}, cocycle=False,
                            checks={"round_trip": True})
        self.assertFalse(trial.passed)

    def test_errors_fail_the_trial(self):
        """A captured error is a failure."""
        trial = TrialResult(index=0, seed=1, generator="uniform", sizes={}, cocycle=True,
                            checks={"round_trip": True}, error="LiftFailure: no preimage")
        self.assertFalse(trial.passed)
        self.assertFalse(trial.to_dict()["passed"])


class TestRunHarness(unittest.TestCase):
    """Whole runs."""

    def test_trial_k_uses_seed_plus_k(self):
        """Trial k of a run equals run_trial(seed + k) on its own."""
        report = run_harness(10, 100, 4)
        self.assertEqual([r.seed for r in report.results], list(range(100, 110)))
        self.assertEqual([r.index for r in report.results], list(range(10)))
        self.assertEqual(report.results[5], run_trial(105, 4, index=5))

    def test_constructive_run_passes(self):
        """Every constructive model passes the cocycle check and all properties."""
        report = run_harness(10, 7, 4)
        self.assertTrue(report.passed)
        self.assertEqual(report.cocycle_split, (10, 0))
        self.assertIsNone(report.first_failure)
        self.assertEqual(report.witness_samples(), [])

    def test_adversarial_run(self):
        """Uniform models split between pass and fail; failures carry reproducible witnesses."""
        report = run_harness(40, 0, 5, adversarial=True)
        self.assertTrue(report.passed, report.first_failure)
        ok, failed = report.cocycle_split
        self.assertEqual(ok + failed, 40)
        self.assertGreater(failed, 0)
        for result in report.results:
            if not result.cocycle:
                self.assertTrue(result.checks["witness_reproduces"])
                self.assertIn("clause", result.witness)
        self.assertLessEqual(len(report.witness_samples()), 5)

    def test_report_document(self):
        """The JSON form names the generator, the split and the first failing seed."""
        doc = run_harness(6, 3, 3, adversarial=True).to_dict()
        self.assertEqual(doc["kind"], "harness")
        self.assertEqual(doc["generator"], "uniform")
        self.assertIsNone(doc["first_failing_seed"])
        self.assertEqual(doc["cocycle"]["pass"] + doc["cocycle"]["fail"], 6)
        self.assertEqual(len(doc["results"]), 6)

    def test_workers_do_not_change_results(self):
        """A process pool reports the same results in the same order."""
        self.assertEqual(run_harness(4, 50, 3, workers=2).results, run_harness(4, 50, 3).results)

    def test_needs_a_trial(self):
        """Zero trials is refused."""
        with self.assertRaises(ValueError):
            run_harness(0, 1, 3)


if __name__ == "__main__":
    unittest.main()
