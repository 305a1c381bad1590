"""
Tests for the __main__ module - kpull CLI entry point.
"""

import json
import unittest
from pathlib import Path

import yaml
from click.testing import CliRunner

from fixtures import triangle, twisted

from kpull import __version__
from kpull.__main__ import cli
from kpull.abgroup import AbelianGroup, GroupHom
from kpull.diagram import build_cp2_family, cp2_external_facts
from kpull.diagram.codec import family_to_dict
from kpull.finmodel import model_to_dict
from kpull.sixterm import SixTermSequence
from kpull.sixterm.codec import sequence_to_dict

Z = AbelianGroup.free(1)
ZERO = AbelianGroup.zero()


def difference_sequence() -> dict:
    """Z^2 -> Z, (x, y) -> x - y, with vanishing K1 pieces."""
    d0 = GroupHom.from_rows(AbelianGroup.free(2), Z, [[1, -1]])
    d1 = GroupHom.zero(ZERO, Z)
    seq = SixTermSequence(
        nodes=(None, d0.domain, d0.codomain, None, d1.domain, d1.codomain),
        maps=(None, d0, None, None, d1, None),
    )
    return sequence_to_dict(seq)


class TestCli(unittest.TestCase):
    """Subcommands, output and exit codes."""

    def setUp(self):
        """Runner for each test."""
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args), catch_exceptions=False)

    def test_version(self):
        """--version prints the package version."""
        result = self.invoke("--version")
        self.assertEqual(result.exit_code, 0)
        self.assertIn(__version__, result.output)

    def test_cp2(self):
        """Solved with K0 = Z^3 and the stage 1 trace line."""
        result = self.invoke("cp2")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("✅ Solved: K0 = Z^3, K1 = 0", result.output)
        self.assertIn("stage 1  P1 = B1 x_B12 B2: K0 = Z^2, K1 = 0", result.output)
        self.assertIn("with P2 from [Section 3, hms]", result.output)
        self.assertIn("cocycle certificate: [pmh, Lemma 3.2]", result.output)

    def test_cp2_without_facts(self):
        """Underdetermined exits 2 and names the open slots."""
        result = self.invoke("cp2", "--no-external-facts")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("Underdetermined", result.output)
        self.assertIn("unresolved", result.output)

    def test_cp2_orders(self):
        """Every order gives the same summary."""
        for order in ("123", "231", "321"):
            result = self.invoke("cp2", "--order", order)
            self.assertEqual(result.exit_code, 0, order)
            self.assertIn("K0 = Z^3, K1 = 0", result.output)

    def test_mirror(self):
        """K0 = Z^2, K1 = 0."""
        result = self.invoke("mirror")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("Solved: K0 = Z^2, K1 = 0", result.output)
        self.assertIn("stage 1  B^pi = B1 x_B12 B2: K0 = Z^2, K1 = 0", result.output)

    def test_json_output(self):
        """--json prints one result document."""
        result = self.invoke("cp2", "--json")
        self.assertEqual(result.exit_code, 0)
        doc = json.loads(result.output)
        self.assertEqual(doc["kind"], "result")
        self.assertEqual(doc["status"], "Solved")
        self.assertEqual(doc["result"]["k0"], {"rank": 3, "torsion": []})
        self.assertEqual(doc["trace"]["kind"], "trace")

    def test_trace_files_are_byte_identical(self):
        """Two runs write the same trace file."""
        with self.runner.isolated_filesystem():
            self.invoke("cp2", "--trace", "a.json")
            self.invoke("cp2", "--trace", "b.json")
            self.assertEqual(Path("a.json").read_bytes(), Path("b.json").read_bytes())

    def test_check_finite(self):
        """A small constructive run passes."""
        result = self.invoke("check-finite", "--trials", "5", "--max-size", "3", "--seed", "1")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("5/5 trials passed", result.output)
        self.assertIn("cocycle check: 5 pass, 0 fail", result.output)

    def test_check_finite_singletons(self):
        """One trial with one-point pieces."""
        result = self.invoke("check-finite", "--trials", "1", "--seed", "7", "--max-size", "1")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("1/1 trials passed", result.output)

    def test_check_finite_json(self):
        """--json prints the harness document."""
        result = self.invoke("check-finite", "--trials", "4", "--max-size", "3", "--adversarial", "--json")
        self.assertEqual(result.exit_code, 0)
        doc = json.loads(result.output)
        self.assertEqual(doc["kind"], "harness")
        self.assertEqual(doc["generator"], "uniform")
        self.assertEqual(len(doc["results"]), 4)


class TestSolveCommand(unittest.TestCase):
    """kpull solve on each document kind."""

    def setUp(self):
        """Runner for each test."""
        self.runner = CliRunner()

    def solve(self, name, document, *args):
        text = yaml.safe_dump(document) if name.endswith(".yaml") else json.dumps(document)
        Path(name).write_text(text)
        return self.runner.invoke(cli, ["solve", name, *args], catch_exceptions=False)

    def test_sequence_json_and_yaml(self):
        """A sequence document solves the same from JSON and YAML."""
        with self.runner.isolated_filesystem():
            for name in ("seq.json", "seq.yaml"):
                result = self.solve(name, difference_sequence())
                self.assertEqual(result.exit_code, 0, result.output)
                self.assertIn("Solved: K0 = Z^2, K1 = 0", result.output)

    def test_empty_groups(self):
        """All-zero groups solve to the zero K-pair."""
        zero = GroupHom.zero(ZERO, ZERO)
        seq = SixTermSequence(nodes=(ZERO,) * 6, maps=(zero,) * 6)
        with self.runner.isolated_filesystem():
            result = self.solve("zero.json", sequence_to_dict(seq))
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertIn("Solved: K0 = 0, K1 = 0", result.output)

    def test_contradictory_givens(self):
        """Z -2-> Z -> 0 given as exact is Inconsistent."""
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
        with self.runner.isolated_filesystem():
            result = self.solve("bad.json", sequence_to_dict(seq), "--json")
            self.assertEqual(result.exit_code, 3)
            self.assertEqual(json.loads(result.output)["status"], "Inconsistent")

    def test_family(self):
        """A family document goes through the pipeline."""
        doc = family_to_dict(build_cp2_family(), cp2_external_facts())
        with self.runner.isolated_filesystem():
            result = self.solve("cp2.json", doc, "--order", "312")
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertIn("K0 = Z^3, K1 = 0", result.output)

    def test_trace_replay(self):
        """A written trace replays."""
        with self.runner.isolated_filesystem():
            self.runner.invoke(cli, ["mirror", "--trace", "mirror.json"])
            result = self.runner.invoke(cli, ["solve", "mirror.json"])
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertIn("every recorded stage reproduces", result.output)

    def test_models(self):
        """A passing model is solved; a failing one is Inconsistent with its witness."""
        with self.runner.isolated_filesystem():
            result = self.solve("triangle.json", model_to_dict(triangle()))
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertIn("K0 = Z^4, K1 = 0", result.output)
            self.assertIn("glued space has 4 points", result.output)

            result = self.solve("twisted.yaml", model_to_dict(twisted()))
            self.assertEqual(result.exit_code, 3)
            self.assertIn("cocycle condition", result.output)
            self.assertIn("clause 2", result.output)

    def test_schema_errors(self):
        """Bad documents exit 5 with a located message."""
        with self.runner.isolated_filesystem():
            result = self.solve("odd.json", {"kind": "recipe"})
            self.assertEqual(result.exit_code, 5)
            self.assertIn("$.kind", result.output)

            Path("broken.json").write_text('{"kind": "sequence",\n  "nodes": }')
            result = self.runner.invoke(cli, ["solve", "broken.json"])
            self.assertEqual(result.exit_code, 5)
            self.assertIn("line 2", result.output)

            result = self.runner.invoke(cli, ["solve", "missing.json"])
            self.assertEqual(result.exit_code, 5)


class TestConfigOption(unittest.TestCase):
    """The settings file as seen from the command line."""

    def setUp(self):
        """Runner for each test."""
        self.runner = CliRunner()

    def test_settings_file_supplies_defaults(self):
        """kpull.yaml in the working directory sets the trial count."""
        with self.runner.isolated_filesystem():
            Path("kpull.yaml").write_text("trials: 3\nmax_size: 3\n")
            result = self.runner.invoke(cli, ["check-finite"], env={"KPULL_CONFIG": None})
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertIn("3/3 trials passed", result.output)

    def test_flags_beat_the_file(self):
        """Command-line flags override file values."""
        with self.runner.isolated_filesystem():
            Path("kpull.yaml").write_text("trials: 3\nmax_size: 3\n")
            result = self.runner.invoke(cli, ["check-finite", "--trials", "2"], env={"KPULL_CONFIG": None})
            self.assertIn("2/2 trials passed", result.output)

    def test_bad_settings_file(self):
        """Unknown keys and missing files are configuration errors."""
        with self.runner.isolated_filesystem():
            Path("bad.yaml").write_text("colour: blue\n")
            result = self.runner.invoke(cli, ["--config", "bad.yaml", "mirror"])
            self.assertEqual(result.exit_code, 1)
            self.assertIn("unknown key 'colour'", result.output)

            result = self.runner.invoke(cli, ["--config", "nowhere.yaml", "mirror"])
            self.assertEqual(result.exit_code, 1)
            self.assertIn("config file not found", result.output)


if __name__ == "__main__":
    unittest.main()
