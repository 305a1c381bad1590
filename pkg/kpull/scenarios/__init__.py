"""
Scenario module: runs the commands behind each subcommand, prints their
results and maps outcomes to exit codes.

Every result starts with a status line. Exit codes:

    0  Solved, or every harness trial passed
    1  unexpected error
    2  Underdetermined
    3  Inconsistent
    4  harness property violation
    5  schema violation
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

from rich.console import Console

from kpull.diagram import DerivationTrace, trace_to_dict
from kpull.diagram.trace import kpair_to_dict
from kpull.finmodel import HarnessReport
from kpull.scenarios.commands.check_finite import CheckFiniteCommand
from kpull.scenarios.commands.cp2 import Cp2Command
from kpull.scenarios.commands.mirror import MirrorCommand
from kpull.scenarios.commands.solve import SolveCommand
from kpull.shared.serialization import dump_json, write_json
from kpull.shared.settings import Settings
from kpull.sixterm import SolveReport, Status
from kpull.sixterm.codec import report_to_dict
from kpull.sixterm.sequence import render_nodes

EXIT_CODES = {Status.SOLVED: 0, Status.UNDERDETERMINED: 2, Status.INCONSISTENT: 3}
HARNESS_FAILURE = 4

MARKS = {Status.SOLVED: "✅", Status.UNDERDETERMINED: "⚠️ ", Status.INCONSISTENT: "❌"}


class ScenarioModule:
    """Handles the kpull subcommands."""

    def __init__(self, settings: Optional[Settings] = None, console: Optional[Console] = None):
        self.settings = settings or Settings()
        self.console = console or Console(highlight=False, markup=False, emoji=False, soft_wrap=True)
        self.commands = {
            "cp2": self.cmd_cp2,
            "mirror": self.cmd_mirror,
            "check-finite": self.cmd_check_finite,
            "solve": self.cmd_solve,
        }

    def handle(self, command: str, **options: Any) -> int:
        return self.commands[command](**options)

    # -- output helpers

    def _say(self, text: str = "", style: Optional[str] = None) -> None:
        self.console.print(text, style=style)

    def _echo_json(self, document: Dict[str, Any]) -> None:
        self.console.file.write(dump_json(document, self.settings.trace_indent))

    def _write_trace(self, path: Optional[Path], document: Dict[str, Any]) -> None:
        if path is not None:
            write_json(path, document, self.settings.trace_indent)

    def _error(self, result: Dict[str, Any]) -> int:
        self._say(f"❌ Error: {result.get('error', 'unknown error')}", style="red")
        return result.get("exit_code", 1)

    def _status_line(self, status: Status, detail: str) -> None:
        style = {Status.SOLVED: "green", Status.UNDERDETERMINED: "yellow"}.get(status, "red")
        self._say(f"{MARKS[status]} {status.value}: {detail}", style=style)

    def _report_lines(self, report: SolveReport, indent: str = "  ") -> List[str]:
        lines = [indent + line for line in render_nodes(report.sequence.nodes, report.sequence.labels)]
        for blocker in report.unresolved:
            lines.append(f"{indent}{blocker.slot} unresolved:")
            lines.extend(f"{indent}  - {reason}" for reason in blocker.reasons)
        if report.witness is not None:
            w = report.witness
            lines.append(f"{indent}{w.slot}: already {w.existing}, derived {w.derived}")
            lines.extend(f"{indent}  {s.rule}: {s.slot} = {s.value}" for s in w.chain)
        return lines

    def _trace_lines(self, trace: DerivationTrace) -> List[str]:
        lines = []
        for entry in trace.entries:
            nodes = entry.report.sequence.nodes
            summary = (
                f"K0 = {nodes[0]}, K1 = {nodes[3]}" if entry.report.solved else entry.report.status.value
            )
            via = "".join(f" (with {f.node} from {f.citation})" for f in entry.facts)
            lines.append(
                f"stage {entry.stage}  {entry.pullback} = {entry.left} x_{entry.over} {entry.right}: {summary}{via}"
            )
        if trace.cocycle_source:
            lines.append(f"cocycle certificate: {trace.cocycle_source}")
        last = trace.entries[-1] if trace.entries else None
        if last is not None and not last.report.solved:
            lines.extend(self._report_lines(last.report))
        return lines

    def _pipeline_result(self, result: Dict[str, Any], json_out: bool, trace_path: Optional[Path]) -> int:
        if not result["success"]:
            return self._error(result)
        trace: DerivationTrace = result["trace"]
        status: Status = result["status"]
        self._write_trace(trace_path, trace_to_dict(trace))

        if json_out:
            kpair = result.get("kpair")
            self._echo_json({
                "kind": "result",
                "scenario": result["scenario"],
                "status": status.value,
                "result": kpair_to_dict(kpair) if kpair is not None else None,
                "trace": trace_to_dict(trace),
            })
            return EXIT_CODES[status]

        if status is Status.SOLVED:
            self._status_line(status, str(result["kpair"]))
        else:
            self._status_line(status, f"stage {trace.failed_stage} ({trace.entries[-1].pullback})")
        for line in self._trace_lines(trace):
            self._say(line)
        return EXIT_CODES[status]

    # -- commands

    def cmd_cp2(self, json_out: bool = False, trace: Optional[Path] = None,
                external_facts: bool = True, order: Optional[str] = None) -> int:
        result = Cp2Command(self.settings).execute(external_facts=external_facts, order=order)
        return self._pipeline_result(result, json_out, trace)

    def cmd_mirror(self, json_out: bool = False, trace: Optional[Path] = None) -> int:
        result = MirrorCommand(self.settings).execute()
        return self._pipeline_result(result, json_out, trace)

    def cmd_check_finite(self, json_out: bool = False, trials: Optional[int] = None,
                         seed: Optional[int] = None, max_size: Optional[int] = None,
                         adversarial: bool = False, workers: Optional[int] = None) -> int:
        result = CheckFiniteCommand(self.settings).execute(
            trials=trials, seed=seed, max_size=max_size, adversarial=adversarial, workers=workers
        )
        if not result["success"]:
            return self._error(result)
        report: HarnessReport = result["harness"]
        code = 0 if report.passed else HARNESS_FAILURE

        if json_out:
            self._echo_json(report.to_dict())
            return code

        generator = "uniform" if report.adversarial else "constructive"
        passed = sum(1 for r in report.results if r.passed)
        where = f"{generator} generator, seed {report.seed}, max size {report.max_size}"
        if report.passed:
            self._say(f"✅ {passed}/{report.trials} trials passed ({where})", style="green")
        else:
            first = report.first_failure
            why = first.error or ", ".join(first.failed_checks) or "cocycle check"
            self._say(f"❌ Property violation: first failing seed {first.seed} ({why})", style="red")
            self._say(f"{passed}/{report.trials} trials passed ({where})")
        ok, failed = report.cocycle_split
        self._say(f"cocycle check: {ok} pass, {failed} fail")
        if report.flagged():
            self._say(f"zero algebra overlap in {report.flagged()} models")
        samples = report.witness_samples()
        if samples:
            self._say("witness samples:")
            for sample in samples:
                self._say(f"  {sample}")
        return code

    def cmd_solve(self, path: Path, json_out: bool = False, trace: Optional[Path] = None,
                  order: Optional[str] = None) -> int:
        result = SolveCommand(self.settings).execute(path=path, order=order)
        if not result["success"]:
            return self._error(result)
        if "trace" in result:
            return self._pipeline_result(result, json_out, trace)

        status: Status = result["status"]
        if "report" in result:
            report: SolveReport = result["report"]
            self._write_trace(trace, report_to_dict(report))
            if json_out:
                self._echo_json(report_to_dict(report))
                return EXIT_CODES[status]
            nodes = report.sequence.nodes
            detail = f"K0 = {nodes[0]}, K1 = {nodes[3]}" if report.solved else result["source"]
            self._status_line(status, detail)
            for line in self._report_lines(report):
                self._say(line)
            return EXIT_CODES[status]

        kpair = result.get("kpair")
        if json_out:
            doc = {
                "kind": "result",
                "scenario": result["scenario"],
                "status": status.value,
                "result": kpair_to_dict(kpair) if kpair is not None else None,
            }
            if "cocycle" in result:
                witness = result["cocycle"].witness
                doc["cocycle"] = {"ok": result["cocycle"].ok, "witness": str(witness) if witness else None}
                doc["zero_overlaps"] = list(result["zero_overlaps"])
            self._echo_json(doc)
            return EXIT_CODES[status]

        if "cocycle" in result and not result["cocycle"].ok:
            self._status_line(status, "model fails the cocycle condition")
            self._say(f"  {result['cocycle'].witness}")
        else:
            self._status_line(status, str(kpair) if kpair is not None else result["source"])
        if result.get("replayed"):
            self._say("  every recorded stage reproduces")
        if "glued_size" in result:
            self._say(f"  glued space has {result['glued_size']} points")
        for key in result.get("zero_overlaps", ()):
            self._say(f"  B{key}: zero algebra overlap")
        return EXIT_CODES[status]
