# handlers/report.py
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from core.config import APP_NAME, APP_VERSION, EXIT_CHECK_FAILED, EXIT_OK
from core.schemas import dumps


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "pass": self.passed}


@dataclass
class Report:
    """Outcome of one command. `elapsed` goes to the summary only, so equal
    inputs give byte-identical JSON."""
    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    elapsed: float = 0.0

    def check(self, name: str, expected: Any, computed: Any, passed: Optional[bool] = None) -> bool:
        ok = (expected == computed) if passed is None else bool(passed)
        self.checks.append(Check(name, expected, computed, ok))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tool": f"{APP_NAME} {APP_VERSION}",
            "command": self.command,
            "inputs": dict(self.inputs),
            "results": self.results,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def digest_file(path: str) -> str:
    with open(path, "rb") as fh:
        return digest_bytes(fh.read())


def digest_obj(obj: Any) -> str:
    return digest_bytes(dumps(obj).encode("utf-8"))


# ----------------------------
# Human summary (stderr)
# ----------------------------
def render_summary(report: Report, console: Optional[Console] = None) -> None:
    console = console or Console(stderr=True)
    table = Table(title=f"{APP_NAME} {report.command}", show_lines=False)
    table.add_column("item")
    table.add_column("value")
    for key, value in report.results.items():
        if isinstance(value, (str, int, float, bool)) or value is None:
            table.add_row(key, str(value))
    for c in report.checks:
        mark = "[green]pass[/green]" if c.passed else "[red]FAIL[/red]"
        table.add_row(c.name, f"{mark} (expected {c.expected}, got {c.computed})")
    console.print(table)
    status = "[green]all checks passed[/green]" if report.passed else "[red]some checks failed[/red]"
    console.print(f"{status} in {report.elapsed:.2f}s")
