"""Check rows and canonical report serialization.

Reports are plain dicts rendered with sorted keys and a trailing
newline, so identical runs produce byte-identical files.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .exact import RootValue


def _jsonable(v):
    """Coerce a check side to something json.dump accepts."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, (Fraction, RootValue)):
        return float(v)
    return str(v)


@dataclass(frozen=True)
class Check:
    name: str
    lhs: object
    rhs: object
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "pass": self.passed,
        }

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: {_jsonable(self.lhs)} vs {_jsonable(self.rhs)}"


@dataclass(frozen=True)
class Report:
    suite: str
    checks: tuple

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        failed = sum(1 for c in self.checks if not c.passed)
        return {
            "checks": len(self.checks),
            "failed": failed,
            "passed": len(self.checks) - failed,
            "verdict": "pass" if failed == 0 else "fail",
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary(),
        }


def render_report(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def write_report(report: Report, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_report(report))


def render_csv(rows, header: str) -> str:
    """Delimited output; floats go through repr so rereads round-trip."""
    lines = [header]
    for row in rows:
        lines.append(",".join(
            repr(x) if isinstance(x, float) else str(x) for x in row))
    return "\n".join(lines) + "\n"
