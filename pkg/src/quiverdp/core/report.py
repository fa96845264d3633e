"""Report data structures and serialization"""

import tempfile
from pathlib import Path
from typing import Any

import msgspec

REPORT_FORMAT_VERSION = 1


class CheckOutcome(msgspec.Struct):
    """Verdict of a single verification check"""

    name: str
    passed: bool
    detail: str = ""
    counterexample: str | None = None

    @classmethod
    def from_error(cls, name: str, error: Exception) -> "CheckOutcome":
        """Create an outcome representing a check that raised"""
        return cls(name=name, passed=False, detail=f"{type(error).__name__}: {error}")


class CheckReport(msgspec.Struct):
    """A named group of check outcomes"""

    title: str
    checks: list[CheckOutcome] = msgspec.field(default_factory=list)
    format_version: int = REPORT_FORMAT_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", counterexample: str | None = None):
        self.checks.append(
            CheckOutcome(name=name, passed=passed, detail=detail, counterexample=counterexample)
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [msgspec.structs.asdict(c) for c in self.checks],
            "format_version": self.format_version,
        }


def encode_report(report: Any) -> bytes:
    """Encode a report struct (or plain data) as indented, deterministic JSON"""
    if hasattr(report, "to_dict"):
        report = report.to_dict()
    raw = msgspec.json.encode(report, order="deterministic")
    return msgspec.json.format(raw, indent=2) + b"\n"


def write_report(report: Any, path: Path | None = None) -> bytes:
    """Write a report to path (atomic replace) or return the bytes for stdout"""
    data = encode_report(report)
    if path is None:
        return data

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # Atomic write: write to temp file then rename
    fd, tmp_path = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with open(fd, "wb") as f:
            f.write(data)
        Path(tmp_path).replace(path)
    except Exception:
        Path(tmp_path).unlink(missing_ok=True)
        raise
    return data
