"""Check results, verification reports and their deterministic serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from fockforge import __version__


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    witness: Any = None

    @classmethod
    def from_residual(cls, name: str, residual: float, tolerance: float, witness=None):
        residual = float(residual)
        return cls(name, residual, float(tolerance), bool(residual <= tolerance), witness)

    @classmethod
    def boolean(cls, name: str, ok: bool, witness=None):
        """A pass/fail check with no numerical residual (residual 0 or 1)."""
        return cls(name, 0.0 if ok else 1.0, 0.0, bool(ok), None if ok else witness)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(
            d["name"],
            _as_float(d["residual"]),
            _as_float(d["tolerance"]),
            bool(d["pass"]),
            d.get("witness"),
        )


@dataclass
class VerificationReport:
    command: str = ""
    input: Any = None
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "input": self.input,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "data": self.data,
            "overall_pass": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            command=d["command"],
            input=d["input"],
            checks=[CheckResult.from_dict(c) for c in d["checks"]],
            notes=list(d["notes"]),
            data=d["data"],
            version=d["version"],
        )


def _as_float(x) -> float:
    if isinstance(x, str):
        return float(x)
    return float(x)


def _canonical(obj) -> Any:
    """Convert numpy scalars/arrays and tuples into plain JSON-able values."""
    if hasattr(obj, "tolist") and not isinstance(obj, (str, bytes)):
        obj = obj.tolist()
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, complex):
        return [_canonical(obj.real), _canonical(obj.imag)]
    return obj


def _encode(obj, indent: int, depth: int) -> str:
    pad = "\n" + " " * (indent * (depth + 1))
    end = "\n" + " " * (indent * depth)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            # JSON has no inf/nan; round-trips through float()
            return json.dumps(repr(obj))
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, depth + 1) for v in obj) + "]"
        return "[" + ",".join(pad + _encode(v, indent, depth + 1) for v in obj) + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted(obj.items())
        body = ",".join(
            pad + json.dumps(k) + ": " + _encode(v, indent, depth + 1) for k, v in items
        )
        return "{" + body + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _format_float(x: float) -> str:
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps_canonical(obj, indent: int = 2) -> str:
    """JSON with sorted keys and 17-significant-digit floats."""
    return _encode(_canonical(obj), indent, 0) + "\n"


def emit_report(report: VerificationReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return dumps_canonical(report.to_dict()).encode("utf-8")
    if fmt == "text":
        return format_text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(blob: bytes | str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(blob))


def format_text(report: VerificationReport) -> str:
    lines = [f"fockforge {report.version}  {report.command}".rstrip()]
    if report.checks:
        width = max(len(c.name) for c in report.checks)
        lines.append(f"{'check'.ljust(width)}  {'residual':>12}  {'tolerance':>10}  result")
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"{c.name.ljust(width)}  {c.residual:12.3e}  {c.tolerance:10.1e}  {mark}"
            if c.witness is not None and not c.passed:
                line += f"  witness={json.dumps(_canonical(c.witness))}"
            lines.append(line)
    else:
        lines.append("(no checks)")
    for key in sorted(report.data):
        lines.append(f"{key}: {json.dumps(_canonical(report.data[key]))}")
    for n in report.notes:
        lines.append(f"note: {n}")
    lines.append("OVERALL: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"
