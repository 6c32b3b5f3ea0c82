"""Check-report assembly and rendering.

Reports are deterministic by construction: entries keep the order they
were produced in, JSON output uses sorted keys, exact values are encoded
as strings of rationals, and the timing field is always null so that two
runs over the same inputs are byte-identical.  Wall-clock measurements,
when wanted, go to stderr and never into the report body.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .forms import Form
from .operators import GradedOperator
from .poly import Polynomial
from .scalars import Scalar

PASS, FAIL, SKIP = "pass", "fail", "skipped"


def encode(value):
    """Recursively convert exact objects into JSON-serializable data."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Scalar):
        return value.to_json()
    if isinstance(value, (Form, Polynomial)):
        return str(value)
    if isinstance(value, GradedOperator):
        return {"name": value.name, "shift": value.shift,
                "zero": value.is_zero()}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return str(value)


@dataclass
class Entry:
    model: str
    check: str
    status: str
    residual: object = None
    detail: object = None
    timing: object = None       # kept null: reports must be byte-identical

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "check": self.check,
            "status": self.status,
            "residual": encode(self.residual),
            "detail": encode(self.detail),
            "timing": None,
        }


@dataclass
class Report:
    command: str
    model: str
    entries: list[Entry] = field(default_factory=list)
    suite: str | None = None
    seed: int | None = None

    def add(self, check: str, status: str, residual=None, detail=None) -> Entry:
        if status == PASS and residual is not None:
            raise ValueError("a pass entry never carries a residual")
        e = Entry(self.model, check, status, residual, detail)
        self.entries.append(e)
        return e

    @property
    def failed(self) -> bool:
        return any(e.status == FAIL for e in self.entries)

    def to_dict(self) -> dict:
        out = {"command": self.command, "model": self.model,
               "entries": [e.to_dict() for e in self.entries]}
        if self.suite is not None:
            out["suite"] = self.suite
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"
        if fmt == "md":
            return self._render_md()
        raise ValueError(f"unknown format {fmt!r}")

    def _render_md(self) -> str:
        lines = [f"# {self.command} {self.model}"
                 + (f" ({self.suite})" if self.suite else ""), ""]
        lines += ["| check | status | residual | detail |",
                  "|---|---|---|---|"]
        for e in self.entries:
            residual = _cell(encode(e.residual))
            detail = _cell(encode(e.detail))
            lines.append(f"| {e.check} | {e.status} | {residual} | {detail} |")
        n_fail = sum(1 for e in self.entries if e.status == FAIL)
        n_skip = sum(1 for e in self.entries if e.status == SKIP)
        lines += ["", f"{len(self.entries)} checks, {n_fail} failed, {n_skip} skipped", ""]
        return "\n".join(lines)


def _cell(value) -> str:
    if value is None:
        return ""
    text = json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) \
        else str(value)
    text = text.replace("|", "\\|")
    if len(text) > 120:
        text = text[:117] + "..."
    return text
