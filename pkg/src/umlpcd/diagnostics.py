"""Diagnostics shared by every stage of the toolchain.

Each diagnostic carries a code from a closed catalog (``catalog.json``),
which pairs the code with the clause it enforces and a message template.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

SEVERITIES = ("error", "warning", "note")


@dataclass(frozen=True, order=True)
class Span:
    """A source region; lines and columns are 1-based, offsets 0-based."""

    line: int
    column: int
    end_line: int
    end_column: int
    offset: int = 0
    end_offset: int = 0

    def contains(self, other: Span) -> bool:
        return self.offset <= other.offset and other.end_offset <= self.end_offset

    def to_json(self) -> dict[str, int]:
        return {
            "line": self.line,
            "column": self.column,
            "end_line": self.end_line,
            "end_column": self.end_column,
        }


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    message: str
    subject: tuple[str, ...] = ()
    span: Span | None = field(default=None, compare=False)

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def subject_path(self) -> str:
        return "/".join(self.subject)

    def format(self, filename: str) -> str:
        if self.span is None:
            where = f"{filename}:1:1"
        else:
            where = f"{filename}:{self.span.line}:{self.span.column}"
        return f"{where}: {self.severity} {self.code}: {self.message}"

    def to_json(self, filename: str | None = None) -> dict[str, Any]:
        record: dict[str, Any] = {
            "code": self.code,
            "severity": self.severity,
            "message": self.message,
            "subject": self.subject_path(),
            "span": self.span.to_json() if self.span else None,
        }
        if filename is not None:
            record["file"] = filename
        return record


class DiagnosticError(Exception):
    """Raised by a stage that could not produce its result."""

    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(d.message for d in diagnostics[:3]))
        self.diagnostics = list(diagnostics)


@lru_cache(maxsize=None)
def catalog() -> dict[str, dict[str, str]]:
    text = resources.files(__package__).joinpath("catalog.json").read_text("utf-8")
    return {entry["code"]: entry for entry in json.loads(text)}


@lru_cache(maxsize=None)
def code_rank(code: str) -> int:
    return list(catalog()).index(code)


def make(
    code: str,
    subject: tuple[str, ...] = (),
    span: Span | None = None,
    severity: str | None = None,
    **fields: Any,
) -> Diagnostic:
    """Build a diagnostic from the catalog template for ``code``."""
    entry = catalog()[code]
    message = entry["template"].format(**{k: _show(v) for k, v in fields.items()})
    return Diagnostic(code, severity or entry["severity"], message, subject, span)


def _show(value: Any) -> str:
    if isinstance(value, (set, frozenset, list, tuple)):
        return ", ".join(sorted(str(v) for v in value))
    return str(value)


def sort_key(d: Diagnostic) -> tuple[int, tuple[str, ...], str]:
    return (code_rank(d.code), d.subject, d.message)
