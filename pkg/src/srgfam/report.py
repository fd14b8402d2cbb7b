"""Structured check results.

Every verification returns a :class:`Report` instead of raising, so callers
can collect all violations of a run rather than stopping at the first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

MAX_WITNESSES = 20


@dataclass
class Report:
    check: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "pass": self.passed, "details": _plain(self.details)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _plain(obj):
    """Make report details JSON-serialisable (Fractions become 'p/q' strings)."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        # numpy scalars
        return obj.item()
    if isinstance(obj, Report):
        return obj.to_dict()
    return obj


def combine(check: str, parts: list[Report], **details) -> Report:
    """Aggregate sub-reports into one; passes iff all parts pass."""
    details = dict(details)
    details["parts"] = [p.to_dict() for p in parts]
    return Report(check, all(p.passed for p in parts), details)
