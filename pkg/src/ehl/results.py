"""Shared result type for theorem checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"
BUDGET = "budget"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of checking one theorem instance.

    ``caveat`` marks results computed on a system that is only known to be
    locally maximal; a failure carrying it points at the search, not at the
    theorem.
    """

    status: str
    witness: Any = None
    detail: str = ""
    caveat: bool = False
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": _plain(self.witness),
            "detail": self.detail,
            "caveat": self.caveat,
            "info": _plain(self.info),
        }


def _plain(x: Any) -> Any:
    """Convert witnesses into JSON-friendly values with a stable ordering."""
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (frozenset, set)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def passed(**kw: Any) -> CheckResult:
    return CheckResult(PASS, **kw)


def failed(**kw: Any) -> CheckResult:
    return CheckResult(FAIL, **kw)


def inapplicable(detail: str, **kw: Any) -> CheckResult:
    return CheckResult(INAPPLICABLE, detail=detail, **kw)
