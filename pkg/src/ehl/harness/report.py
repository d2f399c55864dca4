"""Suite reports: counts, violations, and deterministic serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from ..formats import to_graph6
from ..graph import Graph
from ..results import BUDGET, FAIL, INAPPLICABLE, PASS, CheckResult, _plain


@dataclass
class VerificationReport:
    """Aggregate outcome of one suite run.

    ``instances_tested`` always equals inapplicable + passes + fails +
    budget_hits.  A failure without a caveat is a falsification alarm.
    """

    suite: str
    spec: dict = field(default_factory=dict)
    instances_tested: int = 0
    inapplicable: int = 0
    passes: int = 0
    fails: int = 0
    budget_hits: int = 0
    violations: list = field(default_factory=list)
    certificates: int = 0
    certificates_verified: int = 0
    mutation_probes: int = 0
    mutations_caught: int = 0
    counters: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def record(self, G: Graph, result: CheckResult, label: Optional[dict] = None) -> None:
        self.instances_tested += 1
        if result.status == PASS:
            self.passes += 1
        elif result.status == INAPPLICABLE:
            self.inapplicable += 1
        elif result.status == BUDGET:
            self.budget_hits += 1
        elif result.status == FAIL:
            self.fails += 1
            entry = {"graph": to_graph6(G), "witness": _plain(result.witness), "detail": result.detail,
                     "caveat": result.caveat}
            if label:
                entry["instance"] = _plain(label)
            self.violations.append(entry)
        else:
            raise ValueError(f"unknown status {result.status!r}")

    def bump(self, key: str, by: int = 1) -> None:
        self.counters[key] = self.counters.get(key, 0) + by

    @property
    def consistent(self) -> bool:
        return self.instances_tested == self.inapplicable + self.passes + self.fails + self.budget_hits

    @property
    def alarms(self) -> int:
        """Failures not explained by a merely locally maximal system."""
        return sum(1 for v in self.violations if not v["caveat"])

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        for name in ("instances_tested", "inapplicable", "passes", "fails", "budget_hits", "certificates",
                     "certificates_verified", "mutation_probes", "mutations_caught"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.violations.extend(other.violations)
        for k, v in other.counters.items():
            self.bump(k, v)
        self.wall_time += other.wall_time
        return self

    def to_json(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {
            "suite": self.suite,
            "spec": self.spec,
            "instances_tested": self.instances_tested,
            "inapplicable": self.inapplicable,
            "passes": self.passes,
            "fails": self.fails,
            "budget_hits": self.budget_hits,
            "alarms": self.alarms,
            "violations": self.violations,
            "certificates": self.certificates,
            "certificates_verified": self.certificates_verified,
            "mutation_probes": self.mutation_probes,
            "mutations_caught": self.mutations_caught,
            "counters": dict(sorted(self.counters.items())),
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def dumps(self, timing: bool = True, pretty: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2 if pretty else None)

    def table(self) -> str:
        rows = [
            ("suite", self.suite),
            ("instances", self.instances_tested),
            ("passes", self.passes),
            ("inapplicable", self.inapplicable),
            ("fails", self.fails),
            ("alarms", self.alarms),
            ("budget hits", self.budget_hits),
            ("certificates verified", f"{self.certificates_verified}/{self.certificates}"),
            ("mutations caught", f"{self.mutations_caught}/{self.mutation_probes}"),
            ("wall time (s)", f"{self.wall_time:.2f}"),
        ]
        rows += [(k, v) for k, v in sorted(self.counters.items())]
        width = max(len(str(k)) for k, _ in rows)
        return "\n".join(f"{str(k).ljust(width)}  {v}" for k, v in rows)
