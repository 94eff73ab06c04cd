"""Structured pass/fail reports shared by the verification suites."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
VERIFIED = "verified-to-bound"
COUNTEREXAMPLE = "counterexample"


@dataclass
class ReportItem:
    id: str
    params: dict
    status: str
    witness: str | None = None

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        out = f"{self.id} [{params}] {self.status}" if params else f"{self.id} {self.status}"
        if self.witness:
            out += f"  ({self.witness})"
        return out


@dataclass
class Report:
    suite: str
    items: list = field(default_factory=list)

    def add(self, id: str, params: dict, ok: bool, witness: str | None = None):
        self.items.append(
            ReportItem(id, params, PASS if ok else FAIL, None if ok else witness)
        )

    def add_bounded(self, id: str, params: dict, ok: bool, witness: str | None = None):
        """For conjecture checks: never claims more than the tested bound."""
        self.items.append(
            ReportItem(
                id, params, VERIFIED if ok else COUNTEREXAMPLE, witness
            )
        )

    def extend(self, other: "Report"):
        self.items.extend(other.items)

    @property
    def ok(self) -> bool:
        return all(i.status in (PASS, VERIFIED) for i in self.items)

    def first_failure(self) -> ReportItem | None:
        for i in self.items:
            if i.status not in (PASS, VERIFIED):
                return i
        return None

    def to_text(self) -> str:
        lines = [f"suite {self.suite}"]
        lines += [f"  {i.line()}" for i in self.items]
        lines.append(f"  => {'ALL PASS' if self.ok else 'FAILURES PRESENT'}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "items": [
                    {
                        "id": i.id,
                        "params": {k: str(v) for k, v in i.params.items()},
                        "status": i.status,
                        **({"witness": i.witness} if i.witness else {}),
                    }
                    for i in self.items
                ],
                "version": VERSION,
            },
            indent=2,
            sort_keys=True,
        )
