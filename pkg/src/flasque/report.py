"""Verification reports: a list of named pass/fail checks with JSON witnesses."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"


class DuplicateCheck(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    statement: str
    witness: Any = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "statement": self.statement, "witness": self.witness}


def _plain(x):
    """Normalize a witness to plain JSON data so that reports round-trip exactly."""
    return json.loads(json.dumps(x, default=str))


@dataclass
class CheckReport:
    checks: dict[str, Check] = field(default_factory=dict)

    def add(self, check_id: str, ok: bool, statement: str, witness: Any = None) -> bool:
        if check_id in self.checks:
            raise DuplicateCheck(f"check id {check_id!r} already recorded")
        self.checks[check_id] = Check(check_id, PASS if ok else FAIL, statement, _plain(witness))
        return bool(ok)

    def extend(self, other: CheckReport) -> CheckReport:
        for c in other:
            if c.id in self.checks:
                raise DuplicateCheck(f"check id {c.id!r} already recorded")
            self.checks[c.id] = c
        return self

    def __iter__(self):
        return iter(self.checks[k] for k in sorted(self.checks))

    def __len__(self):
        return len(self.checks)

    def __getitem__(self, check_id: str) -> Check:
        return self.checks[check_id]

    def __contains__(self, check_id: str) -> bool:
        return check_id in self.checks

    def __eq__(self, other):
        if not isinstance(other, CheckReport):
            return NotImplemented
        return self.checks == other.checks

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def failures(self) -> list[Check]:
        return [c for c in self if not c.ok]

    def to_dict(self) -> dict:
        return {"overall": PASS if self.passed else FAIL, "checks": [c.to_dict() for c in self]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CheckReport:
        data = json.loads(text)
        rep = cls()
        for c in data["checks"]:
            if c["status"] not in (PASS, FAIL):
                raise ValueError(f"bad status {c['status']!r}")
            rep.add(c["id"], c["status"] == PASS, c["statement"], c.get("witness"))
        return rep

    def to_text(self) -> str:
        lines = [f"[{c.status.upper()}] {c.id}: {c.statement}" for c in self]
        lines.append(f"overall: {PASS if self.passed else FAIL} ({sum(c.ok for c in self)}/{len(self)})")
        return "\n".join(lines)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1
