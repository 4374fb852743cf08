from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

from netcfg.intent import IntentClass

ERROR_CODES = (
    "SYNTAX",
    "UNKNOWN_DEVICE",
    "IF_STATE_MISMATCH",
    "ACL_SEMANTICS",
    "OSPF_COVERAGE",
    "OSPF_ADJACENCY",
    "TUNNEL_ASYMMETRY",
    "GOAL_UNMET",
)


@dataclass(frozen=True)
class VerificationError:
    code: str
    device: str
    message: str
    location: Optional[str] = None
    # template parameter for the suggestion (expected state, missing command ...)
    hint: Optional[str] = None

    def __post_init__(self):
        if self.code not in ERROR_CODES:
            raise ValueError(f"unknown error code {self.code!r}")

    def to_dict(self) -> dict:
        out = {"code": self.code, "device": self.device, "message": self.message}
        if self.location is not None:
            out["location"] = self.location
        if self.hint is not None:
            out["hint"] = self.hint
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationError":
        return cls(data["code"], data["device"], data["message"], data.get("location"), data.get("hint"))


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    intent_id: str
    cls: IntentClass
    errors: tuple[VerificationError, ...] = ()
    suggestions: tuple[str, ...] = ()
    checked_at: datetime = field(default_factory=lambda: datetime.fromtimestamp(0))

    def __post_init__(self):
        if self.passed != (not self.errors):
            raise ValueError("passed must be true exactly when errors is empty")

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "intent_id": self.intent_id,
            "class": self.cls.value,
            "errors": [e.to_dict() for e in self.errors],
            "suggestions": list(self.suggestions),
            "checked_at": self.checked_at.isoformat(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            passed=data["passed"],
            intent_id=data["intent_id"],
            cls=IntentClass(data["class"]),
            errors=tuple(VerificationError.from_dict(e) for e in data["errors"]),
            suggestions=tuple(data["suggestions"]),
            checked_at=datetime.fromisoformat(data["checked_at"]),
        )
