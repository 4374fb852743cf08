"""Prompt bundles (system / assistant / user) built from text templates.

Templates live next to this module as ``<purpose>.<role>.txt``. Placeholders
use single braces (``{Intent}``); literal braces are written doubled.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

from netcfg.config.model import ConfigBundle, DeviceInfo
from netcfg.errors import ContractError
from netcfg.intent import CLASS_DEFINITIONS, Intent, IntentClass, LowLevelDescription
from netcfg.repo.status import NetworkStatusSnapshot
from netcfg.verifier.report import VerificationReport

DEFAULT_STATUS_BUDGET = 8 * 1024

_PLACEHOLDER_RE = re.compile(r"\{\{|\}\}|\{(\w+)\}")


class Role(str, Enum):
    SYSTEM = "system"
    ASSISTANT = "assistant"
    USER = "user"


class Purpose(str, Enum):
    CLASSIFY = "classify"
    TRANSLATE = "translate"
    GENERATE = "generate"
    REFINE = "refine"


@dataclass(frozen=True)
class PromptMessage:
    role: Role
    content: str

    def __post_init__(self):
        if not self.content.strip():
            raise ContractError(f"empty {self.role.value} message")


@dataclass(frozen=True)
class PromptBundle:
    messages: tuple[PromptMessage, ...]
    purpose: Purpose
    # routing metadata; never sent to a model
    intent_id: Optional[str] = None
    attempt: int = 1

    def __post_init__(self):
        if not self.messages or self.messages[0].role is not Role.SYSTEM:
            raise ContractError("first message must have the system role")
        if sum(m.role is Role.USER for m in self.messages) != 1:
            raise ContractError("exactly one user message is required")

    def message(self, role: Role) -> str:
        return next(m.content for m in self.messages if m.role is role)

    @property
    def user(self) -> str:
        return self.message(Role.USER)

    def to_wire(self) -> list[dict]:
        return [{"role": m.role.value, "content": m.content} for m in self.messages]

    def to_json(self) -> str:
        return json.dumps({"purpose": self.purpose.value, "messages": self.to_wire()},
                          indent=2, ensure_ascii=False)


def render(template: str, **values: str) -> str:
    """Substitute ``{name}`` placeholders; ``{{``/``}}`` yield literal braces."""

    def repl(m: re.Match) -> str:
        if m.group(0) == "{{":
            return "{"
        if m.group(0) == "}}":
            return "}"
        name = m.group(1)
        if name not in values:
            raise ContractError(f"template placeholder {{{name}}} has no value")
        return values[name]

    return _PLACEHOLDER_RE.sub(repl, template)


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    return resources.files("netcfg.prompts").joinpath("templates", name).read_text(encoding="utf-8").rstrip("\n")


def _bundle(purpose: Purpose, intent_id, attempt, values: dict, assistant_values: Optional[dict] = None
            ) -> PromptBundle:
    stem = "generate" if purpose is Purpose.REFINE else purpose.value
    messages = [
        PromptMessage(Role.SYSTEM, render(load_template(f"{stem}.system.txt"), **values)),
        PromptMessage(Role.ASSISTANT, render(load_template(f"{stem}.assistant.txt"), **(assistant_values or values))),
        PromptMessage(Role.USER, render(load_template(f"{purpose.value}.user.txt"), **values)),
    ]
    return PromptBundle(tuple(messages), purpose, intent_id, attempt)


def _class_list(classes: Sequence[IntentClass]) -> str:
    return "\n".join(f"{c.value}: {CLASS_DEFINITIONS[c]}" for c in classes)


def build_classification_prompt(intent: Intent, classes: Sequence[IntentClass]) -> PromptBundle:
    classes = list(classes)
    if set(classes) != set(IntentClass.defined()) or len(classes) != 4:
        raise ContractError(f"classification needs exactly CP, RP, ACL and TN, got {classes}")
    return _bundle(Purpose.CLASSIFY, intent.id, 1, {"Intent": intent.text, "type": _class_list(classes)})


def mentioned_devices(text: str, names: Iterable[str]) -> list[str]:
    return [n for n in names if re.search(rf"(?<![\w-]){re.escape(n)}(?![\w-])", text, re.IGNORECASE)]


def fit_status(status: NetworkStatusSnapshot, intent_text: str, budget: int = DEFAULT_STATUS_BUDGET) -> str:
    """Status JSON, cut down to the mentioned devices and their neighbors when over budget."""
    text = status.to_json()
    if len(text.encode("utf-8")) <= budget:
        return text
    named = mentioned_devices(intent_text, status.device_names())
    if not named:
        return text
    keep = set(named)
    for name in named:
        keep |= status.neighbors(name)
    return status.restrict(keep).to_json()


def _exemplar(name: str) -> str:
    return load_template(f"exemplars/{name}")


def build_translation_prompt(intent: Intent, cls: IntentClass, status: NetworkStatusSnapshot,
                             status_budget: int = DEFAULT_STATUS_BUDGET, attempt: int = 1) -> PromptBundle:
    if cls is IntentClass.OTHER:
        raise ContractError("intents of class Other are never translated")
    exemplar = _exemplar(f"lld_{cls.value}.json").replace("<intent id>", intent.id)
    return _bundle(Purpose.TRANSLATE, intent.id, attempt, {
        "Intent": intent.text,
        "type": f"{cls.value}: {CLASS_DEFINITIONS[cls]}",
        "network_status": fit_status(status, intent.text, status_budget),
        "low_level_description": exemplar,
    })


def _inventory_text(lld: LowLevelDescription, inventory: Sequence[DeviceInfo]) -> str:
    info = {d.name: d for d in inventory}
    lines = []
    for name in lld.targets:
        d = info.get(name, DeviceInfo(name))
        lines.append(f"{name}: {d.vendor} {d.model}")
    return "\n".join(lines)


def _answer_shape(cls: IntentClass) -> dict:
    return {"low_level_description": _exemplar(f"config_{cls.value}.txt")}


def build_generation_prompt(lld: LowLevelDescription, inventory: Sequence[DeviceInfo],
                            attempt: int = 1) -> PromptBundle:
    values = {"low_level_description": lld.encode(), "device_inventory": _inventory_text(lld, inventory)}
    return _bundle(Purpose.GENERATE, lld.intent_id, attempt, values, _answer_shape(lld.cls))


def _previous_text(previous: ConfigBundle) -> str:
    if not previous.sections:
        return "(no device section could be read from the previous answer)"
    return "\n\n".join(f"[{s.device}]\n{s.text.strip(chr(10))}" for s in previous.sections)


def build_refine_prompt(previous: ConfigBundle, report: VerificationReport, lld: LowLevelDescription,
                        inventory: Sequence[DeviceInfo] = (), attempt: int = 2) -> PromptBundle:
    if report.passed:
        raise ContractError("refinement needs a failing report")
    errors = "\n".join(
        f"{i}. [{e.code}] {e.device}{' ' + e.location if e.location else ''}: {e.message}"
        for i, e in enumerate(report.errors, 1)
    )
    suggestions = "\n".join(f"{i}. {s}" for i, s in enumerate(report.suggestions, 1)) or "(none)"
    values = {
        "low_level_description": lld.encode(),
        "device_inventory": _inventory_text(lld, inventory),
        "previous_configuration": _previous_text(previous),
        "verification_errors": errors,
        "suggestions": suggestions,
    }
    return _bundle(Purpose.REFINE, lld.intent_id, attempt, values, _answer_shape(lld.cls))
