"""Pull structured results out of raw model text."""

from __future__ import annotations

import json
import re
from typing import Optional

from netcfg.config.model import SEPARATOR, ConfigBundle, ConfigSection
from netcfg.errors import ExtractionError, MalformedSection
from netcfg.intent import IntentClass, LowLevelDescription, lld_from_dict

_SEPARATOR_LINE = re.compile(rf"^\s*{re.escape(SEPARATOR)}\s*$")
_FENCE = re.compile(r"^\s*```")


def extract_class(raw: str) -> IntentClass:
    """Class named on the first non-blank line; anything unrecognized is Other."""
    for line in raw.splitlines():
        token = line.strip().strip("*`'\".:#").strip()
        if not token:
            continue
        for cls in IntentClass.defined():
            if token.upper() == cls.value:
                return cls
        return IntentClass.OTHER
    return IntentClass.OTHER


def find_json_object(raw: str) -> Optional[dict]:
    """First balanced ``{...}`` span in ``raw`` that decodes to a JSON object."""
    start = raw.find("{")
    while start != -1:
        depth = 0
        in_string = escaped = False
        for i in range(start, len(raw)):
            ch = raw[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
            elif ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    try:
                        value = json.loads(raw[start:i + 1])
                    except json.JSONDecodeError:
                        break
                    if isinstance(value, dict):
                        return value
                    break
        start = raw.find("{", start + 1)
    return None


def extract_lld(raw: str, cls: IntentClass, intent_id: Optional[str] = None) -> LowLevelDescription:
    """Decode the first JSON object in ``raw`` against the schema of ``cls``.

    Raises ExtractionError when no object is present and SchemaError when the
    object does not fit the class schema.
    """
    if cls is IntentClass.OTHER:
        raise ValueError("Other has no low-level description")
    data = find_json_object(raw)
    if data is None:
        raise ExtractionError("no JSON object found in the answer")
    return lld_from_dict(data, default_class=cls, default_intent_id=intent_id)


def _device_header(line: str) -> str:
    name = line.strip().strip("#*`:").strip()
    name = re.sub(r"^(device|router|hostname)\s*[:\-]?\s*", "", name, flags=re.IGNORECASE)
    return name.rstrip(":").strip()


def split_config_bundle(raw: str) -> ConfigBundle:
    """Split an answer on ``~~~`` lines into device-headed sections."""
    chunks: list[list[str]] = [[]]
    for line in raw.splitlines():
        if _SEPARATOR_LINE.match(line):
            chunks.append([])
        elif not _FENCE.match(line):
            chunks[-1].append(line.rstrip())
    sections = []
    for lines in chunks:
        while lines and not lines[0].strip():
            lines.pop(0)
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            continue
        device = _device_header(lines[0])
        body = lines[1:]
        while body and not body[0].strip():
            body.pop(0)
        if not device or not body:
            raise MalformedSection(f"section {device or lines[0]!r} has no configuration lines")
        sections.append(ConfigSection(device, "\n".join(body)))
    if not sections:
        raise ExtractionError("no device sections found in the answer")
    return ConfigBundle(tuple(sections))
