"""Interface name normalization (``Gig0/1`` -> ``GigabitEthernet0/1``)."""

from __future__ import annotations

import re

# longest abbreviations first so "gi" does not shadow "gigabitethernet"
_PREFIXES = [
    ("tengigabitethernet", "TenGigabitEthernet"),
    ("gigabitethernet", "GigabitEthernet"),
    ("fastethernet", "FastEthernet"),
    ("ethernet", "Ethernet"),
    ("loopback", "Loopback"),
    ("tunnel", "Tunnel"),
    ("serial", "Serial"),
    ("vlan", "Vlan"),
    ("tengig", "TenGigabitEthernet"),
    ("gige", "GigabitEthernet"),
    ("gig", "GigabitEthernet"),
    ("gi", "GigabitEthernet"),
    ("te", "TenGigabitEthernet"),
    ("fa", "FastEthernet"),
    ("eth", "Ethernet"),
    ("et", "Ethernet"),
    ("lo", "Loopback"),
    ("tu", "Tunnel"),
    ("se", "Serial"),
    ("g", "GigabitEthernet"),
    ("e", "Ethernet"),
]

INTERFACE_RE = re.compile(r"^([A-Za-z][A-Za-z-]*?)\s*(\d+(?:/\d+)*(?:\.\d+)?)$")

# matches an interface mention inside free text
INTERFACE_MENTION_RE = re.compile(
    r"\b((?:TenGigabitEthernet|GigabitEthernet|FastEthernet|Ethernet|Loopback|Tunnel|Serial|"
    r"Gig|Gi|Fa|Lo|Tu|Se|Eth)\s?\d+(?:/\d+)*)\b",
    re.IGNORECASE,
)


def normalize_interface(name: str) -> str:
    """Expand a known abbreviation; unknown names are returned stripped."""
    text = name.strip()
    m = INTERFACE_RE.match(text)
    if not m:
        return text
    head, tail = m.group(1).lower(), m.group(2)
    for prefix, full in _PREFIXES:
        if head == prefix:
            return full + tail
    return text


def is_virtual(name: str) -> bool:
    """Loopbacks and tunnels may be created by a configuration; physical ports may not."""
    return normalize_interface(name).startswith(("Loopback", "Tunnel"))


def natural_key(text: str) -> tuple:
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", text))
