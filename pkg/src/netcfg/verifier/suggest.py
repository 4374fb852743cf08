"""Template-based repair suggestions, one per verification error."""

from __future__ import annotations

from typing import Iterable, Optional

from netcfg.verifier.report import VerificationError

KNOWN_COMMANDS = (
    "access-list",
    "description",
    "hostname",
    "interface",
    "ip access-group",
    "ip address",
    "network",
    "no shutdown",
    "router ospf",
    "shutdown",
    "tunnel destination",
    "tunnel mode",
    "tunnel source",
)


def edit_distance(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def closest_command(line: str) -> Optional[str]:
    """A known command within edit distance 1 of the line's leading words."""
    words = line.split()
    for command in KNOWN_COMMANDS:
        n = len(command.split())
        head = " ".join(words[:n]).lower()
        if head != command and edit_distance(head, command) == 1:
            return command
    return None


def _syntax(e: VerificationError) -> str:
    guess = closest_command(e.hint or "")
    where = f" at {e.location}" if e.location else ""
    if guess:
        return f"unknown directive; did you mean '{guess}'? ({e.device}{where})"
    return f"fix or remove the offending line on {e.device}{where}: {e.message}"


def _if_state(e: VerificationError) -> str:
    command = "shutdown" if e.hint == "down" else "no shutdown"
    return f"add '{command}' under interface {e.location} on {e.device}"


_TEMPLATES = {
    "SYNTAX": _syntax,
    "UNKNOWN_DEVICE": lambda e: f"remove the section for {e.device}; only devices from the inventory may be configured",
    "IF_STATE_MISMATCH": _if_state,
    "ACL_SEMANTICS": lambda e: f"fix the entries or binding of access-list {e.location} on {e.device}: {e.message}",
    "OSPF_COVERAGE": lambda e: f"add '{e.hint}' under {e.location} on {e.device}",
    "OSPF_ADJACENCY": lambda e: f"advertise the subnet of {e.location} in the same OSPF area on both ends of the link",
    "TUNNEL_ASYMMETRY": lambda e: f"make the tunnel endpoints mirror each other ({e.device} {e.location}): {e.message}",
    "GOAL_UNMET": lambda e: f"change the configuration of {e.device} so that {e.hint or e.message}",
}


def suggest(errors: Iterable[VerificationError]) -> list[str]:
    return [_TEMPLATES[e.code](e) for e in errors]
