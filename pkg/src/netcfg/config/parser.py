"""Total, line-oriented parser for the IOS-like configuration subset.

The parser never raises on bad input. Every line it cannot use becomes a
:class:`SyntaxIssue`; well-formed IOS commands outside the modeled subset
(``banner``, ``line vty``, ``duplex`` ...) are kept as warnings so that
harmless extras in generated output do not fail verification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from netcfg import addr
from netcfg.config.ast import (
    ACTIONS,
    PROTOCOLS,
    AclBinding,
    AclEntry,
    AclStanza,
    AddressMatch,
    DeviceConfigAst,
    InterfaceStanza,
    OspfNetwork,
    OspfStanza,
    PortMatch,
    TunnelStanza,
    is_extended_acl,
    is_standard_acl,
)
from netcfg.config.names import normalize_interface

PORT_NAMES = {
    "ftp-data": 20,
    "ftp": 21,
    "ssh": 22,
    "telnet": 23,
    "smtp": 25,
    "domain": 53,
    "bootps": 67,
    "bootpc": 68,
    "tftp": 69,
    "www": 80,
    "http": 80,
    "pop3": 110,
    "ntp": 123,
    "snmp": 161,
    "snmptrap": 162,
    "bgp": 179,
    "https": 443,
    "syslog": 514,
}

# global commands that are valid IOS but outside the modeled subset
_IGNORED_GLOBAL = {
    "aaa", "archive", "banner", "boot", "cdp", "clock", "control-plane", "crypto",
    "enable", "license", "line", "lldp", "logging", "mpls", "ntp", "service",
    "snmp-server", "spanning-tree", "username", "version", "vrf", "vtp",
}
# these open a block whose indented children are ignored too
_IGNORED_BLOCKS = {"line", "control-plane", "crypto", "archive", "vrf"}
_IGNORED_GLOBAL_IP = {
    "cef", "classless", "dhcp", "domain-lookup", "domain-name", "domain", "ftp",
    "http", "name-server", "route", "routing", "scp", "ssh", "subnet-zero", "tftp",
}
_IGNORED_IF = {
    "arp", "bandwidth", "carrier-delay", "cdp", "channel-group", "delay", "duplex",
    "encapsulation", "hold-queue", "ipv6", "keepalive", "lldp", "load-interval",
    "logging", "media-type", "mpls", "mtu", "negotiation", "service-policy", "speed",
    "standby", "switchport", "vrrp",
}
_IGNORED_IF_IP = {
    "directed-broadcast", "flow", "helper-address", "igmp", "mroute-cache", "mtu",
    "nat", "ospf", "pim", "proxy-arp", "redirects", "route-cache", "tcp",
    "unreachables", "virtual-reassembly",
}
_IGNORED_OSPF = {
    "area", "auto-cost", "default-information", "distance", "log-adjacency-changes",
    "maximum-paths", "passive-interface", "redistribute", "router-id", "timers",
}
_TOP_LEVEL = {"hostname", "interface", "router", "access-list", "end"} | _IGNORED_GLOBAL


@dataclass(frozen=True)
class SyntaxIssue:
    line: int
    column: int
    message: str
    text: str
    severity: str = "error"


@dataclass(frozen=True)
class ParseResult:
    ast: DeviceConfigAst
    issues: tuple[SyntaxIssue, ...] = ()

    @property
    def errors(self) -> list[SyntaxIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[SyntaxIssue]:
        return [i for i in self.issues if i.severity == "warning"]


class _Reject(Exception):
    """Raised inside a line handler; carries the offending token index."""

    def __init__(self, message: str, token: int = 0):
        super().__init__(message)
        self.token = token


@dataclass
class _Iface:
    name: str
    ip_address: Optional[str] = None
    mask: Optional[str] = None
    admin_state: Optional[str] = None
    description: Optional[str] = None
    bindings: dict = field(default_factory=dict)
    # tunnel-only
    source_if: Optional[str] = None
    destination_ip: Optional[str] = None
    mode: Optional[str] = None


class _Parser:
    def __init__(self, device: str):
        self.device = device
        self.issues: list[SyntaxIssue] = []
        self.ifaces: dict[str, _Iface] = {}
        self.acls: dict[int, list[AclEntry]] = {}
        self.ospf: dict[int, list[OspfNetwork]] = {}
        self.context: Optional[tuple] = None
        self.lineno = 0
        self.line = ""
        self.spans: list[tuple[int, int]] = []

    # -- issue helpers -------------------------------------------------
    def _issue(self, message: str, token: int = 0, severity: str = "error"):
        column = self.spans[token][0] + 1 if token < len(self.spans) else len(self.line) + 1
        self.issues.append(SyntaxIssue(self.lineno, column, message, self.line.strip(), severity))

    def _warn_ignored(self, token: int = 0):
        self._issue("unrecognized directive ignored", token, severity="warning")

    # -- driver --------------------------------------------------------
    def feed(self, text: str):
        for self.lineno, raw in enumerate(text.splitlines(), start=1):
            self.line = raw.rstrip()
            stripped = self.line.strip()
            if not stripped or stripped.startswith("!") or stripped.startswith("#"):
                if stripped.startswith("!"):
                    self.context = None
                continue
            self.spans = [m.span() for m in re.finditer(r"\S+", self.line)]
            tokens = stripped.split()
            indented = self.line[0].isspace()
            try:
                self._dispatch(tokens, indented)
            except _Reject as exc:
                self._issue(str(exc), exc.token)

    def _dispatch(self, tokens: list[str], indented: bool):
        head = tokens[0].lower()
        if head == "exit" and self.context is not None:
            self.context = None
            return
        if self.context is not None and (indented or not self._is_top_level(tokens)):
            kind = self.context[0]
            if kind == "interface":
                self._interface_line(tokens)
            elif kind == "ospf":
                self._ospf_line(tokens)
            else:
                self._warn_ignored()
            return
        self.context = None
        self._global_line(tokens)

    @staticmethod
    def _is_top_level(tokens: list[str]) -> bool:
        head = tokens[0].lower()
        if head == "ip":
            return len(tokens) > 1 and tokens[1].lower() in _IGNORED_GLOBAL_IP | {"access-list"}
        return head in _TOP_LEVEL

    # -- global --------------------------------------------------------
    def _global_line(self, tokens: list[str]):
        head = tokens[0].lower()
        if head == "hostname":
            if len(tokens) != 2:
                raise _Reject("hostname expects one argument", min(len(tokens) - 1, 2))
            if tokens[1] != self.device:
                self._issue(f"hostname {tokens[1]} differs from device {self.device}", 1, "warning")
        elif head == "end":
            return
        elif head == "interface":
            self._open_interface(tokens)
        elif head == "router":
            self._open_router(tokens)
        elif head == "access-list":
            self._access_list(tokens)
        elif head == "ip" and len(tokens) > 1 and tokens[1].lower() == "access-list":
            self._warn_ignored()
            self.context = ("ignored",)
        elif head == "ip" and len(tokens) > 1 and tokens[1].lower() in _IGNORED_GLOBAL_IP:
            self._warn_ignored()
        elif head in _IGNORED_GLOBAL:
            self._warn_ignored()
            if head in _IGNORED_BLOCKS:
                self.context = ("ignored",)
        elif head == "no" and len(tokens) > 1 and (
            tokens[1].lower() in _IGNORED_GLOBAL
            or (tokens[1].lower() == "ip" and len(tokens) > 2 and tokens[2].lower() in _IGNORED_GLOBAL_IP)
        ):
            self._warn_ignored()
        else:
            bad = 1 if head in ("ip", "no") and len(tokens) > 1 else 0
            raise _Reject(f"unknown directive '{tokens[bad]}'", bad)

    def _open_interface(self, tokens: list[str]):
        if len(tokens) < 2:
            raise _Reject("interface name missing", 1)
        name = normalize_interface("".join(tokens[1:]))
        if not re.match(r"^[A-Za-z][A-Za-z-]*\d+(/\d+)*(\.\d+)?$", name):
            raise _Reject(f"invalid interface name '{' '.join(tokens[1:])}'", 1)
        self.ifaces.setdefault(name, _Iface(name))
        self.context = ("interface", name)

    def _open_router(self, tokens: list[str]):
        if len(tokens) < 2:
            raise _Reject("routing protocol missing", 1)
        if tokens[1].lower() != "ospf":
            self._warn_ignored(1)
            self.context = ("ignored",)
            return
        if len(tokens) != 3:
            raise _Reject("router ospf expects a process id", min(len(tokens), 3) if len(tokens) > 3 else 2)
        pid = _int_in(tokens[2], 1, 65535, "OSPF process id", 2)
        self.ospf.setdefault(pid, [])
        self.context = ("ospf", pid)

    # -- interface -----------------------------------------------------
    def _interface_line(self, tokens: list[str]):
        iface = self.ifaces[self.context[1]]
        is_tunnel = iface.name.startswith("Tunnel")
        low = [t.lower() for t in tokens]
        if low == ["shutdown"]:
            iface.admin_state = "down"
        elif low == ["no", "shutdown"]:
            iface.admin_state = "up"
        elif low[0] == "description":
            if len(tokens) < 2:
                raise _Reject("description text missing", 1)
            iface.description = self.line.strip().split(None, 1)[1]
        elif low[:2] == ["no", "description"]:
            iface.description = None
        elif low[:2] == ["ip", "address"]:
            if len(tokens) == 5 and low[4] == "secondary":
                self._issue("secondary addresses are not modeled", 4, "warning")
                return
            if len(tokens) != 4:
                raise _Reject("ip address expects an address and a mask", min(len(tokens), 4) if len(tokens) > 4 else len(tokens))
            _quad(tokens[2], "address", 2)
            _quad(tokens[3], "mask", 3)
            if not addr.is_netmask(tokens[3]):
                raise _Reject(f"non-contiguous netmask '{tokens[3]}'", 3)
            iface.ip_address, iface.mask = tokens[2], tokens[3]
        elif low[:3] == ["no", "ip", "address"]:
            iface.ip_address = iface.mask = None
        elif low[:2] == ["ip", "access-group"]:
            if len(tokens) != 4:
                raise _Reject("ip access-group expects an ACL and a direction", min(len(tokens), 4) if len(tokens) > 4 else len(tokens))
            if not tokens[2].isdigit():
                self._issue("named access-groups are not modeled", 2, "warning")
                return
            acl_id = int(tokens[2])
            if not (is_standard_acl(acl_id) or is_extended_acl(acl_id)):
                raise _Reject(f"ACL number {acl_id} out of range", 2)
            if low[3] not in ("in", "out"):
                raise _Reject(f"invalid direction '{tokens[3]}'", 3)
            iface.bindings[low[3]] = AclBinding(acl_id, low[3])
        elif low[0] == "tunnel":
            if not is_tunnel:
                raise _Reject("tunnel command outside a Tunnel interface", 0)
            self._tunnel_line(iface, tokens, low)
        elif low[0] in _IGNORED_IF or (low[0] == "ip" and len(low) > 1 and low[1] in _IGNORED_IF_IP):
            self._warn_ignored()
        elif low[0] == "no" and len(low) > 1 and (
            low[1] in _IGNORED_IF or (low[1] == "ip" and len(low) > 2 and low[2] in _IGNORED_IF_IP)
        ):
            self._warn_ignored()
        else:
            bad = 1 if low[0] in ("ip", "no") and len(tokens) > 1 else 0
            raise _Reject(f"unknown directive '{tokens[bad]}'", bad)

    def _tunnel_line(self, iface: _Iface, tokens: list[str], low: list[str]):
        if len(tokens) < 3:
            raise _Reject("tunnel command missing an argument", len(tokens))
        what = low[1]
        if what == "source":
            iface.source_if = normalize_interface("".join(tokens[2:]))
        elif what == "destination":
            if len(tokens) != 3:
                raise _Reject("tunnel destination expects one address", 3)
            _quad(tokens[2], "address", 2)
            iface.destination_ip = tokens[2]
        elif what == "mode":
            iface.mode = "gre" if low[2:] == ["gre", "ip"] else " ".join(low[2:])
        else:
            self._warn_ignored(1)

    # -- router ospf ---------------------------------------------------
    def _ospf_line(self, tokens: list[str]):
        low = [t.lower() for t in tokens]
        if low[0] == "network":
            if len(tokens) != 5 or low[3] != "area":
                raise _Reject("expected 'network <prefix> <wildcard> area <id>'", min(len(tokens) - 1, 3))
            _quad(tokens[1], "prefix", 1)
            _quad(tokens[2], "wildcard", 2)
            area = parse_area(tokens[4])
            if area is None:
                raise _Reject(f"invalid area '{tokens[4]}'", 4)
            net = OspfNetwork(tokens[1], tokens[2], area)
            nets = self.ospf[self.context[1]]
            if net in nets:
                self._issue("duplicate network statement dropped", 0, "warning")
            else:
                nets.append(net)
        elif low[0] in _IGNORED_OSPF or (low[0] == "no" and len(low) > 1 and low[1] in _IGNORED_OSPF):
            self._warn_ignored()
        else:
            raise _Reject(f"unknown directive '{tokens[0]}'", 0)

    # -- access-list ---------------------------------------------------
    def _access_list(self, tokens: list[str]):
        if len(tokens) < 3:
            raise _Reject("incomplete access-list", len(tokens))
        if not tokens[1].isdigit():
            raise _Reject(f"invalid ACL number '{tokens[1]}'", 1)
        acl_id = int(tokens[1])
        standard = is_standard_acl(acl_id)
        if not standard and not is_extended_acl(acl_id):
            raise _Reject(f"ACL number {acl_id} out of range", 1)
        action = tokens[2].lower()
        if action == "remark":
            self._issue("remark ignored", 2, "warning")
            return
        if action not in ACTIONS:
            raise _Reject(f"invalid ACL action '{tokens[2]}'", 2)
        pos = 3
        if standard:
            protocol = "ip"
            src, pos = _address_match(tokens, pos, standard=True)
            dst = None
            port = None
        else:
            if pos >= len(tokens):
                raise _Reject("protocol missing", pos)
            protocol = tokens[pos].lower()
            if protocol not in PROTOCOLS:
                raise _Reject(f"unsupported protocol '{tokens[pos]}'", pos)
            pos += 1
            src, pos = _address_match(tokens, pos)
            if pos < len(tokens) and tokens[pos].lower() in ("eq", "gt", "lt", "neq", "range"):
                raise _Reject("source port matching is not supported", pos)
            dst, pos = _address_match(tokens, pos)
            port = None
            if pos < len(tokens) and tokens[pos].lower() in ("gt", "lt", "neq", "range"):
                raise _Reject(f"unsupported port operator '{tokens[pos]}'", pos)
            if pos < len(tokens) and tokens[pos].lower() == "eq":
                if protocol not in ("tcp", "udp"):
                    raise _Reject("port match requires tcp or udp", pos)
                if pos + 1 >= len(tokens):
                    raise _Reject("port missing", pos + 1)
                port = PortMatch(_port(tokens[pos + 1], pos + 1))
                pos += 2
        while pos < len(tokens) and tokens[pos].lower() in ("log", "log-input", "established"):
            pos += 1
        if pos < len(tokens):
            raise _Reject(f"unexpected token '{tokens[pos]}'", pos)
        entry = AclEntry(action, protocol, src, dst, port)
        entries = self.acls.setdefault(acl_id, [])
        if entry in entries:
            self._issue("duplicate ACL entry dropped", 0, "warning")
        else:
            entries.append(entry)

    # -- result --------------------------------------------------------
    def result(self) -> ParseResult:
        stanzas = []
        for i in self.ifaces.values():
            if i.name.startswith("Tunnel"):
                stanzas.append(
                    TunnelStanza(
                        tunnel_if=i.name,
                        source_if=i.source_if,
                        destination_ip=i.destination_ip,
                        tunnel_ip=i.ip_address,
                        tunnel_mask=i.mask,
                        mode=i.mode,
                        admin_state=i.admin_state,
                        description=i.description,
                    )
                )
            else:
                stanzas.append(
                    InterfaceStanza(
                        name=i.name,
                        ip_address=i.ip_address,
                        mask=i.mask,
                        admin_state=i.admin_state,
                        description=i.description,
                        acl_bindings=tuple(i.bindings[d] for d in sorted(i.bindings)),
                    )
                )
        stanzas += [AclStanza(k, tuple(v)) for k, v in self.acls.items()]
        stanzas += [OspfStanza(k, tuple(v)) for k, v in self.ospf.items()]
        return ParseResult(DeviceConfigAst(self.device, tuple(stanzas)), tuple(self.issues))


def _quad(token: str, what: str, index: int):
    if not addr.is_quad(token):
        raise _Reject(f"invalid {what} '{token}'", index)


def _int_in(token: str, lo: int, hi: int, what: str, index: int) -> int:
    if not token.isdigit() or not lo <= int(token) <= hi:
        raise _Reject(f"invalid {what} '{token}'", index)
    return int(token)


def _port(token: str, index: int) -> int:
    if token.lower() in PORT_NAMES:
        return PORT_NAMES[token.lower()]
    return _int_in(token, 1, 65535, "port", index)


def _address_match(tokens: list[str], pos: int, standard: bool = False) -> tuple[AddressMatch, int]:
    if pos >= len(tokens):
        raise _Reject("address missing", pos)
    word = tokens[pos].lower()
    if word == "any":
        return AddressMatch.any(), pos + 1
    if word == "host":
        if pos + 1 >= len(tokens):
            raise _Reject("host address missing", pos + 1)
        _quad(tokens[pos + 1], "address", pos + 1)
        return AddressMatch.host(tokens[pos + 1]), pos + 2
    _quad(tokens[pos], "address", pos)
    if pos + 1 < len(tokens) and addr.is_quad(tokens[pos + 1]):
        return AddressMatch(tokens[pos], tokens[pos + 1]), pos + 2
    if standard:
        return AddressMatch.host(tokens[pos]), pos + 1
    raise _Reject("wildcard mask missing", pos + 1)


def parse_area(token) -> Optional[int]:
    """OSPF area as an integer; accepts decimal or dotted-quad notation."""
    if isinstance(token, bool):
        return None
    if isinstance(token, int):
        return token if 0 <= token <= 0xFFFFFFFF else None
    if isinstance(token, str):
        if token.isdigit() and int(token) <= 0xFFFFFFFF:
            return int(token)
        if addr.is_quad(token):
            return addr.to_int(token)
    return None


def parse_config(device: str, text: str) -> ParseResult:
    """Parse one device's configuration text; never raises on malformed input."""
    parser = _Parser(device)
    parser.feed(text)
    return parser.result()
