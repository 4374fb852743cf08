"""Typed AST for the IOS-like configuration subset."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from netcfg.config.names import natural_key

ANY_PREFIX = "0.0.0.0"
ANY_WILDCARD = "255.255.255.255"
HOST_WILDCARD = "0.0.0.0"

ACTIONS = ("permit", "deny")
PROTOCOLS = ("ip", "tcp", "udp", "icmp")


@dataclass(frozen=True)
class AddressMatch:
    prefix: str
    wildcard: str

    @classmethod
    def any(cls) -> "AddressMatch":
        return cls(ANY_PREFIX, ANY_WILDCARD)

    @classmethod
    def host(cls, address: str) -> "AddressMatch":
        return cls(address, HOST_WILDCARD)


@dataclass(frozen=True)
class PortMatch:
    value: int
    op: str = "eq"


@dataclass(frozen=True)
class AclEntry:
    action: str
    protocol: str
    src: AddressMatch
    dst: Optional[AddressMatch] = None
    dst_port: Optional[PortMatch] = None


@dataclass(frozen=True)
class AclBinding:
    acl_id: int
    direction: str


@dataclass(frozen=True)
class InterfaceStanza:
    name: str
    ip_address: Optional[str] = None
    mask: Optional[str] = None
    # None means the text never stated it; the effective state is then "up"
    admin_state: Optional[str] = None
    description: Optional[str] = None
    acl_bindings: tuple[AclBinding, ...] = ()

    @property
    def effective_state(self) -> str:
        return self.admin_state or "up"


@dataclass(frozen=True)
class AclStanza:
    acl_id: int
    entries: tuple[AclEntry, ...] = ()

    @property
    def name(self) -> str:
        return str(self.acl_id)

    @property
    def standard(self) -> bool:
        return is_standard_acl(self.acl_id)


@dataclass(frozen=True)
class OspfNetwork:
    prefix: str
    wildcard: str
    area: int


@dataclass(frozen=True)
class OspfStanza:
    process_id: int
    networks: tuple[OspfNetwork, ...] = ()

    @property
    def name(self) -> str:
        return str(self.process_id)


@dataclass(frozen=True)
class TunnelStanza:
    tunnel_if: str
    source_if: Optional[str] = None
    destination_ip: Optional[str] = None
    tunnel_ip: Optional[str] = None
    tunnel_mask: Optional[str] = None
    mode: Optional[str] = None
    admin_state: Optional[str] = None
    description: Optional[str] = None

    @property
    def name(self) -> str:
        return self.tunnel_if


Stanza = Union[InterfaceStanza, AclStanza, OspfStanza, TunnelStanza]

_KIND_RANK = {InterfaceStanza: 0, TunnelStanza: 1, AclStanza: 2, OspfStanza: 3}


def stanza_key(stanza: Stanza) -> tuple:
    return (_KIND_RANK[type(stanza)], natural_key(stanza.name))


def is_standard_acl(acl_id: int) -> bool:
    return 1 <= acl_id <= 99 or 1300 <= acl_id <= 1999


def is_extended_acl(acl_id: int) -> bool:
    return 100 <= acl_id <= 199 or 2000 <= acl_id <= 2699


@dataclass(frozen=True)
class DeviceConfigAst:
    """One device's configuration; stanzas are kept in canonical order."""

    device: str
    stanzas: tuple[Stanza, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "stanzas", tuple(sorted(self.stanzas, key=stanza_key)))

    def interfaces(self) -> dict[str, InterfaceStanza]:
        return {s.name: s for s in self.stanzas if isinstance(s, InterfaceStanza)}

    def tunnels(self) -> dict[str, TunnelStanza]:
        return {s.tunnel_if: s for s in self.stanzas if isinstance(s, TunnelStanza)}

    def acls(self) -> dict[int, AclStanza]:
        return {s.acl_id: s for s in self.stanzas if isinstance(s, AclStanza)}

    def ospf(self) -> dict[int, OspfStanza]:
        return {s.process_id: s for s in self.stanzas if isinstance(s, OspfStanza)}

    def addresses(self) -> dict[str, tuple[str, str]]:
        """Interface name -> (address, mask) for every addressed interface, tunnels included."""
        out = {}
        for s in self.stanzas:
            if isinstance(s, InterfaceStanza) and s.ip_address and s.mask:
                out[s.name] = (s.ip_address, s.mask)
            elif isinstance(s, TunnelStanza) and s.tunnel_ip and s.tunnel_mask:
                out[s.tunnel_if] = (s.tunnel_ip, s.tunnel_mask)
        return out
