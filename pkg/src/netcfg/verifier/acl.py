"""Packet matching against ordered ACL entries (first match wins, implicit deny)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from netcfg import addr
from netcfg.config.ast import AclEntry, AddressMatch
from netcfg.verifier import _kernels


@dataclass(frozen=True)
class Packet:
    protocol: str
    src_ip: str
    dst_ip: str
    dst_port: Optional[int] = None

    def __post_init__(self):
        if (self.dst_port is not None) != (self.protocol in ("tcp", "udp")):
            raise ValueError("dst_port is required for tcp/udp and forbidden otherwise")


def encode_entries(entries: Sequence[AclEntry]) -> np.ndarray:
    rows = []
    for e in entries:
        dst = e.dst or AddressMatch.any()
        rows.append((
            1 if e.action == "permit" else 0,
            _kernels.PROTO_CODES[e.protocol],
            addr.to_int(e.src.prefix),
            addr.to_int(e.src.wildcard),
            addr.to_int(dst.prefix),
            addr.to_int(dst.wildcard),
            e.dst_port.value if e.dst_port is not None else -1,
        ))
    return np.array(rows, dtype=np.int64).reshape(len(rows), 7)


def encode_packets(packets: Sequence[Packet]) -> np.ndarray:
    rows = [
        (
            _kernels.PROTO_CODES[p.protocol],
            addr.to_int(p.src_ip),
            addr.to_int(p.dst_ip),
            p.dst_port if p.dst_port is not None else -1,
        )
        for p in packets
    ]
    return np.array(rows, dtype=np.int64).reshape(len(rows), 4)


def verdicts(entry_rows: np.ndarray, packet_rows: np.ndarray) -> np.ndarray:
    """Boolean permit array for pre-encoded inputs."""
    idx = _kernels.first_match(entry_rows, packet_rows)
    if entry_rows.shape[0] == 0:
        return np.zeros(packet_rows.shape[0], dtype=bool)
    return (idx >= 0) & (entry_rows[np.maximum(idx, 0), 0] == 1)


def simulate_acl_many(entries: Sequence[AclEntry], packets: Sequence[Packet]) -> list[str]:
    permitted = verdicts(encode_entries(entries), encode_packets(packets))
    return ["permit" if v else "deny" for v in permitted]


def simulate_acl(entries: Sequence[AclEntry], packet: Packet) -> str:
    """Return ``"permit"`` or ``"deny"`` for one packet."""
    return simulate_acl_many(entries, [packet])[0]
