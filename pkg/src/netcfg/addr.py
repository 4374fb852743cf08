"""Dotted-quad helpers: addresses, netmasks and IOS wildcard masks."""

from __future__ import annotations

import ipaddress
import re

_QUAD_RE = re.compile(r"^\d{1,3}(\.\d{1,3}){3}$")
ALL_ONES = 0xFFFFFFFF


def is_quad(text: object) -> bool:
    if not isinstance(text, str) or not _QUAD_RE.match(text):
        return False
    return all(int(part) <= 255 for part in text.split("."))


def to_int(quad: str) -> int:
    return int(ipaddress.IPv4Address(quad))


def to_quad(value: int) -> str:
    return str(ipaddress.IPv4Address(value & ALL_ONES))


def is_netmask(quad: str) -> bool:
    """True for contiguous netmasks such as 255.255.255.0 (including /0 and /32)."""
    if not is_quad(quad):
        return False
    inverted = ~to_int(quad) & ALL_ONES
    return inverted & (inverted + 1) == 0


def mask_to_wildcard(mask: str) -> str:
    return to_quad(~to_int(mask))


def prefixlen_to_mask(length: int) -> str:
    if not 0 <= length <= 32:
        raise ValueError(f"prefix length out of range: {length}")
    return to_quad((ALL_ONES << (32 - length)) & ALL_ONES)


def wildcard_match(address: int, prefix: int, wildcard: int) -> bool:
    """IOS wildcard semantics: bits set in the wildcard are ignored."""
    care = ~wildcard & ALL_ONES
    return (address & care) == (prefix & care)


def same_network(a: str, b: str, mask: str) -> bool:
    m = to_int(mask)
    return (to_int(a) & m) == (to_int(b) & m)


def normalize_network(prefix: str, wildcard: str) -> tuple[int, int]:
    """Key for comparing (prefix, wildcard) pairs irrespective of host bits."""
    wc = to_int(wildcard)
    return to_int(prefix) & ~wc & ALL_ONES, wc


def representatives(prefix: str, wildcard: str) -> list[int]:
    """Sample addresses of a wildcard range: the first host above the base and the top."""
    wc = to_int(wildcard)
    base = to_int(prefix) & ~wc & ALL_ONES
    top = base | wc
    if wc == 0:
        return [base]
    first = base | (wc & -wc)
    return sorted({first, top})
