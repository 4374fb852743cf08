"""Deterministic rendering of a DeviceConfigAst back to configuration text."""

from __future__ import annotations

from netcfg.config.ast import (
    ANY_PREFIX,
    ANY_WILDCARD,
    HOST_WILDCARD,
    AclEntry,
    AclStanza,
    AddressMatch,
    DeviceConfigAst,
    InterfaceStanza,
    OspfStanza,
    TunnelStanza,
)


def render_address(match: AddressMatch) -> str:
    if match.prefix == ANY_PREFIX and match.wildcard == ANY_WILDCARD:
        return "any"
    if match.wildcard == HOST_WILDCARD:
        return f"host {match.prefix}"
    return f"{match.prefix} {match.wildcard}"


def render_acl_entry(acl_id: int, entry: AclEntry, standard: bool) -> str:
    if standard:
        src = render_address(entry.src)
        # standard lists accept a bare address for a host match
        return f"access-list {acl_id} {entry.action} {src}"
    parts = [f"access-list {acl_id}", entry.action, entry.protocol, render_address(entry.src)]
    parts.append(render_address(entry.dst or AddressMatch.any()))
    if entry.dst_port is not None:
        parts.append(f"{entry.dst_port.op} {entry.dst_port.value}")
    return " ".join(parts)


def _state_line(state):
    return {"down": " shutdown", "up": " no shutdown"}.get(state)


def _render_interface(s: InterfaceStanza) -> list[str]:
    lines = [f"interface {s.name}"]
    if s.description:
        lines.append(f" description {s.description}")
    if s.ip_address and s.mask:
        lines.append(f" ip address {s.ip_address} {s.mask}")
    lines += [f" ip access-group {b.acl_id} {b.direction}" for b in s.acl_bindings]
    if _state_line(s.admin_state):
        lines.append(_state_line(s.admin_state))
    return lines


def _render_tunnel(s: TunnelStanza) -> list[str]:
    lines = [f"interface {s.tunnel_if}"]
    if s.description:
        lines.append(f" description {s.description}")
    if s.tunnel_ip and s.tunnel_mask:
        lines.append(f" ip address {s.tunnel_ip} {s.tunnel_mask}")
    if s.source_if:
        lines.append(f" tunnel source {s.source_if}")
    if s.destination_ip:
        lines.append(f" tunnel destination {s.destination_ip}")
    if s.mode:
        lines.append(" tunnel mode " + ("gre ip" if s.mode == "gre" else s.mode))
    if _state_line(s.admin_state):
        lines.append(_state_line(s.admin_state))
    return lines


def canonical_text(ast: DeviceConfigAst) -> str:
    """Render stanzas in canonical order, separated by ``!`` lines."""
    blocks = [[f"hostname {ast.device}"]]
    for s in ast.stanzas:
        if isinstance(s, InterfaceStanza):
            blocks.append(_render_interface(s))
        elif isinstance(s, TunnelStanza):
            blocks.append(_render_tunnel(s))
        elif isinstance(s, AclStanza) and s.entries:
            blocks.append([render_acl_entry(s.acl_id, e, s.standard) for e in s.entries])
        elif isinstance(s, OspfStanza):
            blocks.append(
                [f"router ospf {s.process_id}"]
                + [f" network {n.prefix} {n.wildcard} area {n.area}" for n in s.networks]
            )
    return "\n!\n".join("\n".join(b) for b in blocks) + "\n"
