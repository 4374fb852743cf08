"""Syntax and per-class semantic checks over candidate network models."""

from __future__ import annotations

import itertools
from datetime import datetime
from typing import Optional

from netcfg import addr, clock
from netcfg.config.ast import AddressMatch, DeviceConfigAst
from netcfg.config.model import ConfigBundle, NetworkModel, apply_candidate
from netcfg.config.parser import parse_config
from netcfg.intent import (
    AclParams,
    CpParams,
    IntentClass,
    LowLevelDescription,
    RpParams,
    TnParams,
)
from netcfg.verifier.acl import Packet, simulate_acl_many
from netcfg.verifier.report import VerificationError, VerificationReport
from netcfg.verifier.suggest import suggest


def check_syntax(bundle: ConfigBundle) -> list[VerificationError]:
    """Parser errors of every section as SYNTAX errors, ordered by (device, line)."""
    found = []
    for section in bundle.sections:
        for issue in parse_config(section.device, section.text).errors:
            found.append((section.device, issue.line, issue.column, VerificationError(
                code="SYNTAX",
                device=section.device,
                location=f"line {issue.line}, column {issue.column}",
                message=f"{issue.message}: '{issue.text}'",
                hint=issue.text,
            )))
    found.sort(key=lambda item: item[:3])
    return [item[3] for item in found]


def make_report(intent_id: str, cls: IntentClass, errors: list[VerificationError],
                checked_at: Optional[datetime] = None) -> VerificationReport:
    return VerificationReport(
        passed=not errors,
        intent_id=intent_id,
        cls=cls,
        errors=tuple(errors),
        suggestions=tuple(suggest(errors)),
        checked_at=checked_at or clock.now(),
    )


# -- CP ---------------------------------------------------------------------


def check_interface(candidate: NetworkModel, lld: LowLevelDescription) -> list[VerificationError]:
    p: CpParams = lld.params
    ast = candidate.devices[p.device]
    stanza = ast.interfaces().get(p.interface) or ast.tunnels().get(p.interface)
    if stanza is None:
        return [VerificationError("GOAL_UNMET", p.device, f"interface {p.interface} is not configured",
                                  location=p.interface, hint=f"interface {p.interface} exists")]
    errors = []
    state = stanza.admin_state or "up"
    if p.admin_state is not None and state != p.admin_state:
        errors.append(VerificationError(
            "IF_STATE_MISMATCH", p.device,
            f"interface {p.interface} is {state}, expected {p.admin_state}",
            location=p.interface, hint=p.admin_state,
        ))
    have = ast.addresses().get(p.interface)
    if p.ip_address is not None and have != (p.ip_address, p.mask):
        shown = " ".join(have) if have else "no address"
        errors.append(VerificationError(
            "GOAL_UNMET", p.device, f"interface {p.interface} has {shown}, expected {p.ip_address} {p.mask}",
            location=p.interface, hint=f"interface {p.interface} has ip address {p.ip_address} {p.mask}",
        ))
    if p.description is not None and stanza.description != p.description:
        errors.append(VerificationError(
            "GOAL_UNMET", p.device, f"interface {p.interface} description is {stanza.description!r}",
            location=p.interface, hint=f"interface {p.interface} has description {p.description!r}",
        ))
    return errors


# -- ACL --------------------------------------------------------------------


def representative_packets(p: AclParams) -> list[Packet]:
    """Packets sampled from the intent's traffic class: low/high address of each range."""
    srcs = addr.representatives(p.src_prefix, p.src_wildcard)
    dst = AddressMatch(p.dst_prefix, p.dst_wildcard) if p.dst_prefix else AddressMatch.any()
    dsts = addr.representatives(dst.prefix, dst.wildcard)
    if p.protocol == "ip":
        flows = [("icmp", None), ("tcp", 80), ("udp", 53)]
    elif p.protocol in ("tcp", "udp"):
        ports = [p.dst_port] if p.dst_port is not None else [1, 65535]
        flows = [(p.protocol, port) for port in ports]
    else:
        flows = [(p.protocol, None)]
    return [
        Packet(proto, addr.to_quad(s), addr.to_quad(d), port)
        for (proto, port), s, d in itertools.product(flows, srcs, dsts)
    ]


def check_acl(candidate: NetworkModel, lld: LowLevelDescription) -> list[VerificationError]:
    p: AclParams = lld.params
    ast = candidate.devices[p.device]
    acl = ast.acls().get(p.acl_id)
    location = str(p.acl_id)
    if acl is None:
        return [VerificationError("ACL_SEMANTICS", p.device, f"access-list {p.acl_id} is not configured",
                                  location=location)]
    errors = []
    packets = representative_packets(p)
    wrong = [pkt for pkt, v in zip(packets, simulate_acl_many(acl.entries, packets)) if v != p.action]
    if wrong:
        pkt = wrong[0]
        port = f":{pkt.dst_port}" if pkt.dst_port is not None else ""
        errors.append(VerificationError(
            "ACL_SEMANTICS", p.device,
            f"{len(wrong)} of {len(packets)} sample packets are not {p.action}ed, "
            f"e.g. {pkt.protocol} {pkt.src_ip} -> {pkt.dst_ip}{port}",
            location=location,
        ))
    if p.apply_to_interface:
        direction = p.direction or "in"
        iface = ast.interfaces().get(p.apply_to_interface)
        bound = iface is not None and any(
            b.acl_id == p.acl_id and b.direction == direction for b in iface.acl_bindings
        )
        if not bound:
            errors.append(VerificationError(
                "ACL_SEMANTICS", p.device,
                f"access-list {p.acl_id} is not applied {direction} on {p.apply_to_interface}",
                location=location,
            ))
    return errors


# -- OSPF -------------------------------------------------------------------


def advertised_area(ast: DeviceConfigAst, ip: str) -> Optional[int]:
    """Area of the most specific network statement covering ``ip``, if any."""
    best = None
    target = addr.to_int(ip)
    for stanza in ast.ospf().values():
        for net in stanza.networks:
            prefix, wc = addr.normalize_network(net.prefix, net.wildcard)
            if addr.wildcard_match(target, prefix, wc):
                specificity = 32 - bin(wc).count("1")
                if best is None or specificity > best[0]:
                    best = (specificity, net.area)
    return best[1] if best else None


def adjacency_errors(model: NetworkModel) -> list[VerificationError]:
    errors = []
    speakers = {name for name, ast in model.devices.items() if any(s.networks for s in ast.ospf().values())}
    for link in model.links:
        if link.device_a not in speakers or link.device_b not in speakers:
            continue
        a_addr = model.devices[link.device_a].addresses().get(link.if_a)
        b_addr = model.devices[link.device_b].addresses().get(link.if_b)
        if not a_addr or not b_addr or not addr.same_network(a_addr[0], b_addr[0], a_addr[1]):
            continue
        area_a = advertised_area(model.devices[link.device_a], a_addr[0])
        area_b = advertised_area(model.devices[link.device_b], b_addr[0])
        if area_a == area_b:
            continue
        where = f"{link.device_a}:{link.if_a} <-> {link.device_b}:{link.if_b}"
        if area_a is None or area_b is None:
            missing = link.device_a if area_a is None else link.device_b
            message = f"link subnet advertised on one side only ({missing} does not advertise it)"
            device = missing
        else:
            message = f"link subnet advertised in area {area_a} on {link.device_a} but area {area_b} on {link.device_b}"
            device = link.device_a
        errors.append(VerificationError("OSPF_ADJACENCY", device, message, location=where))
    return errors


def check_ospf(candidate: NetworkModel, lld: LowLevelDescription,
               baseline: Optional[NetworkModel] = None) -> list[VerificationError]:
    """Coverage of the requested networks plus adjacency consistency on every link.

    With ``baseline`` given, adjacency problems already present there are not
    blamed on the candidate.
    """
    p: RpParams = lld.params
    errors = []
    process = candidate.devices[p.device].ospf().get(p.ospf_process_id)
    have = set()
    if process is not None:
        have = {(*addr.normalize_network(n.prefix, n.wildcard), n.area) for n in process.networks}
    for net in p.networks:
        key = (*addr.normalize_network(net.prefix, net.wildcard), p.area)
        if key not in have:
            command = f"network {net.prefix} {net.wildcard} area {p.area}"
            errors.append(VerificationError(
                "OSPF_COVERAGE", p.device,
                f"{net.prefix} {net.wildcard} is not advertised in area {p.area} by process {p.ospf_process_id}",
                location=f"router ospf {p.ospf_process_id}", hint=command,
            ))
    adjacency = adjacency_errors(candidate)
    if baseline is not None:
        known = set(adjacency_errors(baseline))
        adjacency = [e for e in adjacency if e not in known]
    return errors + adjacency


# -- tunnels ----------------------------------------------------------------


def check_tunnel(candidate: NetworkModel, lld: LowLevelDescription) -> list[VerificationError]:
    p: TnParams = lld.params
    errors = []

    def asym(device, where, message):
        errors.append(VerificationError("TUNNEL_ASYMMETRY", device, message, location=where))

    ends = []
    for want in (p.endpoint_a, p.endpoint_b):
        tunnel = candidate.devices[want.device].tunnels().get(want.tunnel_if)
        if tunnel is None:
            asym(want.device, want.tunnel_if, f"{want.tunnel_if} is missing on {want.device}")
        ends.append((want, tunnel))
    if any(t is None for _, t in ends):
        return errors

    for (want, have), (peer_want, peer) in ((ends[0], ends[1]), (ends[1], ends[0])):
        peer_ast = candidate.devices[peer_want.device]
        owned = peer_ast.addresses().get(peer.source_if) if peer.source_if else None
        if have.destination_ip is None or owned is None or owned[0] != have.destination_ip:
            asym(want.device, want.tunnel_if,
                 f"destination {have.destination_ip} is not the address of {peer_want.device} "
                 f"source interface {peer.source_if}")
        if have.source_if and have.source_if not in candidate.devices[want.device].addresses():
            asym(want.device, want.tunnel_if, f"source interface {have.source_if} has no address")
    a, b = ends[0][1], ends[1][1]
    if not (a.tunnel_ip and b.tunnel_ip and a.tunnel_mask and a.tunnel_mask == b.tunnel_mask
            and addr.same_network(a.tunnel_ip, b.tunnel_ip, a.tunnel_mask)):
        asym(p.endpoint_a.device, p.endpoint_a.tunnel_if,
             f"tunnel addresses {a.tunnel_ip}/{a.tunnel_mask} and {b.tunnel_ip}/{b.tunnel_mask} "
             "are not in one subnet")
    if a.mode is None or a.mode != b.mode:
        asym(p.endpoint_a.device, p.endpoint_a.tunnel_if, f"tunnel modes differ ({a.mode} vs {b.mode})")

    for want, have in ends:
        diffs = []
        if have.tunnel_ip != want.tunnel_ip or have.tunnel_mask != want.tunnel_mask:
            diffs.append(f"ip address {want.tunnel_ip} {want.tunnel_mask}")
        if have.source_if != want.source_if:
            diffs.append(f"tunnel source {want.source_if}")
        if have.destination_ip != want.destination_ip:
            diffs.append(f"tunnel destination {want.destination_ip}")
        if (have.mode or "") != p.mode:
            diffs.append(f"tunnel mode {p.mode}")
        if diffs:
            errors.append(VerificationError(
                "GOAL_UNMET", want.device, f"{want.tunnel_if} differs from the request",
                location=want.tunnel_if, hint=f"{want.tunnel_if} has " + ", ".join(diffs),
            ))
    return errors


# -- dispatch ---------------------------------------------------------------


def semantic_errors(model: NetworkModel, candidate: NetworkModel,
                    lld: LowLevelDescription) -> list[VerificationError]:
    missing = [d for d in lld.targets if d not in candidate.devices]
    if missing:
        return [VerificationError("UNKNOWN_DEVICE", d, f"unknown device {d}") for d in missing]
    if lld.cls is IntentClass.CP:
        return check_interface(candidate, lld)
    if lld.cls is IntentClass.ACL:
        return check_acl(candidate, lld)
    if lld.cls is IntentClass.RP:
        return check_ospf(candidate, lld, baseline=model)
    if lld.cls is IntentClass.TN:
        return check_tunnel(candidate, lld)
    raise ValueError(f"no semantic check for class {lld.cls}")


def verify(model: NetworkModel, candidate: NetworkModel, lld: LowLevelDescription,
           checked_at: Optional[datetime] = None) -> VerificationReport:
    """Class-specific goal check of ``candidate`` (already syntax-clean) against ``lld``."""
    return make_report(lld.intent_id, lld.cls, semantic_errors(model, candidate, lld), checked_at)


def verify_bundle(model: NetworkModel, bundle: ConfigBundle, lld: LowLevelDescription,
                  checked_at: Optional[datetime] = None) -> VerificationReport:
    """Full check of one generated bundle: syntax, applicability, then semantics."""
    errors = check_syntax(bundle)
    if errors:
        return make_report(lld.intent_id, lld.cls, errors, checked_at)
    unknown = [d for d in bundle.devices if d not in model.devices]
    if unknown:
        errors = [VerificationError("UNKNOWN_DEVICE", d, f"unknown device {d}") for d in unknown]
        return make_report(lld.intent_id, lld.cls, errors, checked_at)
    return verify(model, apply_candidate(model, bundle), lld, checked_at)
