"""Deterministic keyword/regex backend standing in for a language model.

It reads the same prompt bundles a real model would get and answers in the
same formats: a class code on the first line, an LLD JSON object, or
``~~~``-separated device sections. A :class:`FaultPlan` makes it misbehave
on purpose so the Other path and the refine loop can be exercised offline.
"""

from __future__ import annotations

import json
import re
from typing import Optional

from netcfg import addr
from netcfg.backend.base import DecodingParams
from netcfg.backend.extract import find_json_object
from netcfg.backend.faults import FaultPlan
from netcfg.config.ast import AclEntry, AddressMatch, PortMatch, is_standard_acl
from netcfg.config.canonical import render_acl_entry
from netcfg.config.model import SEPARATOR, ConfigBundle, ConfigSection
from netcfg.config.names import INTERFACE_MENTION_RE, natural_key, normalize_interface
from netcfg.errors import RuleMiss
from netcfg.intent import (
    AclParams,
    CpParams,
    IntentClass,
    LowLevelDescription,
    NetworkPrefix,
    RpParams,
    TnParams,
    TunnelEndpoint,
    lld_from_dict,
)
from netcfg.prompts.forge import PromptBundle, Purpose

# checked in order; the first class with a matching pattern wins
CLASS_RULES: list[tuple[IntentClass, tuple[str, ...]]] = [
    (IntentClass.TN, (r"\btunnels?\b", r"\bgre\b")),
    (IntentClass.RP, (r"\bospf\b", r"\brouting\b", r"\badvertis", r"\barea\s+\d")),
    (IntentClass.ACL, (r"\baccess[- ]lists?\b", r"\bacl\b", r"\bpermit", r"\bdeny\b", r"\bblock",
                       r"\bfilter", r"\ballow")),
    (IntentClass.CP, (r"\binterface\b", r"\bshut\s*down\b", r"\bshutdown\b", r"\bip address\b",
                      r"\bdescription\b", r"\bloopback", r"\bbring\b.*\bup\b", r"\bdisable\b",
                      r"\benable\b")),
]

# service name -> (protocol, port)
SERVICES = {
    "ssh": ("tcp", 22),
    "telnet": ("tcp", 23),
    "ftp": ("tcp", 21),
    "smtp": ("tcp", 25),
    "http": ("tcp", 80),
    "web": ("tcp", 80),
    "https": ("tcp", 443),
    "dns": ("udp", 53),
    "tftp": ("udp", 69),
    "ntp": ("udp", 123),
    "snmp": ("udp", 161),
    "syslog": ("udp", 514),
    "ping": ("icmp", None),
    "icmp": ("icmp", None),
}

_QUAD = r"\d{1,3}(?:\.\d{1,3}){3}"
_PREFIX_RE = re.compile(rf"({_QUAD})/(\d{{1,2}})")
_ADDR_SPEC = rf"(any|host\s+{_QUAD}|{_QUAD}/\d{{1,2}}|{_QUAD}\s+{_QUAD}|{_QUAD}|[A-Za-z][\w-]*)"

DEFAULT_ACL_ID = 110
DEFAULT_TUNNEL_SUBNET = ("172.16.0.0", 30)


def classify_text(text: str) -> Optional[IntentClass]:
    low = text.lower()
    for cls, patterns in CLASS_RULES:
        if any(re.search(p, low) for p in patterns):
            return cls
    return None


def _section(text: str, header: str) -> str:
    """Body of a ``Header:`` block in a prompt, up to the next blank line."""
    m = re.search(rf"^{re.escape(header)}:\n(.*?)(?:\n\n|\Z)", text, re.MULTILINE | re.DOTALL)
    return m.group(1).strip() if m else ""


class _Status:
    def __init__(self, data: dict):
        self.data = data
        self.devices = {d["name"]: d for d in data.get("devices", [])}

    def mentioned(self, text: str) -> list[str]:
        found = []
        for name in self.devices:
            m = re.search(rf"(?<![\w-]){re.escape(name)}(?![\w-])", text, re.IGNORECASE)
            if m:
                found.append((m.start(), name))
        return [name for _, name in sorted(found)]

    def interfaces(self, device: str) -> dict:
        return {i["name"]: i for i in self.devices.get(device, {}).get("interfaces", [])}

    def link_interfaces(self, device: str) -> list[str]:
        names = []
        for link in self.data.get("links", []):
            for end in (link["a"], link["b"]):
                dev, _, iface = end.partition(":")
                if dev == device:
                    names.append(iface)
        return sorted(names, key=natural_key)

    def host_ip(self, name: str) -> Optional[str]:
        for h in self.data.get("hosts", []):
            if h["name"].lower() == name.lower():
                return h["ip"]
        return None


def _address(spec: str, status: _Status) -> Optional[AddressMatch]:
    spec = spec.strip()
    if spec.lower() == "any":
        return AddressMatch.any()
    if spec.lower().startswith("host"):
        return AddressMatch.host(spec.split()[-1])
    m = _PREFIX_RE.fullmatch(spec)
    if m:
        mask = addr.prefixlen_to_mask(int(m.group(2)))
        network = addr.to_quad(addr.to_int(m.group(1)) & addr.to_int(mask))
        return AddressMatch(network, addr.mask_to_wildcard(mask))
    parts = spec.split()
    if len(parts) == 2 and all(addr.is_quad(p) for p in parts):
        return AddressMatch(parts[0], parts[1])
    if addr.is_quad(spec):
        return AddressMatch.host(spec)
    ip = status.host_ip(spec)
    return AddressMatch.host(ip) if ip else None


def _first_address(keyword: str, text: str, status: _Status) -> Optional[AddressMatch]:
    """First ``<keyword> <address>`` phrase whose address resolves."""
    pattern = rf"\b{keyword}\s+(?:network\s+|subnet\s+|the\s+)?{_ADDR_SPEC}"
    for m in re.finditer(pattern, text, re.IGNORECASE):
        found = _address(m.group(1), status)
        if found:
            return found
    return None


def _interface_mentions(text: str) -> list[tuple[int, str]]:
    return [(m.start(), normalize_interface(m.group(1))) for m in INTERFACE_MENTION_RE.finditer(text)]


class RulesBackend:
    """Offline backend; ``strict`` turns unmatched intents into RuleMiss."""

    def __init__(self, faults: Optional[FaultPlan] = None, strict: bool = False):
        self.faults = faults or FaultPlan()
        self.strict = strict

    def bind(self, intent_ids) -> None:
        self.faults = self.faults.bind(intent_ids)

    def complete(self, bundle: PromptBundle, params: DecodingParams = DecodingParams()) -> str:
        return rules_backend_answer(bundle, self.faults, self.strict)


def rules_backend_answer(bundle: PromptBundle, faults: FaultPlan = FaultPlan(), strict: bool = False) -> str:
    user = bundle.user
    fault = lambda kind: faults.active(kind, bundle.intent_id, bundle.attempt)  # noqa: E731
    if bundle.purpose is Purpose.CLASSIFY:
        if fault("class"):
            return "SNMP\nThe requirement concerns SNMP traffic."
        text = _section(user, "Intent")
        cls = classify_text(text)
        if cls is None:
            if strict:
                raise RuleMiss(f"no class rule matches {text!r}")
            return "UNKNOWN\nNo rule matches this requirement."
        return f"{cls.value}\nClassified by keyword rules."
    if bundle.purpose is Purpose.TRANSLATE:
        if fault("json"):
            return '{"intent_id": "' + (bundle.intent_id or "") + '", "class": '
        return _translate(bundle, strict)
    answer = _generate(user)
    if fault("syntax"):
        answer = inject_syntax_error(answer)
    return answer


def inject_syntax_error(answer: str) -> str:
    """Misspell the first ``ip address`` (or add a misspelled line) in the first section."""
    if " ip address " in answer:
        return answer.replace(" ip address ", " ip addres ", 1)
    head, sep, rest = answer.partition(f"\n{SEPARATOR}\n")
    return head + "\nip addres 192.0.2.1 255.255.255.0" + sep + rest


# -- translation ------------------------------------------------------------


def _translate(bundle: PromptBundle, strict: bool) -> str:
    user = bundle.user
    text = _section(user, "Intent")
    cls_line = _section(user, "Type")
    cls = IntentClass(cls_line.split(":")[0].strip())
    status = _Status(find_json_object(_section(user, "Network status")) or {})
    try:
        lld = TRANSLATORS[cls](bundle.intent_id or "", text, status)
    except RuleMiss:
        if strict:
            raise
        return "I could not derive a low-level description for this requirement."
    return lld.encode()


def _translate_cp(intent_id: str, text: str, status: _Status) -> LowLevelDescription:
    devices = status.mentioned(text)
    ifaces = _interface_mentions(text)
    if not devices or not ifaces:
        raise RuleMiss("CP intents need a device and an interface")
    low = text.lower()
    state = None
    if re.search(r"no shutdown|\bbring\b.*\bup\b|\benable|\bactivate|\bturn on|\bre-?enable", low):
        state = "up"
    elif re.search(r"shut\s*down|shutdown|\bdisable|\bturn off|\bdeactivate", low):
        state = "down"
    ip = mask = None
    m = re.search(rf"({_QUAD})/(\d{{1,2}})", text)
    if m:
        ip, mask = m.group(1), addr.prefixlen_to_mask(int(m.group(2)))
    else:
        m = re.search(rf"({_QUAD})\s+(?:mask\s+)?({_QUAD})", text)
        if m:
            ip, mask = m.group(1), m.group(2)
    desc = re.search(r"description\s+['\"]([^'\"]+)['\"]", text, re.IGNORECASE)
    params = CpParams(devices[0], ifaces[0][1], ip, mask, state, desc.group(1) if desc else None)
    return LowLevelDescription(intent_id, IntentClass.CP, (devices[0],), params)


def _translate_acl(intent_id: str, text: str, status: _Status) -> LowLevelDescription:
    devices = status.mentioned(text)
    if not devices:
        raise RuleMiss("ACL intents need a device")
    low = text.lower()
    m = re.search(r"(?:access[- ]list|acl)\s+(?:number\s+)?(\d+)", low)
    acl_id = int(m.group(1)) if m else DEFAULT_ACL_ID
    deny = re.search(r"\b(deny|denies|block|drop|filter|prevent|forbid|reject)", low)
    permit = re.search(r"\b(permit|allow|accept)", low)
    action = "deny" if deny and (not permit or deny.start() < permit.start()) else "permit"

    protocol, port = "ip", None
    for name, (proto, service_port) in SERVICES.items():
        if re.search(rf"\b{name}\b", low):
            protocol, port = proto, service_port
            break
    m = re.search(r"\b(tcp|udp)\b(?:\s+port)?\s+(\d{1,5})\b", low) or re.search(r"\bport\s+(\d{1,5})\b", low)
    if m:
        if m.lastindex == 2:
            protocol, port = m.group(1), int(m.group(2))
        else:
            protocol, port = (protocol if protocol in ("tcp", "udp") else "tcp"), int(m.group(1))
    elif re.search(r"\bicmp\b", low):
        protocol, port = "icmp", None

    src = _first_address("from", text, status) or AddressMatch.any()
    dst = _first_address("to", text, status)

    apply_if = direction = None
    ifaces = _interface_mentions(text)
    if ifaces:
        apply_if = ifaces[0][1]
        direction = "out" if re.search(r"\b(outbound|egress|out)\b", low) else "in"
    if is_standard_acl(acl_id):
        protocol, port, dst = "ip", None, None
    params = AclParams(
        device=devices[0], acl_id=acl_id, action=action, protocol=protocol,
        src_prefix=src.prefix, src_wildcard=src.wildcard,
        dst_prefix=dst.prefix if dst else None, dst_wildcard=dst.wildcard if dst else None,
        dst_port=port, apply_to_interface=apply_if, direction=direction,
    )
    return LowLevelDescription(intent_id, IntentClass.ACL, (devices[0],), params)


def _translate_rp(intent_id: str, text: str, status: _Status) -> LowLevelDescription:
    devices = status.mentioned(text)
    if not devices:
        raise RuleMiss("RP intents need a device")
    device = devices[0]
    low = text.lower()
    m = re.search(r"(?:ospf\s+)?process\s+(?:id\s+)?(\d+)", low) or re.search(r"\bospf\s+(\d+)\b", low)
    process = int(m.group(1)) if m else 1
    area_m = re.search(rf"\barea\s+({_QUAD}|\d+)", low)
    area = area_m.group(1) if area_m else "0"
    area_int = addr.to_int(area) if addr.is_quad(area) else int(area)
    scan = text[:area_m.start()] + text[area_m.end():] if area_m else text
    networks = []
    for m in _PREFIX_RE.finditer(scan):
        mask = addr.prefixlen_to_mask(int(m.group(2)))
        network = addr.to_quad(addr.to_int(m.group(1)) & addr.to_int(mask))
        networks.append(NetworkPrefix(network, addr.mask_to_wildcard(mask)))
    if not networks:
        for _, name in _interface_mentions(text):
            info = status.interfaces(device).get(name)
            if info and "ip" in info:
                network = addr.to_quad(addr.to_int(info["ip"]) & addr.to_int(info["mask"]))
                networks.append(NetworkPrefix(network, addr.mask_to_wildcard(info["mask"])))
    if not networks:
        raise RuleMiss("RP intents need at least one network")
    params = RpParams(device, process, area_int, tuple(dict.fromkeys(networks)))
    return LowLevelDescription(intent_id, IntentClass.RP, (device,), params)


def _translate_tn(intent_id: str, text: str, status: _Status) -> LowLevelDescription:
    devices = status.mentioned(text)
    if len(devices) < 2:
        raise RuleMiss("TN intents need two devices")
    a, b = devices[:2]
    m = re.search(r"\btunnel\s*(\d+)\b", text, re.IGNORECASE)
    tunnel_if = f"Tunnel{m.group(1) if m else 0}"
    m = _PREFIX_RE.search(text)
    base, length = (m.group(1), int(m.group(2))) if m else DEFAULT_TUNNEL_SUBNET
    mask = addr.prefixlen_to_mask(length)
    network = addr.to_int(base) & addr.to_int(mask)

    # an interface named right after a device is that device's tunnel source
    positions = {}
    for name in (a, b):
        hit = re.search(rf"(?<![\w-]){re.escape(name)}(?![\w-])", text, re.IGNORECASE)
        positions[name] = hit.start()
    sources = {}
    for pos, iface in _interface_mentions(text):
        if iface.startswith("Tunnel"):
            continue
        owner = max((p, n) for n, p in positions.items() if p <= pos)[1] if any(
            p <= pos for p in positions.values()) else None
        if owner and owner not in sources and iface in status.interfaces(owner):
            sources[owner] = iface
    for name in (a, b):
        if name not in sources:
            candidates = [i for i in status.link_interfaces(name) if "ip" in status.interfaces(name).get(i, {})]
            if not candidates:
                raise RuleMiss(f"no addressed interface on {name} to source the tunnel")
            sources[name] = candidates[0]

    def endpoint(me, peer, offset):
        return TunnelEndpoint(
            device=me, tunnel_if=tunnel_if, source_if=sources[me],
            destination_ip=status.interfaces(peer)[sources[peer]]["ip"],
            tunnel_ip=addr.to_quad(network + offset), tunnel_mask=mask,
        )

    params = TnParams(endpoint(a, b, 1), endpoint(b, a, 2), "gre")
    return LowLevelDescription(intent_id, IntentClass.TN, (a, b), params)


TRANSLATORS = {
    IntentClass.CP: _translate_cp,
    IntentClass.ACL: _translate_acl,
    IntentClass.RP: _translate_rp,
    IntentClass.TN: _translate_tn,
}


# -- generation -------------------------------------------------------------


def render_lld(lld: LowLevelDescription) -> ConfigBundle:
    """Configuration sections that realize ``lld``."""
    p = lld.params
    if isinstance(p, CpParams):
        lines = [f"interface {p.interface}"]
        if p.description:
            lines.append(f" description {p.description}")
        if p.ip_address:
            lines.append(f" ip address {p.ip_address} {p.mask}")
        if p.admin_state:
            lines.append(" shutdown" if p.admin_state == "down" else " no shutdown")
        return ConfigBundle((ConfigSection(p.device, "\n".join(lines)),))
    if isinstance(p, AclParams):
        standard = is_standard_acl(p.acl_id)
        entry = AclEntry(
            action=p.action,
            protocol=p.protocol,
            src=AddressMatch(p.src_prefix, p.src_wildcard),
            dst=None if standard else (
                AddressMatch(p.dst_prefix, p.dst_wildcard) if p.dst_prefix else AddressMatch.any()),
            dst_port=PortMatch(p.dst_port) if p.dst_port is not None else None,
        )
        lines = [render_acl_entry(p.acl_id, entry, standard)]
        if p.action == "deny":
            rest = AclEntry("permit", "ip", AddressMatch.any(), None if standard else AddressMatch.any())
            lines.append(render_acl_entry(p.acl_id, rest, standard))
        if p.apply_to_interface:
            lines += [f"interface {p.apply_to_interface}", f" ip access-group {p.acl_id} {p.direction or 'in'}"]
        return ConfigBundle((ConfigSection(p.device, "\n".join(lines)),))
    if isinstance(p, RpParams):
        lines = [f"router ospf {p.ospf_process_id}"]
        lines += [f" network {n.prefix} {n.wildcard} area {p.area}" for n in p.networks]
        return ConfigBundle((ConfigSection(p.device, "\n".join(lines)),))
    sections = []
    for end in (p.endpoint_a, p.endpoint_b):
        lines = [
            f"interface {end.tunnel_if}",
            f" ip address {end.tunnel_ip} {end.tunnel_mask}",
            f" tunnel source {end.source_if}",
            f" tunnel destination {end.destination_ip}",
            " tunnel mode gre ip",
        ]
        sections.append(ConfigSection(end.device, "\n".join(lines)))
    return ConfigBundle(tuple(sections))


def _generate(user: str) -> str:
    data = find_json_object(_section(user, "Low-level description"))
    if data is None:
        raise RuleMiss("generation prompt carries no low-level description")
    return render_lld(lld_from_dict(data)).render()


def dumps_answer(lld: LowLevelDescription) -> str:
    return json.dumps(lld.to_dict(), sort_keys=True)
