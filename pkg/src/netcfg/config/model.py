"""Network model: baseline topology plus candidate merging."""

from __future__ import annotations

import dataclasses
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from netcfg import addr
from netcfg.config.ast import (
    AclStanza,
    DeviceConfigAst,
    InterfaceStanza,
    OspfStanza,
    Stanza,
    TunnelStanza,
)
from netcfg.config.canonical import canonical_text
from netcfg.config.names import normalize_interface
from netcfg.config.parser import parse_config
from netcfg.errors import ApplicabilityError, ValidationError

log = logging.getLogger(__name__)

SEPARATOR = "~~~"


@dataclass(frozen=True)
class ConfigSection:
    device: str
    text: str


@dataclass(frozen=True)
class ConfigBundle:
    """Per-device configuration texts from one generation pass."""

    sections: tuple[ConfigSection, ...] = ()

    @property
    def devices(self) -> list[str]:
        return [s.device for s in self.sections]

    def render(self) -> str:
        return f"\n{SEPARATOR}\n".join(f"{s.device}\n{s.text.strip(chr(10))}" for s in self.sections)


@dataclass(frozen=True)
class Link:
    device_a: str
    if_a: str
    device_b: str
    if_b: str

    def ends(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return (self.device_a, self.if_a), (self.device_b, self.if_b)


@dataclass(frozen=True)
class Host:
    name: str
    attached_device: str
    attached_if: str
    ip: str


@dataclass(frozen=True)
class DeviceInfo:
    name: str
    vendor: str = "Cisco"
    model: str = "IOSv"


@dataclass(frozen=True)
class NetworkModel:
    devices: dict[str, DeviceConfigAst] = field(default_factory=dict)
    links: tuple[Link, ...] = ()
    hosts: tuple[Host, ...] = ()
    inventory: tuple[DeviceInfo, ...] = ()

    def device(self, name: str) -> Optional[DeviceConfigAst]:
        return self.devices.get(name)

    def has_interface(self, device: str, interface: str) -> bool:
        ast = self.devices.get(device)
        if ast is None:
            return False
        name = normalize_interface(interface)
        return name in ast.interfaces() or name in ast.tunnels()

    def neighbors(self, device: str) -> set[str]:
        out = set()
        for link in self.links:
            if link.device_a == device:
                out.add(link.device_b)
            elif link.device_b == device:
                out.add(link.device_a)
        return out

    def device_info(self, name: str) -> DeviceInfo:
        for info in self.inventory:
            if info.name == name:
                return info
        return DeviceInfo(name)


def _split_endpoint(text: str) -> tuple[str, str]:
    device, sep, iface = text.partition(":")
    if not sep or not device or not iface:
        raise ValidationError(f"link endpoint must look like 'R1:Gig0/0', got {text!r}")
    return device, normalize_interface(iface)


def model_from_dict(data: dict) -> NetworkModel:
    """Build and validate a model from the topology.json structure."""
    devices = {}
    inventory = []
    for entry in data.get("devices", []):
        name = entry["name"]
        result = parse_config(name, entry.get("configs", ""))
        if result.errors:
            first = result.errors[0]
            raise ValidationError(f"{name} line {first.line}: {first.message}")
        devices[name] = result.ast
        inventory.append(DeviceInfo(name, entry.get("vendor", "Cisco"), entry.get("model", "IOSv")))
    links = []
    for raw in data.get("links", []):
        (da, ia), (db, ib) = _split_endpoint(raw["a"]), _split_endpoint(raw["b"])
        links.append(Link(da, ia, db, ib))
    hosts = [
        Host(h["name"], h["device"], normalize_interface(h["if"]), h["ip"]) for h in data.get("hosts", [])
    ]
    model = NetworkModel(devices, tuple(links), tuple(hosts), tuple(inventory))
    problems = check_model(model)
    if problems:
        raise ValidationError("; ".join(problems))
    return model


def check_model(model: NetworkModel) -> list[str]:
    problems = []
    for link in model.links:
        for device, iface in link.ends():
            if not model.has_interface(device, iface):
                problems.append(f"link endpoint {device}:{iface} does not exist")
    for host in model.hosts:
        if not model.has_interface(host.attached_device, host.attached_if):
            problems.append(f"host {host.name} attaches to missing {host.attached_device}:{host.attached_if}")
        if not addr.is_quad(host.ip):
            problems.append(f"host {host.name} has invalid ip {host.ip!r}")
    return problems


def model_to_dict(model: NetworkModel) -> dict:
    """Inverse of :func:`model_from_dict`, with configs in canonical text."""
    return {
        "devices": [
            {
                "name": name,
                "vendor": model.device_info(name).vendor,
                "model": model.device_info(name).model,
                "configs": canonical_text(model.devices[name]),
            }
            for name in sorted(model.devices)
        ],
        "links": [{"a": f"{l.device_a}:{l.if_a}", "b": f"{l.device_b}:{l.if_b}"} for l in model.links],
        "hosts": [
            {"name": h.name, "device": h.attached_device, "if": h.attached_if, "ip": h.ip} for h in model.hosts
        ],
    }


def load_topology(path: Union[str, Path]) -> NetworkModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def _merge_interface(old: InterfaceStanza, new: InterfaceStanza) -> InterfaceStanza:
    bindings = {b.direction: b for b in old.acl_bindings}
    bindings.update({b.direction: b for b in new.acl_bindings})
    return InterfaceStanza(
        name=old.name,
        ip_address=new.ip_address if new.ip_address else old.ip_address,
        mask=new.mask if new.ip_address else old.mask,
        admin_state=new.admin_state or old.admin_state,
        description=new.description if new.description is not None else old.description,
        acl_bindings=tuple(bindings[d] for d in sorted(bindings)),
    )


def merge_stanzas(base: DeviceConfigAst, extra: Iterable[Stanza]) -> DeviceConfigAst:
    ifaces = base.interfaces()
    tunnels = base.tunnels()
    acls = {k: list(v.entries) for k, v in base.acls().items()}
    ospf = {k: list(v.networks) for k, v in base.ospf().items()}
    for s in extra:
        if isinstance(s, InterfaceStanza):
            ifaces[s.name] = _merge_interface(ifaces[s.name], s) if s.name in ifaces else s
        elif isinstance(s, TunnelStanza):
            tunnels[s.tunnel_if] = s
        elif isinstance(s, AclStanza):
            entries = acls.setdefault(s.acl_id, [])
            for e in s.entries:
                if e in entries:
                    log.warning("%s: duplicate entry in ACL %s dropped", base.device, s.acl_id)
                else:
                    entries.append(e)
        elif isinstance(s, OspfStanza):
            nets = ospf.setdefault(s.process_id, [])
            nets += [n for n in s.networks if n not in nets]
    stanzas = list(ifaces.values()) + list(tunnels.values())
    stanzas += [AclStanza(k, tuple(v)) for k, v in acls.items()]
    stanzas += [OspfStanza(k, tuple(v)) for k, v in ospf.items()]
    return DeviceConfigAst(base.device, tuple(stanzas))


def apply_candidate(model: NetworkModel, bundle) -> NetworkModel:
    """Return a new model with the bundle merged over ``model``; ``model`` is untouched."""
    unknown = [d for d in bundle.devices if d not in model.devices]
    if unknown:
        raise ApplicabilityError(f"unknown device {', '.join(unknown)}")
    devices = dict(model.devices)
    for section in bundle.sections:
        parsed = parse_config(section.device, section.text).ast
        devices[section.device] = merge_stanzas(devices[section.device], parsed.stanzas)
    return dataclasses.replace(model, devices=devices)
