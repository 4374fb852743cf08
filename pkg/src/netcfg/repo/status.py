"""Compact, deterministic network status snapshots for prompt embedding."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from netcfg.config.model import NetworkModel


@dataclass(frozen=True)
class NetworkStatusSnapshot:
    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    def device_names(self) -> list[str]:
        return [d["name"] for d in self.data["devices"]]

    def neighbors(self, name: str) -> set[str]:
        out = set()
        for link in self.data["links"]:
            a, b = link["a"].split(":")[0], link["b"].split(":")[0]
            if a == name:
                out.add(b)
            elif b == name:
                out.add(a)
        return out

    def restrict(self, names: Iterable[str]) -> "NetworkStatusSnapshot":
        keep = set(names)
        return NetworkStatusSnapshot({
            "devices": [d for d in self.data["devices"] if d["name"] in keep],
            "links": [
                link for link in self.data["links"]
                if link["a"].split(":")[0] in keep and link["b"].split(":")[0] in keep
            ],
            "hosts": [h for h in self.data["hosts"] if h["device"] in keep],
        })


def network_status(model: NetworkModel) -> NetworkStatusSnapshot:
    devices = []
    for name in sorted(model.devices):
        ast = model.devices[name]
        info = model.device_info(name)
        interfaces = []
        for iface in ast.interfaces().values():
            entry = {"name": iface.name, "state": iface.effective_state}
            if iface.ip_address:
                entry["ip"] = iface.ip_address
                entry["mask"] = iface.mask
            for b in iface.acl_bindings:
                entry[f"acl_{b.direction}"] = b.acl_id
            interfaces.append(entry)
        tunnels = [
            {k: v for k, v in {
                "name": t.tunnel_if, "ip": t.tunnel_ip, "mask": t.tunnel_mask,
                "source": t.source_if, "destination": t.destination_ip, "mode": t.mode,
            }.items() if v is not None}
            for t in ast.tunnels().values()
        ]
        ospf = [
            {"process_id": o.process_id,
             "networks": [{"prefix": n.prefix, "wildcard": n.wildcard, "area": n.area} for n in o.networks]}
            for o in ast.ospf().values()
        ]
        device = {"name": name, "vendor": info.vendor, "model": info.model, "interfaces": interfaces}
        if tunnels:
            device["tunnels"] = tunnels
        if ospf:
            device["ospf"] = ospf
        if ast.acls():
            device["acls"] = sorted(ast.acls())
        devices.append(device)
    links = [{"a": f"{l.device_a}:{l.if_a}", "b": f"{l.device_b}:{l.if_b}"} for l in model.links]
    hosts = [{"name": h.name, "device": h.attached_device, "if": h.attached_if, "ip": h.ip} for h in model.hosts]
    return NetworkStatusSnapshot({"devices": devices, "links": links, "hosts": hosts})
