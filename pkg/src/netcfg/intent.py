"""Intents, intent classes and the low-level description (LLD) schema.

An LLD is the structured JSON translation of an intent. Its canonical JSON
encoding uses exactly the keys below; optional fields are omitted when unset.

    {"intent_id": "i1", "class": "CP", "targets": ["R2"],
     "params": {"device": "R2", "interface": "GigabitEthernet0/1", "admin_state": "down"}}
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Optional, Union

from netcfg import addr
from netcfg.config.names import is_virtual, normalize_interface
from netcfg.config.parser import parse_area
from netcfg.errors import ParseError, SchemaError, ValidationError

if TYPE_CHECKING:
    from netcfg.config.model import NetworkModel


class IntentClass(str, Enum):
    CP = "CP"
    RP = "RP"
    ACL = "ACL"
    TN = "TN"
    OTHER = "Other"

    @classmethod
    def defined(cls) -> list["IntentClass"]:
        """The four classes that can be translated; Other is a terminal sink."""
        return [cls.CP, cls.RP, cls.ACL, cls.TN]

    def __str__(self) -> str:
        return self.value


CLASS_DEFINITIONS = {
    IntentClass.CP: "configuration of interface properties (addresses, admin state, descriptions)",
    IntentClass.RP: "routing protocol configuration (OSPF processes, areas, advertised networks)",
    IntentClass.ACL: "access control lists that permit or deny traffic",
    IntentClass.TN: "tunnels between two devices (GRE)",
}


class Complexity(str, Enum):
    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class Intent:
    id: str
    text: str
    expected_class: Optional[IntentClass] = None
    complexity: Complexity = Complexity.SIMPLE

    def __post_init__(self):
        if not isinstance(self.text, str) or not self.text.strip():
            raise ValidationError(f"intent {self.id!r} has empty text")
        if self.expected_class is IntentClass.OTHER:
            raise ValidationError("ground-truth class cannot be Other")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"id": self.id, "text": self.text, "complexity": self.complexity.value}
        if self.expected_class is not None:
            out["expected_class"] = self.expected_class.value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def parse_intent_record(line: str) -> Intent:
    """Decode one JSONL dataset line; unknown fields are ignored."""
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed intent record: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("intent record must be a JSON object")
    if "id" not in data or "text" not in data:
        raise ParseError("intent record needs 'id' and 'text'")
    try:
        expected = data.get("expected_class")
        return Intent(
            id=str(data["id"]),
            text=data["text"],
            expected_class=IntentClass(expected) if expected is not None else None,
            complexity=Complexity(data.get("complexity", "simple")),
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def load_dataset(path) -> list[Intent]:
    intents = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                intents.append(parse_intent_record(line))
    return intents


# -- low-level description -----------------------------------------------


@dataclass(frozen=True)
class CpParams:
    device: str
    interface: str
    ip_address: Optional[str] = None
    mask: Optional[str] = None
    admin_state: Optional[str] = None
    description: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "interface", normalize_interface(self.interface))


@dataclass(frozen=True)
class AclParams:
    device: str
    acl_id: int
    action: str
    protocol: str
    src_prefix: str
    src_wildcard: str
    dst_prefix: Optional[str] = None
    dst_wildcard: Optional[str] = None
    dst_port: Optional[int] = None
    apply_to_interface: Optional[str] = None
    direction: Optional[str] = None

    def __post_init__(self):
        if self.apply_to_interface:
            object.__setattr__(self, "apply_to_interface", normalize_interface(self.apply_to_interface))


@dataclass(frozen=True)
class NetworkPrefix:
    prefix: str
    wildcard: str


@dataclass(frozen=True)
class RpParams:
    device: str
    ospf_process_id: int
    area: int
    networks: tuple[NetworkPrefix, ...]


@dataclass(frozen=True)
class TunnelEndpoint:
    device: str
    tunnel_if: str
    source_if: str
    destination_ip: str
    tunnel_ip: str
    tunnel_mask: str

    def __post_init__(self):
        object.__setattr__(self, "tunnel_if", normalize_interface(self.tunnel_if))
        object.__setattr__(self, "source_if", normalize_interface(self.source_if))


@dataclass(frozen=True)
class TnParams:
    endpoint_a: TunnelEndpoint
    endpoint_b: TunnelEndpoint
    mode: str = "gre"


Params = Union[CpParams, AclParams, RpParams, TnParams]

_PARAM_TYPES = {
    IntentClass.CP: CpParams,
    IntentClass.ACL: AclParams,
    IntentClass.RP: RpParams,
    IntentClass.TN: TnParams,
}


@dataclass(frozen=True)
class LowLevelDescription:
    intent_id: str
    cls: IntentClass
    targets: tuple[str, ...]
    params: Params

    def to_dict(self) -> dict:
        return {
            "intent_id": self.intent_id,
            "class": self.cls.value,
            "targets": list(self.targets),
            "params": _params_to_dict(self.params),
        }

    def encode(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def decode(cls, text: str) -> "LowLevelDescription":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from exc
        return lld_from_dict(data)


def _params_to_dict(params) -> dict:
    out = {}
    for f in dataclasses.fields(params):
        value = getattr(params, f.name)
        if value is None:
            continue
        if isinstance(value, tuple):
            value = [dataclasses.asdict(v) for v in value]
        elif dataclasses.is_dataclass(value):
            value = dataclasses.asdict(value)
        out[f.name] = value
    return out


def _expect(data: Any, kind, where: str):
    if not isinstance(data, kind) or isinstance(data, bool) and kind is not bool:
        raise SchemaError(f"{where}: expected {getattr(kind, '__name__', kind)}, got {type(data).__name__}")
    return data


def _int_field(value: Any, where: str) -> int:
    if isinstance(value, str) and value.strip().isdigit():
        return int(value)
    return _expect(value, int, where)


def _build(kind, data: Any, where: str):
    """Decode a flat params object into dataclass ``kind``; keys must match exactly."""
    _expect(data, dict, where)
    fields = {f.name: f for f in dataclasses.fields(kind)}
    extra = sorted(set(data) - set(fields))
    if extra:
        raise SchemaError(f"{where}: unexpected keys {extra}")
    values = {}
    for name, f in fields.items():
        if name not in data or data[name] is None:
            if f.default is dataclasses.MISSING:
                raise SchemaError(f"{where}: missing key '{name}'")
            continue
        value = data[name]
        if name in ("acl_id", "ospf_process_id", "dst_port"):
            value = _int_field(value, f"{where}.{name}")
        elif name == "area":
            area = parse_area(value)
            if area is None:
                raise SchemaError(f"{where}.area: invalid area {value!r}")
            value = area
        elif name == "networks":
            _expect(value, list, f"{where}.networks")
            value = tuple(_build(NetworkPrefix, n, f"{where}.networks[{i}]") for i, n in enumerate(value))
        elif name in ("endpoint_a", "endpoint_b"):
            value = _build(TunnelEndpoint, value, f"{where}.{name}")
        else:
            value = _expect(value, str, f"{where}.{name}")
        values[name] = value
    return kind(**values)


def lld_from_dict(data: Any, default_class: Optional[IntentClass] = None,
                  default_intent_id: Optional[str] = None) -> LowLevelDescription:
    """Structural decode (keys and JSON types); semantic checks live in validate_lld."""
    _expect(data, dict, "lld")
    data = dict(data)
    if default_intent_id is not None:
        data.setdefault("intent_id", default_intent_id)
    if default_class is not None:
        data.setdefault("class", default_class.value)
    extra = sorted(set(data) - {"intent_id", "class", "targets", "params"})
    if extra:
        raise SchemaError(f"lld: unexpected keys {extra}")
    for key in ("intent_id", "class", "targets", "params"):
        if key not in data:
            raise SchemaError(f"lld: missing key '{key}'")
    try:
        cls = IntentClass(_expect(data["class"], str, "lld.class").strip().upper().replace("OTHER", "Other"))
    except ValueError:
        raise SchemaError(f"lld.class: unknown class {data['class']!r}") from None
    if cls is IntentClass.OTHER:
        raise SchemaError("lld.class: Other cannot be translated")
    if default_class is not None and cls is not default_class:
        raise SchemaError(f"lld.class: expected {default_class.value}, got {cls.value}")
    targets = _expect(data["targets"], list, "lld.targets")
    for t in targets:
        _expect(t, str, "lld.targets[]")
    params = _build(_PARAM_TYPES[cls], data["params"], "lld.params")
    return LowLevelDescription(str(data["intent_id"]), cls, tuple(targets), params)


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


def _devices_of(params) -> list[str]:
    if isinstance(params, TnParams):
        return [params.endpoint_a.device, params.endpoint_b.device]
    return [params.device]


def validate_lld(lld: LowLevelDescription, model: "NetworkModel") -> list[ValidationIssue]:
    """Check LLD invariants against the model; returns issues instead of raising."""
    issues: list[ValidationIssue] = []

    def bad(code, message):
        issues.append(ValidationIssue(code, message))

    def quad(value, what):
        if value is not None and not addr.is_quad(value):
            bad("INVALID_ADDRESS", f"invalid {what} {value!r}")
            return False
        return value is not None

    def iface(device, name, may_create=False):
        if device in model.devices and not model.has_interface(device, name):
            if not (may_create and is_virtual(name)):
                bad("UNKNOWN_INTERFACE", f"unknown interface {name} on {device}")

    if lld.cls is IntentClass.OTHER:
        bad("INVALID_CLASS", "class Other cannot be translated")
        return issues
    if not lld.targets:
        bad("EMPTY_TARGETS", "targets is empty")
    seen = set()
    for name in list(lld.targets) + _devices_of(lld.params):
        if name not in model.devices and name not in seen:
            bad("UNKNOWN_DEVICE", f"unknown device {name}")
        seen.add(name)
    for name in _devices_of(lld.params):
        if name not in lld.targets:
            bad("TARGET_MISMATCH", f"device {name} missing from targets")

    p = lld.params
    if isinstance(p, CpParams):
        iface(p.device, p.interface, may_create=True)
        quad(p.ip_address, "ip_address")
        if quad(p.mask, "mask") and not addr.is_netmask(p.mask):
            bad("INVALID_ADDRESS", f"non-contiguous mask {p.mask}")
        if (p.ip_address is None) != (p.mask is None):
            bad("INVALID_VALUE", "ip_address and mask must be given together")
        if p.admin_state not in (None, "up", "down"):
            bad("INVALID_VALUE", f"admin_state must be up or down, got {p.admin_state!r}")
    elif isinstance(p, AclParams):
        if not (1 <= p.acl_id <= 199 or 1300 <= p.acl_id <= 2699):
            bad("INVALID_VALUE", f"acl_id {p.acl_id} out of range")
        if p.action not in ("permit", "deny"):
            bad("INVALID_VALUE", f"action must be permit or deny, got {p.action!r}")
        if p.protocol not in ("ip", "tcp", "udp", "icmp"):
            bad("INVALID_VALUE", f"unsupported protocol {p.protocol!r}")
        quad(p.src_prefix, "src_prefix")
        quad(p.src_wildcard, "src_wildcard")
        quad(p.dst_prefix, "dst_prefix")
        quad(p.dst_wildcard, "dst_wildcard")
        if (p.dst_prefix is None) != (p.dst_wildcard is None):
            bad("INVALID_VALUE", "dst_prefix and dst_wildcard must be given together")
        if p.dst_port is not None:
            if p.protocol not in ("tcp", "udp"):
                bad("PORT_PROTOCOL", "port requires tcp/udp")
            if not 1 <= p.dst_port <= 65535:
                bad("INVALID_VALUE", f"dst_port {p.dst_port} out of range")
        if p.apply_to_interface:
            iface(p.device, p.apply_to_interface)
        if p.direction not in (None, "in", "out"):
            bad("INVALID_VALUE", f"direction must be in or out, got {p.direction!r}")
    elif isinstance(p, RpParams):
        if not 1 <= p.ospf_process_id <= 65535:
            bad("INVALID_VALUE", f"ospf_process_id {p.ospf_process_id} out of range")
        if not p.networks:
            bad("INVALID_VALUE", "networks is empty")
        for n in p.networks:
            quad(n.prefix, "prefix")
            quad(n.wildcard, "wildcard")
    elif isinstance(p, TnParams):
        if p.mode != "gre":
            bad("INVALID_VALUE", f"unsupported tunnel mode {p.mode!r}")
        for end in (p.endpoint_a, p.endpoint_b):
            if not end.tunnel_if.startswith("Tunnel"):
                bad("INVALID_VALUE", f"{end.tunnel_if} is not a tunnel interface")
            iface(end.device, end.source_if)
            quad(end.destination_ip, "destination_ip")
            quad(end.tunnel_ip, "tunnel_ip")
            if quad(end.tunnel_mask, "tunnel_mask") and not addr.is_netmask(end.tunnel_mask):
                bad("INVALID_ADDRESS", f"non-contiguous mask {end.tunnel_mask}")
        if p.endpoint_a.device == p.endpoint_b.device:
            bad("INVALID_VALUE", "tunnel endpoints must be on different devices")
    return issues
