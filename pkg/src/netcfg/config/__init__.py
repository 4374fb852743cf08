"""IOS-like configuration subset: AST, parser, canonical text and network model."""

from netcfg.config.ast import (
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
)
from netcfg.config.canonical import canonical_text
from netcfg.config.model import (
    SEPARATOR,
    ConfigBundle,
    ConfigSection,
    DeviceInfo,
    Host,
    Link,
    NetworkModel,
    apply_candidate,
    load_topology,
    model_from_dict,
    model_to_dict,
)
from netcfg.config.names import normalize_interface
from netcfg.config.parser import ParseResult, SyntaxIssue, parse_config

__all__ = [
    "AclBinding", "AclEntry", "AclStanza", "AddressMatch", "DeviceConfigAst",
    "InterfaceStanza", "OspfNetwork", "OspfStanza", "PortMatch", "TunnelStanza",
    "canonical_text", "SEPARATOR", "ConfigBundle", "ConfigSection", "DeviceInfo",
    "Host", "Link", "NetworkModel", "apply_candidate", "load_topology",
    "model_from_dict", "model_to_dict", "normalize_interface", "ParseResult", "SyntaxIssue", "parse_config",
]
