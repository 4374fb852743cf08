"""Syntax and semantic verification of candidate configurations."""

from netcfg.verifier.acl import Packet, simulate_acl, simulate_acl_many
from netcfg.verifier.checks import (
    check_acl,
    check_interface,
    check_ospf,
    check_syntax,
    check_tunnel,
    make_report,
    representative_packets,
    verify,
    verify_bundle,
)
from netcfg.verifier.report import ERROR_CODES, VerificationError, VerificationReport
from netcfg.verifier.suggest import suggest

__all__ = [
    "Packet", "simulate_acl", "simulate_acl_many", "check_acl", "check_interface",
    "check_ospf", "check_syntax", "check_tunnel", "make_report", "representative_packets",
    "verify", "verify_bundle", "ERROR_CODES", "VerificationError", "VerificationReport", "suggest",
]
