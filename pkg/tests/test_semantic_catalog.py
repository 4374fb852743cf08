"""Table of (candidate, LLD) pairs with the error codes each must produce.

Expected codes were worked out by hand from the baseline topology: R1-R2 on
10.0.12.0/30, R2-R3 on 10.0.23.0/30, R3-R4 on 10.0.34.0/30, all in area 0.
"""

from __future__ import annotations

from collections import Counter

import pytest

from netcfg.backend import split_config_bundle
from netcfg.intent import lld_from_dict
from netcfg.verifier import verify_bundle
from netcfg.verifier.checks import adjacency_errors


def cp(device, interface, **kw):
    return {"class": "CP", "targets": [device], "params": {"device": device, "interface": interface, **kw}}


def acl(device, acl_id, action, protocol, src, src_wc, dst=None, dst_wc=None, port=None, apply=None, direction=None):
    params = {"device": device, "acl_id": acl_id, "action": action, "protocol": protocol,
              "src_prefix": src, "src_wildcard": src_wc}
    if dst is not None:
        params.update(dst_prefix=dst, dst_wildcard=dst_wc)
    if port is not None:
        params["dst_port"] = port
    if apply is not None:
        params.update(apply_to_interface=apply, direction=direction)
    return {"class": "ACL", "targets": [device], "params": params}


def rp(device, area, *networks, process=1):
    nets = [{"prefix": p, "wildcard": w} for p, w in networks]
    return {"class": "RP", "targets": [device],
            "params": {"device": device, "ospf_process_id": process, "area": area, "networks": nets}}


def tn(a, b, tunnel="Tunnel0"):
    def end(e):
        device, source, dest, ip = e
        return {"device": device, "tunnel_if": tunnel, "source_if": source, "destination_ip": dest,
                "tunnel_ip": ip, "tunnel_mask": "255.255.255.252"}
    return {"class": "TN", "targets": [a[0], b[0]], "params": {"endpoint_a": end(a), "endpoint_b": end(b), "mode": "gre"}}


def tunnel_text(device, tunnel, ip, source, dest, mode=True):
    text = f"{device}\ninterface {tunnel}\n ip address {ip} 255.255.255.252\n tunnel source {source}\n tunnel destination {dest}"
    return text + ("\n tunnel mode gre ip" if mode else "")


TN13 = tn(("R1", "Gi0/1", "10.0.34.1", "172.16.0.1"), ("R3", "Gi0/1", "10.0.12.1", "172.16.0.2"))
TN13_A = tunnel_text("R1", "Tunnel0", "172.16.0.1", "Gi0/1", "10.0.34.1")

CASES = [
    # -- CP
    ("cp-shutdown", cp("R2", "Gi0/1", admin_state="down"), "R2\ninterface Gi0/1\n shutdown", []),
    ("cp-new-loopback", cp("R1", "Loopback5", ip_address="10.255.1.1", mask="255.255.255.255", description="mgmt"),
     "R1\ninterface Loopback5\n description mgmt\n ip address 10.255.1.1 255.255.255.255", []),
    ("cp-bring-up", cp("R4", "Gi0/3", admin_state="up"), "R4\ninterface Gi0/3\n no shutdown", []),
    ("cp-wrong-state", cp("R2", "Gi0/1", admin_state="down"), "R2\ninterface Gi0/1\n no shutdown",
     ["IF_STATE_MISMATCH"]),
    ("cp-wrong-address", cp("R3", "Gi0/0", ip_address="10.0.30.1", mask="255.255.255.0"),
     "R3\ninterface Gi0/0\n ip address 10.0.31.1 255.255.255.0", ["GOAL_UNMET"]),
    ("cp-typo", cp("R1", "Gi0/1", admin_state="down"), "R1\ninterface Gi0/1\n shutdown\n ip addres 1.1.1.1 255.0.0.0",
     ["SYNTAX"]),
    ("cp-unknown-device", cp("R2", "Gi0/1", admin_state="down"), "R9\ninterface Gi0/1\n shutdown",
     ["UNKNOWN_DEVICE"]),
    # -- ACL
    ("acl-ssh-deny-bound",
     acl("R1", 110, "deny", "tcp", "10.0.1.0", "0.0.0.255", "10.0.3.10", "0.0.0.0", 22, "Gi0/0", "in"),
     "R1\naccess-list 110 deny tcp 10.0.1.0 0.0.0.255 host 10.0.3.10 eq 22\naccess-list 110 permit ip any any\n"
     "interface Gi0/0\n ip access-group 110 in", []),
    ("acl-web-permit", acl("R3", 120, "permit", "tcp", "10.0.1.10", "0.0.0.0", "10.0.3.10", "0.0.0.0", 80),
     "R3\naccess-list 120 permit tcp host 10.0.1.10 host 10.0.3.10 eq www", []),
    ("acl-standard-bound", acl("R2", 10, "deny", "ip", "10.0.23.0", "0.0.0.255", apply="Gi0/1", direction="in"),
     "R2\naccess-list 10 deny 10.0.23.0 0.0.0.255\naccess-list 10 permit any\ninterface Gi0/1\n ip access-group 10 in",
     []),
    ("acl-not-applied",
     acl("R1", 110, "deny", "tcp", "10.0.1.0", "0.0.0.255", "10.0.3.10", "0.0.0.0", 22, "Gi0/0", "in"),
     "R1\naccess-list 110 deny tcp 10.0.1.0 0.0.0.255 host 10.0.3.10 eq 22\naccess-list 110 permit ip any any",
     ["ACL_SEMANTICS"]),
    ("acl-shadowed", acl("R2", 140, "deny", "tcp", "10.0.2.0", "0.0.0.255", "0.0.0.0", "255.255.255.255", 23),
     "R2\naccess-list 140 permit ip any any\naccess-list 140 deny tcp 10.0.2.0 0.0.0.255 any eq 23",
     ["ACL_SEMANTICS"]),
    ("acl-wrong-number", acl("R3", 120, "permit", "tcp", "10.0.1.10", "0.0.0.0", "10.0.3.10", "0.0.0.0", 80),
     "R3\naccess-list 121 permit tcp host 10.0.1.10 host 10.0.3.10 eq 80", ["ACL_SEMANTICS"]),
    ("acl-too-narrow-and-unbound",
     acl("R4", 150, "permit", "tcp", "10.0.4.0", "0.0.0.255", "10.0.1.0", "0.0.0.255", 443, "Gi0/0", "in"),
     "R4\naccess-list 150 permit tcp host 10.0.4.10 10.0.1.0 0.0.0.255 eq 443",
     ["ACL_SEMANTICS", "ACL_SEMANTICS"]),
    # -- RP
    ("rp-lan", rp("R2", 0, ("10.0.2.0", "0.0.0.255")), "R2\nrouter ospf 1\n network 10.0.2.0 0.0.0.255 area 0", []),
    ("rp-loopback-area1", rp("R3", 1, ("3.3.3.3", "0.0.0.0")),
     "R3\nrouter ospf 1\n network 3.3.3.3 0.0.0.0 area 1", []),
    ("rp-new-process", rp("R4", 0, ("4.4.4.4", "0.0.0.0"), process=10),
     "R4\nrouter ospf 10\n network 4.4.4.4 0.0.0.0 area 0", []),
    ("rp-too-narrow", rp("R2", 0, ("10.0.2.0", "0.0.0.255")),
     "R2\nrouter ospf 1\n network 10.0.2.0 0.0.0.127 area 0", ["OSPF_COVERAGE"]),
    ("rp-area-mismatch", rp("R1", 1, ("10.0.12.1", "0.0.0.0")),
     "R1\nrouter ospf 1\n network 10.0.12.1 0.0.0.0 area 1", ["OSPF_ADJACENCY"]),
    ("rp-wrong-area", rp("R2", 0, ("10.0.2.0", "0.0.0.255")),
     "R2\nrouter ospf 1\n network 10.0.2.0 0.0.0.255 area 2", ["OSPF_COVERAGE"]),
    # -- TN
    ("tn-r1-r3", TN13, TN13_A + "\n~~~\n" + tunnel_text("R3", "Tunnel0", "172.16.0.2", "Gi0/1", "10.0.12.1"), []),
    ("tn-r2-r4", tn(("R2", "Gi0/1", "10.0.34.2", "172.16.1.1"), ("R4", "Gi0/1", "10.0.12.2", "172.16.1.2"), "Tunnel1"),
     tunnel_text("R2", "Tunnel1", "172.16.1.1", "Gi0/1", "10.0.34.2") + "\n~~~\n"
     + tunnel_text("R4", "Tunnel1", "172.16.1.2", "Gi0/1", "10.0.12.2"), []),
    ("tn-shared-link", tn(("R2", "Gi0/2", "10.0.23.2", "172.16.0.1"), ("R3", "Gi0/2", "10.0.23.1", "172.16.0.2")),
     tunnel_text("R2", "Tunnel0", "172.16.0.1", "Gi0/2", "10.0.23.2") + "\n~~~\n"
     + tunnel_text("R3", "Tunnel0", "172.16.0.2", "Gi0/2", "10.0.23.1"), []),
    ("tn-broken-mirror", TN13,
     TN13_A + "\n~~~\n" + tunnel_text("R3", "Tunnel0", "172.16.0.2", "Gi0/1", "10.0.12.9"),
     ["GOAL_UNMET", "TUNNEL_ASYMMETRY"]),
    ("tn-one-side", TN13, TN13_A, ["TUNNEL_ASYMMETRY"]),
    ("tn-split-subnet", TN13,
     TN13_A + "\n~~~\n" + tunnel_text("R3", "Tunnel0", "172.16.0.6", "Gi0/1", "10.0.12.1"),
     ["GOAL_UNMET", "TUNNEL_ASYMMETRY"]),
    ("tn-mode-missing", TN13,
     TN13_A + "\n~~~\n" + tunnel_text("R3", "Tunnel0", "172.16.0.2", "Gi0/1", "10.0.12.1", mode=False),
     ["GOAL_UNMET", "TUNNEL_ASYMMETRY"]),
]


def run_case(baseline, lld_data, candidate):
    lld = lld_from_dict({"intent_id": "t", **lld_data})
    return verify_bundle(baseline, split_config_bundle(candidate), lld)


@pytest.mark.parametrize("name,lld_data,candidate,expected", CASES, ids=[c[0] for c in CASES])
def test_catalog_case(baseline, name, lld_data, candidate, expected):
    report = run_case(baseline, lld_data, candidate)
    assert sorted(e.code for e in report.errors) == expected
    assert report.passed == (not expected)


def test_catalog_shape():
    per_class = Counter()
    for _, lld_data, _, expected in CASES:
        per_class[(lld_data["class"], bool(expected))] += 1
    assert len(CASES) >= 20
    for cls in ("CP", "ACL", "RP", "TN"):
        assert per_class[(cls, False)] >= 3 and per_class[(cls, True)] >= 2


def test_area_mismatch_names_the_link(baseline):
    report = run_case(baseline, rp("R1", 1, ("10.0.12.1", "0.0.0.0")),
                      "R1\nrouter ospf 1\n network 10.0.12.1 0.0.0.0 area 1")
    (error,) = report.errors
    assert error.location == "R1:GigabitEthernet0/1 <-> R2:GigabitEthernet0/1"
    assert "area 1" in error.message and "area 0" in error.message


def test_baseline_adjacency_is_clean(baseline):
    assert adjacency_errors(baseline) == []
