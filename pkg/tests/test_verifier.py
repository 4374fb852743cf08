from datetime import datetime, timezone

import pytest

from netcfg.config import AclEntry, AddressMatch, ConfigBundle, ConfigSection, PortMatch, apply_candidate
from netcfg.intent import AclParams, CpParams, IntentClass, LowLevelDescription
from netcfg.verifier import (
    ERROR_CODES,
    Packet,
    VerificationError,
    VerificationReport,
    check_syntax,
    make_report,
    representative_packets,
    simulate_acl,
    suggest,
    verify,
    verify_bundle,
)
from netcfg.verifier.suggest import closest_command, edit_distance

T0 = datetime(2024, 1, 1, tzinfo=timezone.utc)


def bundle(*pairs):
    return ConfigBundle(tuple(ConfigSection(d, t) for d, t in pairs))


# -- check_syntax -------------------------------------------------------------------

def test_clean_bundle():
    assert check_syntax(bundle(("R2", "interface GigabitEthernet0/1\n shutdown"))) == []


def test_misspelling_reports_device_and_line():
    errors = check_syntax(bundle(("R2", "interface GigabitEthernet0/1\n ip addres 10.0.0.1 255.255.255.0")))
    assert len(errors) == 1
    e = errors[0]
    assert (e.code, e.device, e.location) == ("SYNTAX", "R2", "line 2, column 5")
    assert "addres" in e.message


def test_errors_ordered_by_device_then_line():
    errors = check_syntax(bundle(
        ("R3", "interface Gig0/0\n ip addres 10.0.0.1 255.255.255.0"),
        ("R1", "hostnme R1\ninterface Gig0/0\n shutdwn"),
    ))
    assert [(e.device, e.location.split(",")[0]) for e in errors] == [
        ("R1", "line 1"), ("R1", "line 3"), ("R3", "line 2")]


def test_warnings_are_not_syntax_errors():
    assert check_syntax(bundle(("R1", "banner motd hello\nservice timestamps\ninterface Gig0/0\n speed 100"))) == []


# -- simulate_acl -------------------------------------------------------------------

SSH = AclEntry("permit", "tcp", AddressMatch("10.0.1.0", "0.0.0.255"), AddressMatch.host("10.0.3.5"), PortMatch(22))


def test_implicit_deny():
    assert simulate_acl([], Packet("icmp", "1.2.3.4", "5.6.7.8")) == "deny"


def test_first_match_permit():
    assert simulate_acl([SSH], Packet("tcp", "10.0.1.7", "10.0.3.5", 22)) == "permit"


def test_wrong_protocol_falls_through():
    assert simulate_acl([SSH], Packet("udp", "10.0.1.7", "10.0.3.5", 22)) == "deny"


def test_order_matters():
    deny_host = AclEntry("deny", "ip", AddressMatch.host("10.0.1.7"), AddressMatch.any())
    packet = Packet("tcp", "10.0.1.7", "10.0.3.5", 22)
    assert simulate_acl([deny_host, SSH], packet) == "deny"
    assert simulate_acl([SSH, deny_host], packet) == "permit"


def test_packet_port_rule():
    with pytest.raises(ValueError):
        Packet("tcp", "1.1.1.1", "2.2.2.2")
    with pytest.raises(ValueError):
        Packet("icmp", "1.1.1.1", "2.2.2.2", 22)


def test_representative_packets():
    p = AclParams("R3", 110, "permit", "tcp", "10.0.1.0", "0.0.0.255", "10.0.3.5", "0.0.0.0", 22)
    packets = representative_packets(p)
    assert {(x.src_ip, x.dst_ip) for x in packets} == {("10.0.1.1", "10.0.3.5"), ("10.0.1.255", "10.0.3.5")}
    assert all(x.protocol == "tcp" and x.dst_port == 22 for x in packets)


# -- verify -------------------------------------------------------------------------

CP_DOWN = LowLevelDescription("c", IntentClass.CP, ("R2",), CpParams("R2", "GigabitEthernet0/1", admin_state="down"))


def test_cp_goal_met(baseline):
    report = verify_bundle(baseline, bundle(("R2", "interface GigabitEthernet0/1\n shutdown")), CP_DOWN, T0)
    assert report.passed and report.errors == () and report.suggestions == ()


def test_cp_goal_missed_suggests_shutdown(baseline):
    report = verify_bundle(baseline, bundle(("R2", "interface GigabitEthernet0/1\n description x")), CP_DOWN, T0)
    assert [e.code for e in report.errors] == ["IF_STATE_MISMATCH"]
    assert report.suggestions[0].startswith("add 'shutdown' under interface GigabitEthernet0/1")


def test_acl_goal_contradicted(baseline):
    lld = LowLevelDescription("a", IntentClass.ACL, ("R3",), AclParams(
        "R3", 110, "permit", "tcp", "10.0.1.0", "0.0.0.255", "10.0.3.5", "0.0.0.0", 22))
    text = "access-list 110 deny tcp 10.0.1.0 0.0.0.255 host 10.0.3.5 eq 22\naccess-list 110 permit ip any any"
    report = verify_bundle(baseline, bundle(("R3", text)), lld, T0)
    assert [e.code for e in report.errors] == ["ACL_SEMANTICS"]


def test_syntax_short_circuits(baseline):
    report = verify_bundle(baseline, bundle(("R2", "interface GigabitEthernet0/1\n shutdwn")), CP_DOWN, T0)
    assert {e.code for e in report.errors} == {"SYNTAX"}


def test_unknown_device_in_bundle(baseline):
    report = verify_bundle(baseline, bundle(("R9", "interface Gig0/1\n shutdown")), CP_DOWN, T0)
    assert [(e.code, e.device) for e in report.errors] == [("UNKNOWN_DEVICE", "R9")]


def test_verify_is_repeatable(baseline):
    candidate = apply_candidate(baseline, bundle(("R2", "interface GigabitEthernet0/1\n shutdown")))
    first = verify(baseline, candidate, CP_DOWN, T0)
    assert first.passed
    assert verify(baseline, candidate, CP_DOWN, T0) == first


def test_unrelated_stanzas_keep_a_pass(baseline):
    extra = ("interface Loopback9\n ip address 9.9.9.9 255.255.255.255\n"
             "access-list 15 permit host 10.0.1.10")
    base = "interface GigabitEthernet0/1\n shutdown"
    assert verify_bundle(baseline, bundle(("R2", base)), CP_DOWN, T0).passed
    assert verify_bundle(baseline, bundle(("R2", base + "\n" + extra)), CP_DOWN, T0).passed
    assert verify_bundle(baseline, bundle(("R2", base), ("R4", extra)), CP_DOWN, T0).passed


# -- suggestions and reports ---------------------------------------------------------

def test_suggest_empty():
    assert suggest([]) == []


def test_suggest_misspelling():
    e = VerificationError("SYNTAX", "R1", "unknown directive 'addres'", "line 2", " ip addres 10.0.0.1 255.255.255.0")
    assert suggest([e]) == ["unknown directive; did you mean 'ip address'? (R1 at line 2)"]


def test_suggest_if_state():
    up = VerificationError("IF_STATE_MISMATCH", "R4", "down", "GigabitEthernet0/3", "up")
    down = VerificationError("IF_STATE_MISMATCH", "R2", "up", "GigabitEthernet0/1", "down")
    assert suggest([up, down]) == [
        "add 'no shutdown' under interface GigabitEthernet0/3 on R4",
        "add 'shutdown' under interface GigabitEthernet0/1 on R2",
    ]


def test_every_code_has_a_suggestion():
    for code in ERROR_CODES:
        [text] = suggest([VerificationError(code, "R1", "msg", "somewhere", "hint")])
        assert text


@pytest.mark.parametrize("a,b,d", [("", "", 0), ("addres", "address", 1), ("shutdwn", "shutdown", 1),
                                   ("kitten", "sitting", 3), ("abc", "", 3)])
def test_edit_distance(a, b, d):
    assert edit_distance(a, b) == d == edit_distance(b, a)


@pytest.mark.parametrize("line,expected", [
    ("ip addres 10.0.0.1 255.255.255.0", "ip address"), ("shutdwn", "shutdown"),
    ("no shutdwn", "no shutdown"), ("ip address 1.1.1.1 255.0.0.0", None), ("frobnicate", None),
])
def test_closest_command(line, expected):
    assert closest_command(line) == expected


def test_report_invariants():
    e = VerificationError("GOAL_UNMET", "R1", "m")
    with pytest.raises(ValueError):
        VerificationReport(True, "i", IntentClass.CP, (e,))
    with pytest.raises(ValueError):
        VerificationReport(False, "i", IntentClass.CP)
    with pytest.raises(ValueError):
        VerificationError("BOGUS", "R1", "m")


def test_report_json_round_trip():
    e = VerificationError("SYNTAX", "R1", "bad", "line 2", "ip addres")
    report = make_report("i", IntentClass.ACL, [e], T0)
    assert VerificationReport.from_dict(report.to_dict()) == report
    assert set(report.to_dict()) == {"passed", "intent_id", "class", "errors", "suggestions", "checked_at"}
