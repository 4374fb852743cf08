import json
import threading

import pytest

from netcfg.config import ConfigBundle, ConfigSection, apply_candidate, parse_config
from netcfg.config.model import NetworkModel
from netcfg.errors import ContractError, NotFound
from netcfg.intent import IntentClass
from netcfg.repo import ConfigsRepo, RepoEntry, canonical_bundle, network_status
from netcfg.verifier import VerificationError, make_report

PASS = make_report("i1", IntentClass.CP, [])
FAIL = make_report("i1", IntentClass.CP, [VerificationError("SYNTAX", "R2", "bad", "line 2", "ip addres")])
SHUT = ConfigBundle((ConfigSection("R2", "interface Gig0/1\n   shutdown"),))


def test_versions_are_gapless(tmp_path):
    repo = ConfigsRepo(tmp_path)
    assert repo.store_approved(RepoEntry("i1", SHUT, PASS)) == 1
    assert repo.store_approved(RepoEntry("i1", SHUT, PASS)) == 2
    assert repo.store_approved(RepoEntry("i2", SHUT, PASS)) == 1
    assert repo.versions("i1") == [1, 2]
    assert repo.intents() == ["i1", "i2"]


def test_failed_report_is_refused(tmp_path):
    with pytest.raises(ContractError):
        ConfigsRepo(tmp_path).store_approved(RepoEntry("i1", SHUT, FAIL))


def test_syntax_errors_are_refused(tmp_path):
    bad = ConfigBundle((ConfigSection("R2", "interface Gig0/1\n ip addres 1.1.1.1 255.0.0.0"),))
    with pytest.raises(ContractError):
        ConfigsRepo(tmp_path).store_approved(RepoEntry("i1", bad, PASS))


def test_read_your_writes(tmp_path):
    repo = ConfigsRepo(tmp_path)
    version = repo.store_approved(RepoEntry("i1", SHUT, PASS))
    entry = repo.load("i1")
    assert entry.version == version and entry.report == PASS
    stored = entry.bundle.sections[0]
    assert stored.text == "hostname R2\n!\ninterface GigabitEthernet0/1\n shutdown\n"
    assert parse_config("R2", stored.text).ast == parse_config("R2", SHUT.sections[0].text).ast
    assert entry.bundle == canonical_bundle(SHUT)


def test_layout_on_disk(tmp_path, frozen_clock):
    repo = ConfigsRepo(tmp_path)
    repo.store_approved(RepoEntry("i1", SHUT, PASS))
    vdir = tmp_path / "i1" / "v1"
    assert sorted(p.name for p in vdir.iterdir()) == ["R2.cfg", "meta.json", "report.json"]
    meta = json.loads((vdir / "meta.json").read_text())
    assert meta == {"intent_id": "i1", "version": 1, "created_at": "2023-11-14T22:13:20+00:00",
                    "status": "approved", "devices": ["R2"]}
    raw = (vdir / "meta.json").read_text()
    assert raw == json.dumps(meta, sort_keys=True, indent=2) + "\n"
    assert not [p for p in (tmp_path / "i1").iterdir() if p.name.startswith(".")]


def test_load_errors(tmp_path):
    repo = ConfigsRepo(tmp_path)
    with pytest.raises(NotFound):
        repo.load("nothing")
    repo.store_approved(RepoEntry("i1", SHUT, PASS))
    with pytest.raises(NotFound):
        repo.load("i1", 7)
    assert repo.load("i1", 1).version == 1


def test_unsafe_ids(tmp_path):
    repo = ConfigsRepo(tmp_path)
    for bad in ("../x", "", ".hidden", "a/b"):
        with pytest.raises(ContractError):
            repo.versions(bad)


def test_audit_trail(tmp_path):
    repo = ConfigsRepo(tmp_path)
    with pytest.raises(NotFound):
        repo.audit_trail("i1")
    run = repo.begin_run("i1")
    repo.record_attempt("i1", run, 1, ConfigBundle(), FAIL)
    repo.record_attempt("i1", run, 2, SHUT, PASS)
    second = repo.begin_run("i1")
    repo.record_attempt("i1", second, 1, SHUT, PASS)
    trail = repo.audit_trail("i1")
    assert [(r.run, r.cycle, r.report.passed) for r in trail] == [(1, 1, False), (1, 2, True), (2, 1, True)]
    assert trail[0].bundle == ConfigBundle()
    assert trail[1].bundle == SHUT
    assert [r.cycle for r in repo.audit_trail("i1", run=2)] == [1]
    with pytest.raises(NotFound):
        repo.audit_trail("i1", run=9)


def test_concurrent_writers_get_distinct_versions(tmp_path):
    repo = ConfigsRepo(tmp_path)
    versions = []

    def store():
        versions.append(repo.store_approved(RepoEntry("i1", SHUT, PASS)))

    threads = [threading.Thread(target=store) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(versions) == list(range(1, 9))
    assert repo.versions("i1") == list(range(1, 9))


def test_baseline_snapshot(tmp_path, baseline):
    repo = ConfigsRepo(tmp_path)
    repo.store_baseline(baseline)
    repo.store_baseline(baseline)
    status = json.loads((tmp_path / "_baseline" / "status.json").read_text())
    assert [d["name"] for d in status["devices"]] == ["R1", "R2", "R3", "R4"]
    assert "_baseline" not in repo.intents()


def test_status_follows_approved_change(baseline):
    candidate = apply_candidate(baseline, ConfigBundle((ConfigSection("R2", "interface Gig0/1\n shutdown"),)))
    before = {i["name"]: i["state"] for i in network_status(baseline).data["devices"][1]["interfaces"]}
    after = {i["name"]: i["state"] for i in network_status(candidate).data["devices"][1]["interfaces"]}
    assert before["GigabitEthernet0/1"] == "up" and after["GigabitEthernet0/1"] == "down"
    assert {k: v for k, v in after.items() if k != "GigabitEthernet0/1"} == \
           {k: v for k, v in before.items() if k != "GigabitEthernet0/1"}


def test_status_of_empty_model():
    assert network_status(NetworkModel({}, (), ())).data == {"devices": [], "links": [], "hosts": []}


def test_status_is_deterministic(baseline):
    assert network_status(baseline).to_json() == network_status(baseline).to_json()
    text = network_status(baseline).to_json()
    assert text == json.dumps(json.loads(text), sort_keys=True, separators=(",", ":"))
