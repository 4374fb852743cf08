"""End-to-end acceptance criteria, one test per criterion.

Every test records a ``PASS criterion N`` or ``FAIL criterion N`` line; the
lines are printed immediately and again in the terminal summary.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from pathlib import Path

import pytest

from netcfg.backend import BackendDescriptor, FaultPlan, RulesBackend, make_backend
from netcfg.config import canonical_text, parse_config
from netcfg.intent import Intent, IntentClass
from netcfg.orchestrator import OrchestratorConfig, Status, run_batch, run_intent
from netcfg.repo import ConfigsRepo

from tests import test_acl_oracle as acl_oracle
from tests import test_config as config_tests
from tests import test_semantic_catalog as catalog

RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def tree(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_criterion_1_deterministic_batch(tmp_path, baseline, dataset, frozen_clock):
    runs = []
    for name in ("a", "b"):
        repo = ConfigsRepo(tmp_path / name)
        start = time.perf_counter()
        metrics = run_batch(dataset, baseline, OrchestratorConfig(threshold=5), RulesBackend(), repo)
        elapsed = time.perf_counter() - start
        runs.append((metrics, tree(tmp_path / name), elapsed))
    (m1, t1, e1), (m2, t2, e2) = runs
    cycles = Counter(r.cycles for r in m1.results)
    ok = (
        m1.n == 40
        and m1.accuracy == 1.0
        and m1.other_rate == 0.0
        and cycles == Counter({1: 40})
        and all(r.status is Status.APPROVED for r in m1.results)
        and m1.to_json() == m2.to_json()
        and t1 == t2
        and max(e1, e2) < 10.0
    )
    record(1, ok, f"accuracy={m1.accuracy:.3f} other_rate={m1.other_rate:.3f} cycles={dict(cycles)} "
                  f"identical={m1.to_json() == m2.to_json() and t1 == t2} files={len(t1)} "
                  f"slowest_run={max(e1, e2):.2f}s")


def test_criterion_2_seeded_class_faults(baseline, dataset):
    plan = FaultPlan.parse("class:0.1", seed=7)
    bound = plan.bind([i.id for i in dataset])
    chosen = {i.id for i in dataset if bound.active("class", i.id)}
    metrics = run_batch(dataset, baseline, OrchestratorConfig(), RulesBackend(plan))
    rejected = {r.intent_id for r in metrics.results if r.status is Status.REJECTED_OTHER}

    snmp = next(i for i in dataset if "SNMP" in i.text)
    scripted = run_intent(snmp, baseline, OrchestratorConfig(),
                          RulesBackend(FaultPlan.targeted(**{"class": [snmp.id]})))
    ok = (
        len(chosen) == 4
        and rejected == chosen
        and all(r.cycles == 0 for r in metrics.results if r.intent_id in rejected)
        and (scripted.status, scripted.cycles) == (Status.REJECTED_OTHER, 0)
    )
    record(2, ok, f"rejected_other={len(rejected)}/40 matches_seeded_selection={rejected == chosen} "
                  f"snmp={scripted.status.value},cycles={scripted.cycles}")


def test_criterion_3_syntax_fault_schedules(tmp_path, baseline, dataset):
    repo = ConfigsRepo(tmp_path / "first")
    first = run_batch(dataset, baseline, OrchestratorConfig(),
                      RulesBackend(FaultPlan.parse("syntax:1.0", schedule="first-cycle-only")), repo)
    audits_ok = True
    for r in first.results:
        trail = repo.audit_trail(r.intent_id)
        shape = [(t.report.passed, [e.code for e in t.report.errors]) for t in trail]
        audits_ok &= shape == [(False, ["SYNTAX"]), (True, [])]
    converged = all((r.status, r.cycles) == (Status.APPROVED, 2) for r in first.results)

    threshold = 5
    every = run_batch(dataset, baseline, OrchestratorConfig(threshold=threshold),
                      RulesBackend(FaultPlan.parse("syntax:1.0")))
    exhausted = all((r.status, r.cycles) == (Status.EXHAUSTED, threshold) for r in every.results)
    ok = converged and audits_ok and exhausted
    record(3, ok, f"first-cycle-only approved@2={converged} audits_fail_then_pass={audits_ok} "
                  f"every-cycle exhausted@{threshold}={exhausted}")


def test_criterion_4_acl_oracle_equivalence():
    packets = acl_oracle.grid_packets()
    start = time.perf_counter()
    mismatches = sum(len(acl_oracle.grid_mismatches(path, packets)) for path in acl_oracle.ACL_FILES)
    elapsed = time.perf_counter() - start
    cases = len(packets) * len(acl_oracle.ACL_FILES)
    ok = cases >= 50_000 and mismatches == 0 and elapsed < 5.0
    record(4, ok, f"cases={cases} mismatches={mismatches} elapsed={elapsed:.2f}s")


def test_criterion_5_parser_round_trip():
    round_trip_failures = []
    for path in config_tests.VALID:
        first = parse_config("R1", path.read_text(encoding="utf-8"))
        text = canonical_text(first.ast)
        second = parse_config("R1", text)
        if first.errors or second.issues or second.ast != first.ast or canonical_text(second.ast) != text:
            round_trip_failures.append(path.stem)
    issue_failures = [
        path.stem for path in config_tests.MALFORMED
        if config_tests.issue_lines(parse_config("R1", path.read_text(encoding="utf-8")))
        != config_tests.expected_issues(path)
    ]
    total = len(config_tests.VALID) + len(config_tests.MALFORMED)
    ok = total >= 30 and not round_trip_failures and not issue_failures
    record(5, ok, f"fixtures={total} valid={len(config_tests.VALID)} malformed={len(config_tests.MALFORMED)} "
                  f"failures={round_trip_failures + issue_failures}")


def test_criterion_6_semantic_table(baseline):
    shape = Counter()
    codes = set()
    wrong = []
    for name, lld_data, candidate, expected in catalog.CASES:
        report = catalog.run_case(baseline, lld_data, candidate)
        got = sorted(e.code for e in report.errors)
        if got != expected or report.passed != (not expected):
            wrong.append(name)
        shape[(lld_data["class"], bool(expected))] += 1
        codes.update(expected)
    balanced = all(shape[(c, False)] >= 3 and shape[(c, True)] >= 2 for c in ("CP", "ACL", "RP", "TN"))
    ok = len(catalog.CASES) >= 20 and balanced and {"OSPF_ADJACENCY", "TUNNEL_ASYMMETRY"} <= codes and not wrong
    record(6, ok, f"cases={len(catalog.CASES)} balanced={balanced} "
                  f"covers_adjacency_and_asymmetry={ {'OSPF_ADJACENCY', 'TUNNEL_ASYMMETRY'} <= codes} wrong={wrong}")


@pytest.mark.skipif(not os.environ.get("NETCFG_LLM_URL"), reason="NETCFG_LLM_URL is not set")
def test_criterion_7_live_backend_smoke(baseline):
    backend = make_backend(BackendDescriptor.from_env("http"))
    intent = Intent("live-cp", "Shut down Gig0/1 on R2", IntentClass.CP)
    result = run_intent(intent, baseline, OrchestratorConfig(), backend)
    allowed = {Status.APPROVED, Status.EXHAUSTED, Status.REJECTED_OTHER}
    record(7, result.status in allowed, f"status={result.status.value} cycles={result.cycles}")
