"""Closed loop per intent: classify, translate, generate, verify, refine, store.

One intent runs strictly in sequence. A cycle is one attempt to produce a
verified bundle; it ends with exactly one report, which is also written to
the audit trail. Translation and extraction failures consume a cycle just
like a failed verification does.
"""

from __future__ import annotations

import json
import logging
import statistics
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from netcfg import clock
from netcfg.backend import Backend, BackendDescriptor, DecodingParams, extract_class, extract_lld, split_config_bundle
from netcfg.config.model import ConfigBundle, NetworkModel
from netcfg.errors import BackendError, EmptyCompletion, ExtractionError, SchemaError
from netcfg.intent import Intent, IntentClass, LowLevelDescription, validate_lld
from netcfg.prompts import (
    DEFAULT_STATUS_BUDGET,
    build_classification_prompt,
    build_generation_prompt,
    build_refine_prompt,
    build_translation_prompt,
)
from netcfg.repo import ConfigsRepo, RepoEntry, network_status
from netcfg.verifier import VerificationError, VerificationReport, make_report, verify_bundle

log = logging.getLogger(__name__)

STAGES = ("classify", "translate", "generate", "verify", "total")


class Status(str, Enum):
    APPROVED = "approved"
    REJECTED_OTHER = "rejected_other"
    EXHAUSTED = "exhausted"
    BACKEND_FAILED = "backend_failed"


@dataclass(frozen=True)
class OrchestratorConfig:
    threshold: int = 5
    decoding: DecodingParams = DecodingParams()
    backend: BackendDescriptor = BackendDescriptor()
    workers: int = 1
    status_budget: int = DEFAULT_STATUS_BUDGET

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("threshold must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class OrchestrationResult:
    intent_id: str
    status: Status
    cls: IntentClass
    cycles: int
    final_bundle: Optional[ConfigBundle]
    reports: tuple[VerificationReport, ...]
    timings: dict  # stage -> milliseconds
    expected_class: Optional[IntentClass] = None
    complexity: str = "simple"
    version: Optional[int] = None
    lld: Optional[LowLevelDescription] = None
    error: Optional[str] = None

    def __post_init__(self):
        if self.status is Status.APPROVED and not (self.reports and self.reports[-1].passed and self.final_bundle):
            raise ValueError("approved results need a final bundle and a passing last report")
        if self.status is Status.REJECTED_OTHER and (self.cycles or self.cls is not IntentClass.OTHER):
            raise ValueError("rejected_other results have class Other and no cycles")
        if len(self.reports) != self.cycles:
            raise ValueError("one report per cycle")

    def summary(self) -> str:
        text = f"{self.status.value}, class={self.cls.value}, cycles={self.cycles}"
        if self.version is not None:
            text += f", version={self.version}"
        if self.error:
            text += f", error={self.error}"
        return text

    def to_dict(self) -> dict:
        return {
            "intent_id": self.intent_id,
            "status": self.status.value,
            "class": self.cls.value,
            "expected_class": self.expected_class.value if self.expected_class else None,
            "complexity": self.complexity,
            "cycles": self.cycles,
            "version": self.version,
            "error": self.error,
            "reports": [r.to_dict() for r in self.reports],
            "final_bundle": self.final_bundle.render() if self.final_bundle else None,
        }


class _Timer:
    def __init__(self):
        self.ms = dict.fromkeys(STAGES, 0.0)

    def stage(self, name: str):
        timer = self

        class _Span:
            def __enter__(self):
                self.start = clock.monotonic()

            def __exit__(self, *exc):
                timer.ms[name] += (clock.monotonic() - self.start) * 1000.0

        return _Span()


def _failure_report(intent_id: str, cls: IntentClass, code: str, device: str, message: str) -> VerificationReport:
    return make_report(intent_id, cls, [VerificationError(code, device, message)], clock.now())


def _lld_issue_report(lld: LowLevelDescription, issues) -> VerificationReport:
    errors = [
        VerificationError("UNKNOWN_DEVICE" if i.code == "UNKNOWN_DEVICE" else "GOAL_UNMET", "-",
                          f"low-level description: {i.message}")
        for i in issues
    ]
    return make_report(lld.intent_id, lld.cls, errors, clock.now())


def run_intent(intent: Intent, model: NetworkModel, cfg: OrchestratorConfig, backend: Backend,
               repo: Optional[ConfigsRepo] = None) -> OrchestrationResult:
    timer = _Timer()
    start = clock.monotonic()
    reports: list[VerificationReport] = []
    cls = IntentClass.OTHER
    lld: Optional[LowLevelDescription] = None
    run = repo.begin_run(intent.id) if repo else None

    def finish(status: Status, bundle=None, version=None, error=None) -> OrchestrationResult:
        timer.ms["total"] = (clock.monotonic() - start) * 1000.0
        return OrchestrationResult(
            intent.id, status, cls, len(reports), bundle, tuple(reports), dict(timer.ms),
            intent.expected_class, intent.complexity.value, version, lld, error,
        )

    def record(bundle: ConfigBundle, report: VerificationReport) -> None:
        reports.append(report)
        if repo:
            repo.record_attempt(intent.id, run, len(reports), bundle, report)

    try:
        with timer.stage("classify"):
            raw = backend.complete(build_classification_prompt(intent, IntentClass.defined()), cfg.decoding)
            cls = extract_class(raw)
    except EmptyCompletion:
        cls = IntentClass.OTHER
    except BackendError as exc:
        return finish(Status.BACKEND_FAILED, error=str(exc))
    if cls is IntentClass.OTHER:
        return finish(Status.REJECTED_OTHER)

    status = network_status(model)
    previous: Optional[ConfigBundle] = None
    for cycle in range(1, cfg.threshold + 1):
        try:
            if lld is None:
                with timer.stage("translate"):
                    prompt = build_translation_prompt(intent, cls, status, cfg.status_budget, attempt=cycle)
                    try:
                        candidate = extract_lld(backend.complete(prompt, cfg.decoding), cls, intent.id)
                    except (ExtractionError, SchemaError, EmptyCompletion) as exc:
                        record(ConfigBundle(), _failure_report(intent.id, cls, "SYNTAX", "-",
                                                               f"low-level description unreadable: {exc}"))
                        continue
                    issues = validate_lld(candidate, model)
                    if issues:
                        record(ConfigBundle(), _lld_issue_report(candidate, issues))
                        continue
                    lld = candidate
            with timer.stage("generate"):
                if previous is None:
                    prompt = build_generation_prompt(lld, model.inventory, attempt=cycle)
                else:
                    prompt = build_refine_prompt(previous, reports[-1], lld, model.inventory, attempt=cycle)
                try:
                    bundle = split_config_bundle(backend.complete(prompt, cfg.decoding))
                except (ExtractionError, EmptyCompletion) as exc:
                    previous = ConfigBundle()
                    record(previous, _failure_report(intent.id, cls, "SYNTAX", "-",
                                                     f"configuration unreadable: {exc}"))
                    continue
            with timer.stage("verify"):
                report = verify_bundle(model, bundle, lld, clock.now())
            record(bundle, report)
            if report.passed:
                version = None
                if repo:
                    version = repo.store_approved(RepoEntry(intent.id, bundle, report))
                return finish(Status.APPROVED, bundle, version)
            previous = bundle
        except BackendError as exc:
            return finish(Status.BACKEND_FAILED, error=str(exc))
    log.info("intent %s exhausted after %d cycles", intent.id, cfg.threshold)
    return finish(Status.EXHAUSTED)


# -- batches -----------------------------------------------------------------


@dataclass(frozen=True)
class BatchMetrics:
    results: tuple[OrchestrationResult, ...]
    threshold: int = 5

    @property
    def n(self) -> int:
        return len(self.results)

    @property
    def accuracy(self) -> float:
        return sum(r.cls is r.expected_class for r in self.results) / self.n

    @property
    def other_rate(self) -> float:
        return sum(r.cls is IntentClass.OTHER for r in self.results) / self.n

    def confusion(self) -> dict[str, int]:
        counts = Counter(
            f"{r.expected_class.value if r.expected_class else '?'}->{r.cls.value}" for r in self.results
        )
        return dict(sorted(counts.items()))

    def cycle_histogram(self) -> dict[str, dict[str, int]]:
        out: dict[str, Counter] = {}
        for r in self.results:
            out.setdefault(r.complexity, Counter())[str(r.cycles)] += 1
        return {k: dict(sorted(v.items(), key=lambda kv: int(kv[0]))) for k, v in sorted(out.items())}

    def statuses(self) -> dict[str, int]:
        return dict(sorted(Counter(r.status.value for r in self.results).items()))

    def timing_aggregates(self) -> dict[str, dict[str, float]]:
        out = {}
        for stage in STAGES:
            values = [r.timings.get(stage, 0.0) for r in self.results]
            out[stage] = {
                "p50": round(statistics.median(values), 3),
                "mean": round(statistics.fmean(values), 3),
                "max": round(max(values), 3),
            }
        return out

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "intents": self.n,
            "threshold": self.threshold,
            "accuracy": round(self.accuracy, 6),
            "other_rate": round(self.other_rate, 6),
            "confusion": self.confusion(),
            "cycles": self.cycle_histogram(),
            "statuses": self.statuses(),
            "timings_ms": self.timing_aggregates(),
            "results": [
                {
                    "intent_id": r.intent_id,
                    "status": r.status.value,
                    "class": r.cls.value,
                    "expected_class": r.expected_class.value if r.expected_class else None,
                    "cycles": r.cycles,
                    "version": r.version,
                }
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        return path


def run_batch(dataset: Sequence[Intent], model: NetworkModel, cfg: OrchestratorConfig, backend: Backend,
              repo: Optional[ConfigsRepo] = None) -> BatchMetrics:
    if not dataset:
        raise ValueError("dataset is empty")
    ids = [i.id for i in dataset]
    if len(set(ids)) != len(ids):
        raise ValueError("intent ids must be unique within a dataset")
    if hasattr(backend, "bind"):
        backend.bind(ids)
    ordered = sorted(dataset, key=lambda i: i.id)
    if cfg.workers == 1:
        results = [run_intent(i, model, cfg, backend, repo) for i in ordered]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(lambda i: run_intent(i, model, cfg, backend, repo), ordered))
    return BatchMetrics(tuple(results), cfg.threshold)
