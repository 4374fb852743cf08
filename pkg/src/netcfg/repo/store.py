"""Directory-tree repository of approved configurations and audit trails.

Layout under ``root``::

    <intent_id>/v<N>/<device>.cfg      canonical text per device
    <intent_id>/v<N>/report.json       final passing report
    <intent_id>/v<N>/meta.json         {intent_id, version, created_at, status}
    <intent_id>/audit/run-<R>/cycle-<C>/{bundle.txt, report.json}
    _baseline/topology.json, _baseline/status.json

Every directory appears via a single ``rename`` of a fully written temp
directory, so readers never see half an entry.
"""

from __future__ import annotations

import json
import os
import re
import shutil
import tempfile
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Optional

from netcfg import clock
from netcfg.config.canonical import canonical_text
from netcfg.config.model import ConfigBundle, ConfigSection, NetworkModel, model_to_dict
from netcfg.config.parser import parse_config
from netcfg.errors import ContractError, NotFound, StorageError
from netcfg.repo.status import network_status
from netcfg.verifier.report import VerificationReport

_VERSION_RE = re.compile(r"^v(\d+)$")
_RUN_RE = re.compile(r"^run-(\d+)$")
_SAFE_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")
BASELINE_DIR = "_baseline"


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class RepoEntry:
    intent_id: str
    bundle: ConfigBundle
    report: VerificationReport
    version: Optional[int] = None
    created_at: Optional[datetime] = None


@dataclass(frozen=True)
class AuditRecord:
    run: int
    cycle: int
    bundle: ConfigBundle
    report: VerificationReport


def canonical_bundle(bundle: ConfigBundle) -> ConfigBundle:
    """Each section rewritten in canonical text; raises ContractError if any section has syntax errors."""
    sections = []
    for section in bundle.sections:
        result = parse_config(section.device, section.text)
        if result.errors:
            issue = result.errors[0]
            raise ContractError(f"{section.device} line {issue.line}: {issue.message}")
        text = canonical_text(result.ast)
        if parse_config(section.device, text).ast != result.ast:
            raise ContractError(f"{section.device} does not survive a canonical round trip")
        sections.append(ConfigSection(section.device, text))
    return ConfigBundle(tuple(sections))


class ConfigsRepo:
    """Single-writer store; reads go straight to immutable files."""

    def __init__(self, root):
        self.root = Path(root)
        self._lock = threading.Lock()
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot create repository at {self.root}: {exc}") from exc

    # -- paths ------------------------------------------------------------

    def _intent_dir(self, intent_id: str) -> Path:
        if not _SAFE_ID.match(intent_id):
            raise ContractError(f"intent id {intent_id!r} is not usable as a directory name")
        return self.root / intent_id

    @staticmethod
    def _numbered(path: Path, pattern: re.Pattern) -> list[int]:
        if not path.is_dir():
            return []
        return sorted(int(m.group(1)) for p in path.iterdir() if (m := pattern.match(p.name)))

    def _publish(self, parent: Path, name: str, files: dict[str, str]) -> None:
        """Write ``files`` into a temp dir beside ``parent/name`` and rename it into place."""
        try:
            parent.mkdir(parents=True, exist_ok=True)
            tmp = Path(tempfile.mkdtemp(prefix=f".{name}-", dir=parent))
            try:
                for fname, text in files.items():
                    (tmp / fname).write_text(text, encoding="utf-8")
                os.rename(tmp, parent / name)
            except BaseException:
                shutil.rmtree(tmp, ignore_errors=True)
                raise
        except OSError as exc:
            raise StorageError(f"cannot write {parent / name}: {exc}") from exc

    # -- approved configurations -------------------------------------------

    def versions(self, intent_id: str) -> list[int]:
        return self._numbered(self._intent_dir(intent_id), _VERSION_RE)

    def store_approved(self, entry: RepoEntry) -> int:
        if not entry.report.passed:
            raise ContractError("only configurations with a passing report can be stored")
        bundle = canonical_bundle(entry.bundle)
        created = entry.created_at or clock.now()
        with self._lock:
            version = (self.versions(entry.intent_id) or [0])[-1] + 1
            files = {f"{s.device}.cfg": s.text for s in bundle.sections}
            files["report.json"] = entry.report.to_json() + "\n"
            files["meta.json"] = _dump({
                "intent_id": entry.intent_id,
                "version": version,
                "created_at": created.isoformat(),
                "status": "approved",
                "devices": bundle.devices,
            })
            self._publish(self._intent_dir(entry.intent_id), f"v{version}", files)
        return version

    def load(self, intent_id: str, version: Optional[int] = None) -> RepoEntry:
        versions = self.versions(intent_id)
        if not versions:
            raise NotFound(f"no approved configuration for {intent_id}")
        version = versions[-1] if version is None else version
        path = self._intent_dir(intent_id) / f"v{version}"
        if not path.is_dir():
            raise NotFound(f"{intent_id} has no version {version}")
        meta = json.loads((path / "meta.json").read_text(encoding="utf-8"))
        sections = tuple(
            ConfigSection(d, (path / f"{d}.cfg").read_text(encoding="utf-8")) for d in meta["devices"]
        )
        report = VerificationReport.from_dict(json.loads((path / "report.json").read_text(encoding="utf-8")))
        return RepoEntry(intent_id, ConfigBundle(sections), report, version,
                         datetime.fromisoformat(meta["created_at"]))

    # -- audit trail ---------------------------------------------------------

    def begin_run(self, intent_id: str) -> int:
        """Reserve the next run number for ``intent_id``."""
        with self._lock:
            audit = self._intent_dir(intent_id) / "audit"
            run = (self._numbered(audit, _RUN_RE) or [0])[-1] + 1
            try:
                (audit / f"run-{run:04d}").mkdir(parents=True)
            except OSError as exc:
                raise StorageError(f"cannot create audit run for {intent_id}: {exc}") from exc
            return run

    def record_attempt(self, intent_id: str, run: int, cycle: int, bundle: ConfigBundle,
                       report: VerificationReport) -> None:
        with self._lock:
            self._publish(self._intent_dir(intent_id) / "audit" / f"run-{run:04d}", f"cycle-{cycle:02d}", {
                "bundle.txt": bundle.render() + "\n" if bundle.sections else "",
                "report.json": report.to_json() + "\n",
            })

    def audit_trail(self, intent_id: str, run: Optional[int] = None) -> list[AuditRecord]:
        """Every generated bundle with its report, oldest first; ``run`` limits to one run."""
        from netcfg.backend.extract import split_config_bundle

        audit = self._intent_dir(intent_id) / "audit"
        runs = self._numbered(audit, _RUN_RE)
        if not runs:
            raise NotFound(f"intent {intent_id} never ran")
        if run is not None:
            if run not in runs:
                raise NotFound(f"intent {intent_id} has no run {run}")
            runs = [run]
        records = []
        for r in runs:
            run_dir = audit / f"run-{r:04d}"
            for c in self._numbered(run_dir, re.compile(r"^cycle-(\d+)$")):
                cycle_dir = run_dir / f"cycle-{c:02d}"
                text = (cycle_dir / "bundle.txt").read_text(encoding="utf-8")
                bundle = split_config_bundle(text) if text.strip() else ConfigBundle()
                report = VerificationReport.from_dict(
                    json.loads((cycle_dir / "report.json").read_text(encoding="utf-8")))
                records.append(AuditRecord(r, c, bundle, report))
        return records

    def intents(self) -> list[str]:
        return sorted(p.name for p in self.root.iterdir() if p.is_dir() and _SAFE_ID.match(p.name))

    # -- baseline ------------------------------------------------------------

    def store_baseline(self, model: NetworkModel) -> None:
        """Replace the stored baseline topology and its status snapshot."""
        files = {
            "topology.json": _dump(model_to_dict(model)),
            "status.json": _dump(network_status(model).data),
        }
        with self._lock:
            target = self.root / BASELINE_DIR
            if target.exists():
                shutil.rmtree(target)
            self._publish(self.root, BASELINE_DIR, files)
