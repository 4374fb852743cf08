"""Command-line entry point: ``netcfg <command> [flags]``.

Exit codes: 0 success, 1 usage or I/O error, 2 rejected as Other,
3 exhausted or invalid configuration, 4 backend failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from netcfg import __version__
from netcfg.backend import BackendDescriptor, FaultPlan, make_backend, split_config_bundle
from netcfg.backend.faults import SCHEDULES
from netcfg.config.model import ConfigBundle, ConfigSection, NetworkModel, load_topology
from netcfg.errors import ExtractionError, NetCfgError
from netcfg.intent import Intent, load_dataset
from netcfg.orchestrator import OrchestratorConfig, Status, run_batch, run_intent
from netcfg.repo import ConfigsRepo, network_status
from netcfg.verifier import VerificationError, check_syntax

EXIT_OK, EXIT_USAGE, EXIT_OTHER, EXIT_EXHAUSTED, EXIT_BACKEND = 0, 1, 2, 3, 4
STATUS_EXIT = {
    Status.APPROVED: EXIT_OK,
    Status.REJECTED_OTHER: EXIT_OTHER,
    Status.EXHAUSTED: EXIT_EXHAUSTED,
    Status.BACKEND_FAILED: EXIT_BACKEND,
}
JSON_SCHEMA = 1
DEFAULT_METRICS = "netcfg-metrics.json"
DEFAULT_REPO = "netcfg-repo"


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with I/O errors; 2 means rejected_other
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_topology() -> Path:
    return Path(str(resources.files("netcfg") / "data" / "topology.json"))


def _emit_json(data: dict) -> None:
    print(json.dumps({"schema": JSON_SCHEMA, **data}, sort_keys=True, indent=2))


def _load_model(path: Optional[str]) -> NetworkModel:
    return load_topology(path or default_topology())


def _backend(args):
    plan = FaultPlan.parse(args.faults, args.seed, args.fault_schedule)
    descriptor = BackendDescriptor.from_env(args.backend)
    return make_backend(descriptor, plan), descriptor


def _config(args, descriptor: BackendDescriptor) -> OrchestratorConfig:
    return OrchestratorConfig(threshold=args.threshold, backend=descriptor, workers=getattr(args, "workers", 1))


def cmd_run(args) -> int:
    model = _load_model(args.topology)
    backend, descriptor = _backend(args)
    repo = ConfigsRepo(args.out)
    intent = Intent(args.id, args.intent_text)
    result = run_intent(intent, model, _config(args, descriptor), backend, repo)
    if args.json:
        _emit_json(result.to_dict())
    else:
        print(result.summary())
        if result.reports and not result.reports[-1].passed:
            for e in result.reports[-1].errors:
                print(f"  [{e.code}] {e.device}{' ' + e.location if e.location else ''}: {e.message}")
    return STATUS_EXIT[result.status]


def _print_metrics(data: dict) -> None:
    print(f"intents      {data['intents']}")
    print(f"accuracy     {data['accuracy']:.3f}")
    print(f"other-rate   {data['other_rate']:.3f}")
    print("statuses     " + ", ".join(f"{k}={v}" for k, v in data["statuses"].items()))
    print("confusion (expected->predicted)")
    for key, count in data["confusion"].items():
        print(f"  {key:<12} {count}")
    print("cycles by complexity")
    for complexity, hist in data["cycles"].items():
        print(f"  {complexity:<8} " + "  ".join(f"{c}:{n}" for c, n in hist.items()))
    print("timings ms   stage       p50      mean       max")
    for stage, agg in data["timings_ms"].items():
        print(f"             {stage:<9} {agg['p50']:>8.1f} {agg['mean']:>9.1f} {agg['max']:>9.1f}")


def cmd_batch(args) -> int:
    dataset = load_dataset(args.dataset)
    if not dataset:
        print(f"error: dataset {args.dataset} is empty", file=sys.stderr)
        return EXIT_USAGE
    model = _load_model(args.topology)
    backend, descriptor = _backend(args)
    repo = ConfigsRepo(args.out)
    repo.store_baseline(model)
    metrics = run_batch(dataset, model, _config(args, descriptor), backend, repo)
    metrics.write(args.metrics)
    if args.json:
        _emit_json(metrics.to_dict())
    else:
        _print_metrics(metrics.to_dict())
        print(f"metrics written to {args.metrics}")
    return EXIT_OK


def cmd_show(args) -> int:
    repo = ConfigsRepo(args.out)
    if args.audit:
        records = repo.audit_trail(args.intent_id)
        if args.json:
            _emit_json({"intent_id": args.intent_id, "audit": [
                {"run": r.run, "cycle": r.cycle, "bundle": r.bundle.render(), "report": r.report.to_dict()}
                for r in records
            ]})
            return EXIT_OK
        for r in records:
            verdict = "pass" if r.report.passed else "fail " + ",".join(e.code for e in r.report.errors)
            print(f"run {r.run} cycle {r.cycle}: {verdict}")
        return EXIT_OK
    entry = repo.load(args.intent_id, args.version)
    if args.json:
        _emit_json({"intent_id": entry.intent_id, "version": entry.version, "bundle": entry.bundle.render(),
                    "report": entry.report.to_dict(), "created_at": entry.created_at.isoformat()})
        return EXIT_OK
    print(f"# {entry.intent_id} v{entry.version} ({entry.created_at.isoformat()})")
    print(entry.bundle.render())
    return EXIT_OK


def cmd_metrics(args) -> int:
    data = json.loads(Path(args.path).read_text(encoding="utf-8"))
    if args.json:
        _emit_json({"metrics": data})
    else:
        _print_metrics(data)
    return EXIT_OK


def cmd_topology(args) -> int:
    model = _load_model(args.topology)
    if args.store:
        ConfigsRepo(args.out).store_baseline(model)
    status = network_status(model)
    if args.json:
        _emit_json({"status": status.data})
        return EXIT_OK
    for device in status.data["devices"]:
        print(f"{device['name']} ({device['vendor']} {device['model']})")
        for iface in device["interfaces"]:
            address = f"{iface['ip']}/{iface['mask']}" if "ip" in iface else "unassigned"
            print(f"  {iface['name']:<22} {iface['state']:<5} {address}")
    for link in status.data["links"]:
        print(f"link {link['a']} <-> {link['b']}")
    return EXIT_OK


def cmd_validate_config(args) -> int:
    text = Path(args.path).read_text(encoding="utf-8")
    model = _load_model(args.topology)
    if args.device:
        bundle = ConfigBundle((ConfigSection(args.device, text),))
    else:
        try:
            bundle = split_config_bundle(text)
        except ExtractionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_EXHAUSTED
    errors = check_syntax(bundle)
    errors += [
        VerificationError("UNKNOWN_DEVICE", d, f"unknown device {d}") for d in bundle.devices if d not in model.devices
    ]
    if args.json:
        _emit_json({"valid": not errors, "errors": [e.to_dict() for e in errors]})
    else:
        for e in errors:
            print(f"[{e.code}] {e.device}{' ' + e.location if e.location else ''}: {e.message}")
        if not errors:
            print(f"ok: {', '.join(bundle.devices)}")
    return EXIT_OK if not errors else EXIT_EXHAUSTED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netcfg", description="Translate network intents into verified device configurations.")
    parser.add_argument("--version", action="version", version=f"netcfg {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, loop=False):
        p.add_argument("--topology", help="topology JSON (default: bundled 4-router baseline)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if loop:
            p.add_argument("--backend", choices=("rules", "http"), default="rules")
            p.add_argument("--threshold", type=int, default=5)
            p.add_argument("--out", default=DEFAULT_REPO, help="configs repository directory")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--faults", default="", help="kind:rate[,kind:rate]* with kinds class, json, syntax")
            p.add_argument("--fault-schedule", choices=SCHEDULES, default="every-cycle")

    p = sub.add_parser("run", help="translate and verify one intent")
    p.add_argument("intent_text")
    p.add_argument("--id", default="adhoc", help="intent id used in the repository")
    common(p, loop=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("batch", help="run every intent of a JSONL dataset")
    p.add_argument("dataset")
    p.add_argument("--metrics", default=DEFAULT_METRICS)
    p.add_argument("--workers", type=int, default=1)
    common(p, loop=True)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("show", help="print a stored configuration or audit trail")
    p.add_argument("intent_id")
    p.add_argument("--out", default=DEFAULT_REPO)
    p.add_argument("--version", type=int)
    p.add_argument("--audit", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("metrics", help="summarize a metrics file")
    p.add_argument("path", nargs="?", default=DEFAULT_METRICS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("topology", help="show the baseline topology status")
    common(p)
    p.add_argument("--store", action="store_true", help="also save it as the repository baseline")
    p.add_argument("--out", default=DEFAULT_REPO)
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("validate-config", help="syntax-check a configuration file")
    p.add_argument("path")
    p.add_argument("--device", help="treat the whole file as this device's configuration")
    common(p)
    p.set_defaults(func=cmd_validate_config)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, NetCfgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
