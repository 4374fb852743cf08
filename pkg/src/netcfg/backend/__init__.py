"""Text-generation backends and output extraction."""

from __future__ import annotations

from typing import Optional

from netcfg.backend.base import Backend, BackendDescriptor, DecodingParams
from netcfg.backend.extract import extract_class, extract_lld, find_json_object, split_config_bundle
from netcfg.backend.faults import FaultPlan
from netcfg.backend.http import HttpBackend
from netcfg.backend.rules import RulesBackend, rules_backend_answer


def make_backend(descriptor: BackendDescriptor, faults: Optional[FaultPlan] = None,
                 strict: bool = False) -> Backend:
    if descriptor.kind == "http":
        if faults is not None and not faults.empty:
            raise ValueError("fault injection is only available on the rules backend")
        return HttpBackend(descriptor)
    return RulesBackend(faults, strict)


__all__ = [
    "Backend", "BackendDescriptor", "DecodingParams", "FaultPlan", "HttpBackend", "RulesBackend",
    "extract_class", "extract_lld", "find_json_object", "make_backend", "rules_backend_answer",
    "split_config_bundle",
]
