from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Protocol

from netcfg.prompts.forge import PromptBundle

ENV_URL = "NETCFG_LLM_URL"
ENV_MODEL = "NETCFG_LLM_MODEL"
ENV_TIMEOUT = "NETCFG_LLM_TIMEOUT_S"


@dataclass(frozen=True)
class DecodingParams:
    # zero temperature: the same prompt must give the same answer
    temperature: float = 0.0
    max_tokens: int = 1024
    stop_sequences: tuple[str, ...] = ()

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_tokens <= 0:
            raise ValueError("max_tokens must be positive")


@dataclass(frozen=True)
class BackendDescriptor:
    kind: str = "rules"
    endpoint_url: Optional[str] = None
    model_name: Optional[str] = None
    timeout_s: float = 600.0
    max_in_flight: int = 1

    def __post_init__(self):
        if self.kind not in ("http", "rules"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if (self.kind == "http") != bool(self.endpoint_url):
            raise ValueError("endpoint_url is required for http backends and only for them")
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")

    @classmethod
    def from_env(cls, kind: str = "http", **overrides) -> "BackendDescriptor":
        if kind == "rules":
            return cls("rules", **overrides)
        values = {
            "endpoint_url": os.environ.get(ENV_URL) or None,
            "model_name": os.environ.get(ENV_MODEL) or None,
        }
        if os.environ.get(ENV_TIMEOUT):
            values["timeout_s"] = float(os.environ[ENV_TIMEOUT])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls("http", **values)


class Backend(Protocol):
    def complete(self, bundle: PromptBundle, params: DecodingParams) -> str:
        ...
