"""Chat-completion client for a locally served model."""

from __future__ import annotations

import logging
import threading
import time
from urllib.parse import urlparse

import requests

from netcfg.backend.base import BackendDescriptor, DecodingParams
from netcfg.errors import BackendTimeout, BackendUnavailable, EmptyCompletion
from netcfg.prompts.forge import PromptBundle

log = logging.getLogger(__name__)


def completions_url(endpoint: str) -> str:
    """Accept a server root, an ``/v1`` base or the full completions path."""
    base = endpoint.rstrip("/")
    path = urlparse(base).path
    if path.endswith("/chat/completions"):
        return base
    if path.endswith("/v1"):
        return base + "/chat/completions"
    return base + "/v1/chat/completions"


class HttpBackend:
    """Talks the chat-completion wire format over HTTP.

    Connection failures and 5xx answers are retried ``retries`` times with
    exponential backoff before surfacing as BackendUnavailable. Timeouts
    surface as BackendTimeout without retry: a local server that took
    ``timeout_s`` once will not be faster on the second try.
    """

    def __init__(self, descriptor: BackendDescriptor, retries: int = 2, backoff_s: float = 0.5,
                 session: requests.Session | None = None):
        if descriptor.kind != "http":
            raise ValueError("HttpBackend needs an http descriptor")
        self.descriptor = descriptor
        self.url = completions_url(descriptor.endpoint_url)
        self.retries = retries
        self.backoff_s = backoff_s
        self.session = session or requests.Session()
        self._slots = threading.BoundedSemaphore(max(1, descriptor.max_in_flight))

    def payload(self, bundle: PromptBundle, params: DecodingParams) -> dict:
        body = {
            "model": self.descriptor.model_name or "default",
            "messages": bundle.to_wire(),
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }
        if params.stop_sequences:
            body["stop"] = list(params.stop_sequences)
        return body

    def complete(self, bundle: PromptBundle, params: DecodingParams) -> str:
        body = self.payload(bundle, params)
        with self._slots:
            response = self._post(body)
        try:
            content = response.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise BackendUnavailable(f"unexpected response shape from {self.url}: {exc}") from exc
        if not isinstance(content, str) or not content.strip():
            raise EmptyCompletion(f"empty completion for {bundle.purpose.value} prompt")
        return content

    def _post(self, body: dict) -> requests.Response:
        last: Exception | None = None
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff_s * 2 ** (attempt - 1))
            try:
                response = self.session.post(self.url, json=body, timeout=self.descriptor.timeout_s)
            except requests.Timeout as exc:
                raise BackendTimeout(f"no answer from {self.url} within {self.descriptor.timeout_s}s") from exc
            except requests.RequestException as exc:
                last = exc
                log.warning("request to %s failed (attempt %d): %s", self.url, attempt + 1, exc)
                continue
            if response.status_code >= 500:
                last = BackendUnavailable(f"{self.url} answered HTTP {response.status_code}")
                log.warning("%s", last)
                continue
            if response.status_code >= 400:
                raise BackendUnavailable(f"{self.url} rejected the request: HTTP {response.status_code}")
            return response
        raise BackendUnavailable(f"{self.url} unreachable after {self.retries + 1} attempts: {last}") from last
