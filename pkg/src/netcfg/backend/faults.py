"""Seeded fault schedules for the rules backend.

Kinds: ``class`` (wrong class line), ``json`` (unparseable translation),
``syntax`` (misspelled directive in generated configs). A rate is turned
into an exact set of intents: for ``n`` intents, ``floor(rate * n + 0.5)``
ids are sampled with a RNG seeded by ``(seed, kind)``, so a batch with rate
0.1 over 40 intents faults exactly 4 of them on every run.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

FAULT_KINDS = ("class", "json", "syntax")
SCHEDULES = ("every-cycle", "first-cycle-only")


@dataclass(frozen=True)
class FaultPlan:
    rates: dict = field(default_factory=dict)
    seed: int = 0
    schedule: str = "every-cycle"
    # kind -> frozenset of intent ids; None until bound to a dataset
    targets: Optional[dict] = None

    def __post_init__(self):
        for kind, rate in self.rates.items():
            if kind not in FAULT_KINDS:
                raise ValueError(f"unknown fault kind {kind!r}; expected one of {FAULT_KINDS}")
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"fault rate for {kind} must be within [0, 1]")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"unknown fault schedule {self.schedule!r}")

    @classmethod
    def parse(cls, spec: Optional[str], seed: int = 0, schedule: str = "every-cycle") -> "FaultPlan":
        """Parse ``kind:rate[,kind:rate]*``."""
        rates = {}
        for part in (spec or "").split(","):
            part = part.strip()
            if not part:
                continue
            kind, sep, value = part.partition(":")
            if not sep:
                raise ValueError(f"fault spec {part!r} must look like kind:rate")
            try:
                rates[kind.strip()] = float(value)
            except ValueError:
                raise ValueError(f"fault rate {value!r} is not a number") from None
        return cls(rates, seed, schedule)

    @classmethod
    def targeted(cls, schedule: str = "every-cycle", **ids: Iterable[str]) -> "FaultPlan":
        """Plan that faults exactly the given intent ids per kind."""
        return cls({}, 0, schedule, {kind: frozenset(v) for kind, v in ids.items()})

    @property
    def empty(self) -> bool:
        return not any(self.rates.values()) and not any((self.targets or {}).values())

    def bind(self, intent_ids: Iterable[str]) -> "FaultPlan":
        """Resolve rates into exact target sets for this dataset."""
        ids = sorted(set(intent_ids))
        targets = {k: set(v) for k, v in (self.targets or {}).items()}
        for kind, rate in self.rates.items():
            count = min(len(ids), math.floor(rate * len(ids) + 0.5))
            rng = random.Random(f"{self.seed}:{kind}")
            targets.setdefault(kind, set()).update(rng.sample(ids, count))
        return FaultPlan(self.rates, self.seed, self.schedule, {k: frozenset(v) for k, v in targets.items()})

    def active(self, kind: str, intent_id: Optional[str], attempt: int = 1) -> bool:
        if self.schedule == "first-cycle-only" and attempt > 1:
            return False
        if self.targets is not None:
            return intent_id in self.targets.get(kind, ())
        rate = self.rates.get(kind, 0.0)
        if rate <= 0.0:
            return False
        return random.Random(f"{self.seed}:{kind}:{intent_id}").random() < rate
