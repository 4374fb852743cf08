"""Wall clock and stage timer.

When ``SOURCE_DATE_EPOCH`` is set both are frozen: timestamps equal that
epoch and every measured duration is zero, so repeated runs write
byte-identical reports, repositories and metrics.
"""

from __future__ import annotations

import os
import time
from datetime import datetime, timezone
from typing import Optional


def _frozen_epoch() -> Optional[int]:
    value = os.environ.get("SOURCE_DATE_EPOCH", "").strip()
    return int(value) if value.isdigit() else None


def now() -> datetime:
    epoch = _frozen_epoch()
    if epoch is not None:
        return datetime.fromtimestamp(epoch, tz=timezone.utc)
    return datetime.now(tz=timezone.utc)


def monotonic() -> float:
    if _frozen_epoch() is not None:
        return 0.0
    return time.perf_counter()
