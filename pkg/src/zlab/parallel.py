"""Thread-count policy; ``ZLAB_THREADS`` caps parallelism."""
from __future__ import annotations

import os


def thread_count() -> int:
    raw = os.environ.get("ZLAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
