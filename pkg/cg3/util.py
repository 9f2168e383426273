# cg3/util.py
from __future__ import annotations

import os
from typing import Callable, Optional

import psutil

Step = Callable[[str], None]


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def default_parallelism() -> int:
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def max_parallelism() -> int:
    """Worker cap for the verification sweeps (CG3_MAX_PARALLELISM)."""
    return max(1, _env_int("CG3_MAX_PARALLELISM", default_parallelism()))


def factorial_cache_size() -> int:
    return max(16, _env_int("CG3_FACTORIAL_CACHE", 256))


def verify_max_weight() -> int:
    return _env_int("CG3_VERIFY_MAX_WEIGHT", 2)


# ───────────────────────────── progress ─────────────────────────────


class Progress:
    """Counts `total` equal steps and reports each as an 'NN% message' line."""

    def __init__(self, say: Optional[Step], total: int):
        self.say = say
        self.total = max(1, total)
        self.done = 0

    def step(self, msg: str) -> None:
        self.done = min(self.total, self.done + 1)
        if self.say:
            self.say(f"{self.done * 100 // self.total}% {msg}")


def tell(say: Optional[Step], msg: str) -> None:
    if say:
        say(msg)
