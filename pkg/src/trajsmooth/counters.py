"""Thread-safe multiply-add counters for the instrumented numeric kernels."""

from __future__ import annotations

import threading


class OpCounter:
    """Monotonic operation counter; cheap enough to stay enabled."""

    __slots__ = ("_lock", "_value")

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._value = 0

    def add(self, amount: int) -> None:
        with self._lock:
            self._value += amount

    @property
    def value(self) -> int:
        return self._value

    def reset(self) -> None:
        with self._lock:
            self._value = 0
