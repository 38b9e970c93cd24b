"""Resource caps for long computations.

A budget is activated for the current context with ``with budget:``; the
character engine calls :func:`check` from its inner loops.
"""

from __future__ import annotations

import contextvars
import time


class BudgetExceeded(RuntimeError):
    pass


_active: contextvars.ContextVar["Budget | None"] = contextvars.ContextVar("budget", default=None)


class Budget:
    def __init__(self, max_seconds: float | None = None, max_weights: int | None = None):
        if max_seconds is not None and max_seconds <= 0:
            raise ValueError("max_seconds must be positive")
        if max_weights is not None and max_weights <= 0:
            raise ValueError("max_weights must be positive")
        self.max_seconds = max_seconds
        self.max_weights = max_weights
        self._start = None
        self._token = None

    def __enter__(self):
        self._start = time.monotonic()
        self._token = _active.set(self)
        return self

    def __exit__(self, *exc):
        _active.reset(self._token)
        return False

    def elapsed(self) -> float:
        return 0.0 if self._start is None else time.monotonic() - self._start

    def check(self, n_weights: int = 0):
        if self.max_seconds is not None and self.elapsed() > self.max_seconds:
            raise BudgetExceeded(f"time budget of {self.max_seconds}s exceeded")
        if self.max_weights is not None and n_weights > self.max_weights:
            raise BudgetExceeded(
                f"weight budget exceeded: {n_weights} distinct weights > {self.max_weights}"
            )


def check(n_weights: int = 0):
    b = _active.get()
    if b is not None:
        b.check(n_weights)
