"""Tables of ln(i!) giving constant-time log binomial coefficients.

The cumulative sums are built with compensated (Kahan) summation, and a
table stores its running compensation term alongside the values.
Extending a table therefore continues the identical summation stream: a
table grown in several steps is bit-for-bit equal to one built in a
single pass, so results never depend on growth history.
"""

from __future__ import annotations

import math
import threading
from array import array

from .errors import CapacityExceeded, OutOfRange

__all__ = ["LogFactorialTable", "build_log_factorials", "shared_table", "DEFAULT_CAP"]

# Entries of 8 bytes each; 10 million covers n well past the benchmark scale.
DEFAULT_CAP = 10_000_000


class LogFactorialTable:
    """Immutable table of ln(i!) for i = 0..max_n."""

    __slots__ = ("_values", "_comp")

    def __init__(self, values: array, comp: float):
        self._values = values
        self._comp = comp

    @property
    def max_n(self) -> int:
        return len(self._values) - 1

    def log_factorial(self, i: int) -> float:
        if not 0 <= i <= self.max_n:
            raise OutOfRange(f"i={i} outside tabulated range 0..{self.max_n}")
        return self._values[i]

    def log_binomial(self, n: int, k: int) -> float:
        """ln C(n, k) as three table lookups.

        The subtrahends are added before subtracting, which makes the
        result exactly symmetric in k and n - k.
        """
        if not 0 <= k <= n:
            raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
        if n > self.max_n:
            raise OutOfRange(f"n={n} above tabulated range 0..{self.max_n}")
        values = self._values
        return values[n] - (values[k] + values[n - k])

    def extended(self, max_n: int, cap: int = DEFAULT_CAP) -> "LogFactorialTable":
        """A table covering max_n whose prefix equals this one bit for bit."""
        if max_n <= self.max_n:
            return self
        return _continue_build(max_n, self._values, self._comp, cap)


def _continue_build(max_n: int, seed: array, comp: float, cap: int) -> LogFactorialTable:
    if max_n > cap:
        raise CapacityExceeded(f"max_n={max_n} above capacity budget {cap}")
    values = array("d", seed)
    total = values[-1]
    for i in range(len(values), max_n + 1):
        y = math.log(i) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        values.append(total)
    return LogFactorialTable(values, comp)


def build_log_factorials(max_n: int, cap: int = DEFAULT_CAP) -> LogFactorialTable:
    """Table of ln(i!) for i = 0..max_n, summed with compensation."""
    if max_n < 0:
        raise OutOfRange("max_n must be >= 0")
    return _continue_build(max_n, array("d", [0.0]), 0.0, cap)


_lock = threading.Lock()
_shared = build_log_factorials(128)


def shared_table(min_n: int, cap: int = DEFAULT_CAP) -> LogFactorialTable:
    """Process-wide table covering min_n, grown geometrically on demand.

    Growth happens under a lock and callers receive immutable snapshots,
    so concurrent readers always see a consistent table covering their
    requested range.  Because extension continues the summation stream
    exactly, all snapshots agree on their common prefix.
    """
    global _shared
    snapshot = _shared
    if snapshot.max_n >= min_n:
        return snapshot
    with _lock:
        if _shared.max_n < min_n:
            target = max(min_n, min(2 * _shared.max_n, cap))
            _shared = _shared.extended(target, cap)
        return _shared
