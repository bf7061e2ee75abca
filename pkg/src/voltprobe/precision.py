"""Serialized access to mpmath's working precision.

``mpmath.mp`` is a single process-wide context, and the acceptance suite runs
criteria in worker threads. Every extended-precision block in the package
enters it through ``working_precision``, which holds a re-entrant lock for the
duration of the block so that no thread changes ``mp.dps`` under another.
"""

from __future__ import annotations

import threading
from collections.abc import Iterator
from contextlib import contextmanager

import mpmath

_MP_LOCK = threading.RLock()


@contextmanager
def working_precision(dps: int) -> Iterator[None]:
    """Run the block at ``dps`` decimal digits, restoring the previous setting on exit."""
    with _MP_LOCK, mpmath.workdps(dps):
        yield
