"""Binary matrix export.

Layout: N as 8-byte little-endian unsigned, N^2 little-endian doubles in
row-major order, then the N grid nodes as little-endian doubles.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from voltprobe.exceptions import DiscretizationError
from voltprobe.models.discrete import MAX_GRID_SIZE, FloatArray, VMatrix

_HEADER = struct.Struct("<Q")


def export_matrix(matrix: VMatrix, path: Path) -> None:
    """Write ``matrix`` and its grid nodes to ``path``."""
    n = matrix.size
    with path.open("wb") as fh:
        fh.write(_HEADER.pack(n))
        fh.write(np.ascontiguousarray(matrix.entries, dtype="<f8").tobytes(order="C"))
        fh.write(np.ascontiguousarray(matrix.grid.nodes, dtype="<f8").tobytes())


def load_matrix(path: Path) -> tuple[FloatArray, FloatArray]:
    """Read back (entries, nodes) from an exported file.

    Raises:
        DiscretizationError: If the header or payload size is inconsistent.
    """
    data = path.read_bytes()
    if len(data) < _HEADER.size:
        msg = f"{path} is too short for a matrix header"
        raise DiscretizationError(msg)
    (n,) = _HEADER.unpack_from(data)
    if not 0 < n <= MAX_GRID_SIZE:
        msg = f"{path} declares N={n}, outside 1..{MAX_GRID_SIZE}"
        raise DiscretizationError(msg)
    expected = _HEADER.size + 8 * (n * n + n)
    if len(data) != expected:
        msg = f"{path} holds {len(data)} bytes, expected {expected} for N={n}"
        raise DiscretizationError(msg)
    payload = np.frombuffer(data, dtype="<f8", offset=_HEADER.size).astype(np.float64)
    return payload[: n * n].reshape(n, n), payload[n * n :]
