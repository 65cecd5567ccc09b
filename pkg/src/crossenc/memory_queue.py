"""Fixed-capacity FIFO store of unit-norm negative embeddings.

Implemented as a ring buffer so enqueueing a batch is O(batch). Snapshots are
materialized copies in arrival order (oldest first) and never mutate when the
queue moves on.
"""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError, ShapeError

Array = np.ndarray

_NORM_TOL = 1e-9


class MemoryQueue:
    """FIFO of up to ``capacity`` unit-norm vectors of width ``dim``."""

    def __init__(self, capacity: int, dim: int):
        if capacity < 0:
            raise ArgumentError(f"capacity must be nonnegative, got {capacity}")
        if dim < 1:
            raise ArgumentError(f"dim must be positive, got {dim}")
        self._capacity = int(capacity)
        self._dim = int(dim)
        self._buf = np.empty((self._capacity, self._dim), dtype=np.float64)
        self._start = 0
        self._size = 0

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def dim(self) -> int:
        return self._dim

    def __len__(self) -> int:
        return self._size

    def enqueue_batch(self, batch: Array) -> None:
        """Append rows, evicting the oldest entries beyond capacity."""
        b = np.asarray(batch, dtype=np.float64)
        if b.ndim != 2 or b.shape[1] != self._dim:
            raise ShapeError(f"batch shape {b.shape} incompatible with queue dim {self._dim}")
        norms = np.linalg.norm(b, axis=1)
        if np.any(np.abs(norms - 1.0) > _NORM_TOL):
            worst = float(np.max(np.abs(norms - 1.0)))
            raise ArgumentError(f"queue entries must be unit-norm (worst deviation {worst:.3e})")
        if self._capacity == 0 or b.shape[0] == 0:
            return
        n = b.shape[0]
        if n >= self._capacity:
            # only the newest `capacity` rows survive
            self._buf[:] = b[n - self._capacity:]
            self._start = 0
            self._size = self._capacity
            return
        write = (self._start + self._size) % self._capacity
        first = min(n, self._capacity - write)
        self._buf[write:write + first] = b[:first]
        if first < n:
            self._buf[:n - first] = b[first:]
        overflow = self._size + n - self._capacity
        if overflow > 0:
            self._start = (self._start + overflow) % self._capacity
            self._size = self._capacity
        else:
            self._size += n

    def snapshot(self) -> Array:
        """Entries oldest-first as an immutable copy."""
        idx = (self._start + np.arange(self._size)) % self._capacity
        view = self._buf[idx].copy()
        view.setflags(write=False)
        return view

    @classmethod
    def from_entries(cls, capacity: int, dim: int, entries: Array) -> "MemoryQueue":
        """Rebuild a queue from saved entries (oldest first)."""
        q = cls(capacity, dim)
        e = np.asarray(entries, dtype=np.float64).reshape(-1, dim)
        q.enqueue_batch(e)
        return q
