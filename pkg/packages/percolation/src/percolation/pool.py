import logging
import queue
import threading
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np
from conf import get_trial_chunk, get_worker_count

logger = logging.getLogger(__name__)

type Scratch = tuple[np.ndarray, np.ndarray]


def create_scratch_pool(
    vertex_count: int,
    max_buffers: int | None = None,
    initial_buffers: int = 1,
    minimum_buffers: int = 1,
) -> "ScratchPool":
    max_buffers = max_buffers or get_worker_count()
    return ScratchPool(
        vertex_count,
        max_buffers=max_buffers,
        initial_buffers=min(initial_buffers, max_buffers),
        minimum_buffers=minimum_buffers,
    )


class ScratchPool:
    """
    Pool of ``(parent, rank)`` union-find buffers shared by trial workers.

    A worker takes a buffer for a chunk of trials and hands it back. New
    buffers are allocated on demand up to ``max_buffers``; above that,
    workers wait. Returned buffers beyond ``minimum_buffers`` are dropped.
    """

    def __init__(
        self,
        vertex_count: int,
        max_buffers: int,
        initial_buffers: int,
        minimum_buffers: int,
    ):
        if initial_buffers > max_buffers:
            raise ValueError("Initial buffer count cannot exceed the maximum buffer count")
        self.vertex_count = vertex_count
        self.max_buffers = max(1, max_buffers)
        self.minimum_buffers = max(1, minimum_buffers)
        self.buffers: queue.Queue[Scratch] = queue.Queue(maxsize=self.max_buffers)
        for _ in range(max(1, initial_buffers)):
            self.buffers.put(self._allocate())
        self.current_count = max(1, initial_buffers)
        self._lock = threading.Lock()

    def _allocate(self) -> Scratch:
        return (
            np.empty(self.vertex_count, dtype=np.int64),
            np.empty(self.vertex_count, dtype=np.int64),
        )

    def acquire(self) -> Scratch:
        with self._lock:
            if self.buffers.empty() and self.current_count < self.max_buffers:
                self.current_count += 1
                logger.debug(f"Allocating scratch buffer {self.current_count}/{self.max_buffers}")
                return self._allocate()
        return self.buffers.get()

    def release(self, scratch: Scratch) -> None:
        with self._lock:
            if self.buffers.qsize() >= self.minimum_buffers:
                self.current_count -= 1
                return
        self.buffers.put(scratch)

    @contextmanager
    def get_scratch(self) -> Iterator[Scratch]:
        scratch = None
        try:
            scratch = self.acquire()
            yield scratch
        except Exception as e:
            logger.exception(f"An error occurred while using a scratch buffer: {e}")
            raise e
        finally:
            if scratch is not None:
                self.release(scratch)


def map_trials(
    vertex_count: int,
    trials: int,
    trial_fn: Callable[[int, Scratch], float],
    first_trial: int = 0,
    workers: int | None = None,
) -> np.ndarray:
    """
    ``trial_fn(t, scratch)`` for t in ``first_trial .. first_trial+trials−1``.

    Trials are handed out in chunks of ``get_trial_chunk()``; values come back
    in trial order whatever the worker count.
    """
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    workers = workers or get_worker_count()
    chunk = get_trial_chunk()
    pool = create_scratch_pool(vertex_count, max_buffers=workers)
    stop = first_trial + trials
    starts = list(range(first_trial, stop, chunk))

    def run_chunk(start: int) -> np.ndarray:
        end = min(start + chunk, stop)
        with pool.get_scratch() as scratch:
            return np.array([trial_fn(t, scratch) for t in range(start, end)], dtype=np.float64)

    if workers == 1 or len(starts) == 1:
        parts = [run_chunk(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(run_chunk, starts))
    return np.concatenate(parts)
