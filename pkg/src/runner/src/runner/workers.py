"""
Row workers with a wall-clock limit.

Every grid row runs in its own child process, at most ``workers`` at a
time. A row still running when its budget is spent is terminated and
reported through ``failure``; rows come back in grid order.
"""

import logging
import multiprocessing
import time
from collections import deque
from collections.abc import Callable, Iterator, Sequence
from multiprocessing.connection import Connection, wait

from runner.models import ResultRow

logger = logging.getLogger(__name__)

type RowTask = Callable[[], ResultRow]
type RowFailure = Callable[[int, str, float], ResultRow]


def _context():
    # fork keeps the registry as the parent sees it; spawn where fork is missing
    methods = multiprocessing.get_all_start_methods()
    return multiprocessing.get_context("fork" if "fork" in methods else "spawn")


def _serve(task: RowTask, sender: Connection) -> None:
    try:
        sender.send(task())
    finally:
        sender.close()


class RowWorker:
    """One row running in a child process."""

    def __init__(self, index: int, task: RowTask, context):
        self.index = index
        self.receiver, sender = context.Pipe(duplex=False)
        self.process = context.Process(target=_serve, args=(task, sender), daemon=True)
        self.process.start()
        sender.close()
        self.started = time.monotonic()

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def collect(self, failure: RowFailure) -> ResultRow:
        try:
            row = self.receiver.recv()
        except EOFError:
            self.process.join()
            row = failure(
                self.index,
                f"WorkerError: row process exited with code {self.process.exitcode}",
                self.elapsed,
            )
        self.close()
        return row

    def terminate(self) -> None:
        self.process.terminate()
        self.process.join(timeout=5)
        if self.process.is_alive():
            self.process.kill()
            self.process.join()
        self.close()

    def close(self) -> None:
        self.receiver.close()
        self.process.join(timeout=5)


def run_rows(
    tasks: Sequence[RowTask], workers: int, budget: float, failure: RowFailure
) -> Iterator[ResultRow]:
    """
    Run ``tasks`` on up to ``workers`` child processes and yield their rows
    in task order. A task running longer than ``budget`` seconds is
    terminated and replaced by ``failure(index, message, elapsed)``.
    """
    context = _context()
    pending = deque(enumerate(tasks))
    running: dict[int, RowWorker] = {}
    finished: dict[int, ResultRow] = {}
    next_index = 0
    try:
        while next_index < len(tasks):
            while pending and len(running) < max(workers, 1):
                index, task = pending.popleft()
                running[index] = RowWorker(index, task, context)
                logger.debug(f"Row {index} started in process {running[index].process.pid}")

            deadline = min(worker.started + budget for worker in running.values())
            ready = wait(
                [worker.receiver for worker in running.values()],
                timeout=max(deadline - time.monotonic(), 0.0),
            )
            for index, worker in list(running.items()):
                if worker.receiver in ready:
                    finished[index] = worker.collect(failure)
                    del running[index]
                elif worker.elapsed > budget:
                    elapsed = worker.elapsed
                    worker.terminate()
                    logger.error(f"Row {index} terminated after {elapsed:.1f}s, over the budget of {budget}s")
                    finished[index] = failure(
                        index, f"RowBudgetError: terminated after {elapsed:.1f}s, over {budget}s", elapsed
                    )
                    del running[index]

            while next_index in finished:
                yield finished.pop(next_index)
                next_index += 1
    finally:
        for worker in running.values():
            worker.terminate()
