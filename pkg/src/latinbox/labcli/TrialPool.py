from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor, as_completed
from logging import Logger, LoggerAdapter
import time
from typing import Callable

from latinbox.labcli.TrialRecord import TrialRecord
from latinbox.utils import derive_seed

# (index, seed, params)
Job = tuple[int, int, dict]

class TrialPoolLogger(LoggerAdapter):
    def __init__(self, logger, extra=None):
        super().__init__(logger, extra)

    def process(self, msg, kwargs):
        return f"[TrialPool] {msg}", kwargs

def trial_jobs(master_seed: int, trials: int, params: dict | None = None) -> list[Job]:
    """Trial i runs on the substream (master_seed, i)."""
    params = params or {}
    return [(i, derive_seed(master_seed, i), dict(params)) for i in range(trials)]

class TrialPool:
    """Runs independent trials on a bounded thread pool. Results come back
    ordered by trial index, whatever order the workers finish in."""
    def __init__(self, threads: int, logger: Logger):
        self.threads = max(1, int(threads))
        self.logger = TrialPoolLogger(logger)

    def _runOne(self, work: Callable[[int, dict], dict], job: Job) -> TrialRecord:
        index, seed, params = job
        start = time.perf_counter()
        outcome = work(seed, params)
        elapsed = time.perf_counter() - start

        self.logger.debug(f"trial {index} finished in {elapsed:.3f}s")
        return TrialRecord(index, seed, params, outcome, elapsed)

    def run(self, jobs: list[Job], work: Callable[[int, dict], dict]) -> list[TrialRecord]:
        if self.threads == 1:
            records = [self._runOne(work, job) for job in jobs]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                futures = [pool.submit(self._runOne, work, job) for job in jobs]
                records = [future.result() for future in as_completed(futures)]

        records.sort(key=lambda record: record.index)
        return records
