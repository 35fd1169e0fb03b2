# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
import asyncio
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from pcli_lab.logger import init_logger

logger = init_logger(__name__)

THREADS_ENV = "PCLI_LAB_THREADS"

Cell = TypeVar("Cell")
Result = TypeVar("Result")


def worker_count() -> int:
    value = os.environ.get(THREADS_ENV)
    if value is None:
        return os.cpu_count() or 1
    try:
        count = int(value)
    except ValueError:
        count = 0
    if count < 1:
        logger.error(f"{THREADS_ENV}={value!r} is not a positive integer")
        raise ValueError(f"{THREADS_ENV} must be a positive integer")
    return count


class CellQueue:
    """Runs independent experiment cells on a bounded thread pool.

    Results come back in submission order, whatever order the cells
    finish in.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or worker_count()

    async def _run_cell(
        self,
        semaphore: asyncio.Semaphore,
        executor: ThreadPoolExecutor,
        fn: Callable[[Cell], Result],
        cell: Cell,
    ) -> Result:
        async with semaphore:
            loop = asyncio.get_running_loop()
            return await loop.run_in_executor(executor, fn, cell)

    async def run(
        self, fn: Callable[[Cell], Result], cells: Iterable[Cell]
    ) -> List[Result]:
        cells = list(cells)
        semaphore = asyncio.Semaphore(self.max_workers)
        logger.debug(
            f"Running {len(cells)} cells on {self.max_workers} workers"
        )
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            tasks = [
                self._run_cell(semaphore, executor, fn, cell) for cell in cells
            ]
            results = await asyncio.gather(*tasks)
        return list(results)

    def run_sync(
        self, fn: Callable[[Cell], Result], cells: Iterable[Cell]
    ) -> List[Result]:
        return asyncio.run(self.run(fn, cells))
