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
import threading
import time
from unittest.mock import patch

import pytest

from pcli_lab.harness.work_queue import THREADS_ENV, CellQueue, worker_count


def test_worker_count_from_environment():
    with patch.dict("os.environ", {THREADS_ENV: "3"}):
        assert worker_count() == 3
    with patch.dict("os.environ", {THREADS_ENV: "0"}):
        with pytest.raises(ValueError):
            worker_count()
    with patch.dict("os.environ", {THREADS_ENV: "many"}):
        with pytest.raises(ValueError):
            worker_count()


def test_worker_count_defaults_to_cpus():
    with patch.dict("os.environ", {}, clear=True):
        with patch("pcli_lab.harness.work_queue.os.cpu_count", return_value=6):
            assert worker_count() == 6


def test_results_keep_submission_order():
    def slow_square(x):
        time.sleep(0.01 * (5 - x))
        return x * x

    assert CellQueue(4).run_sync(slow_square, range(5)) == [0, 1, 4, 9, 16]


def test_worker_bound_is_respected():
    lock = threading.Lock()
    active, peak = [0], [0]

    def cell(_):
        with lock:
            active[0] += 1
            peak[0] = max(peak[0], active[0])
        time.sleep(0.01)
        with lock:
            active[0] -= 1

    CellQueue(2).run_sync(cell, range(8))
    assert peak[0] <= 2


def test_cell_errors_propagate():
    def boom(x):
        raise RuntimeError(f"cell {x}")

    with pytest.raises(RuntimeError):
        CellQueue(2).run_sync(boom, [1])


@pytest.mark.asyncio
async def test_run_inside_event_loop():
    results = await CellQueue(2).run(str, [1, 2, 3])
    assert results == ["1", "2", "3"]
