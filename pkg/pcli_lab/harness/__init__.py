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
from .config import ConfigError, ExperimentConfig, load_config
from .experiments import EXPERIMENTS, run_experiments
from .report import ExperimentReport, ReportRow
from .work_queue import CellQueue

__all__ = [
    "CellQueue",
    "ConfigError",
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentReport",
    "ReportRow",
    "load_config",
    "run_experiments",
]
