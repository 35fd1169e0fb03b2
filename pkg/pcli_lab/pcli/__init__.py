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
from .engine import (
    DimensionMismatchError,
    DivergenceError,
    PCLIState,
    Trajectory,
    iterate,
    run,
    step,
)
from .operators import (
    ONE,
    ZERO,
    Diagonal,
    DiagonalOperator,
    OperatorGrid,
    Scalar,
    SideInformation,
    grid,
)
from .schedule_utils import (
    CoefficientSchedule,
    FunctionSchedule,
    ScheduleClass,
    classify,
)
from .symbolic import (
    NonDiagonalOperatorError,
    SymbolicTrajectory,
    iter_symbolic,
    residual_poly,
    symbolic_run,
)

__all__ = [
    "CoefficientSchedule",
    "Diagonal",
    "DiagonalOperator",
    "DimensionMismatchError",
    "DivergenceError",
    "FunctionSchedule",
    "NonDiagonalOperatorError",
    "ONE",
    "OperatorGrid",
    "PCLIState",
    "Scalar",
    "ScheduleClass",
    "SideInformation",
    "SymbolicTrajectory",
    "Trajectory",
    "ZERO",
    "classify",
    "grid",
    "iter_symbolic",
    "iterate",
    "residual_poly",
    "run",
    "step",
    "symbolic_run",
]
