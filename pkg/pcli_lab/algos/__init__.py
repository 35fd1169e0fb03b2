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
from .gradient_descent import (
    GD_VARIANTS,
    GradientDescentSchedule,
    gd_schedule,
)
from .momentum import (
    FixedTwoStepSchedule,
    HeavyBallSchedule,
    StationaryAGDSchedule,
    TwoStepSchedule,
    agd_stationary_schedule,
    heavy_ball_schedule,
)
from .nesterov import NesterovSmoothSchedule, agd_smooth_schedule
from .stochastic import (
    AffineUpdate,
    ExpectedSchedule,
    NonQuadraticComponentError,
    StochasticMethod,
    StochasticMethodConfig,
    expected_schedule,
    expected_update,
    monte_carlo_moments,
    stochastic_run,
)

__all__ = [
    "AffineUpdate",
    "ExpectedSchedule",
    "FixedTwoStepSchedule",
    "GD_VARIANTS",
    "GradientDescentSchedule",
    "HeavyBallSchedule",
    "NesterovSmoothSchedule",
    "NonQuadraticComponentError",
    "StationaryAGDSchedule",
    "StochasticMethod",
    "StochasticMethodConfig",
    "TwoStepSchedule",
    "agd_smooth_schedule",
    "agd_stationary_schedule",
    "expected_schedule",
    "expected_update",
    "gd_schedule",
    "heavy_ball_schedule",
    "monte_carlo_moments",
    "stochastic_run",
]
