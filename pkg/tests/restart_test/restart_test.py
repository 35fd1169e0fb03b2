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
import math

import numpy as np
import pytest

from pcli_lab.algos import (
    agd_smooth_schedule,
    gd_schedule,
    heavy_ball_schedule,
)
from pcli_lab.instances import hard_instance, spectrum_instance
from pcli_lab.pcli import PCLIState, SideInformation, run
from pcli_lab.pcli.engine import max_point_difference
from pcli_lab.restart import (
    EPOCH_LOG_COLUMNS,
    EpochRecord,
    NonConvergenceError,
    RateCertificate,
    epoch_length,
    epoch_log_frame,
    halving_check,
    restart_wrap,
)

AGD_CERT = RateCertificate(C=4.0, alpha=2.0)


@pytest.fixture
def info():
    return SideInformation(L=1.0, mu=0.01)


def test_epoch_length_examples():
    assert epoch_length(AGD_CERT, 1.0, 0.01) == 40
    assert epoch_length(RateCertificate(C=1.0, alpha=1.0), 1.0, 0.1) == 40
    assert epoch_length(RateCertificate(C=0.25, alpha=1.0), 1.0, 1.0) == 1
    assert epoch_length(RateCertificate(C=6.75, alpha=3.0), 2.0, 2.0) == 3
    with pytest.raises(ValueError):
        epoch_length(AGD_CERT, 1.0, 0.0)
    with pytest.raises(ValueError):
        epoch_length(AGD_CERT, 1.0, 2.0)


def test_rate_certificate_validation():
    with pytest.raises(ValueError):
        RateCertificate(C=0.0, alpha=1.0)
    with pytest.raises(ValueError):
        RateCertificate(C=1.0, alpha=-1.0)


def test_restarted_agd_halves_every_epoch(info):
    inst = hard_instance(1, info.mu, 1.0)
    result = restart_wrap(
        inst, agd_smooth_schedule(info.L), AGD_CERT, info, 1e-8, np.zeros(1)
    )
    assert result.epoch_length == 40
    assert result.epochs[0] == EpochRecord(0, 0, 0.5 * info.mu)
    assert result.epochs[-1].suboptimality < 1e-8
    assert result.total_iterations == 40 * (len(result.epochs) - 1)
    assert [s.k for s in result.states] == list(
        range(result.total_iterations + 1)
    )
    verdict = halving_check(result.epochs)
    assert verdict.passed
    assert verdict.worst_ratio <= 0.5


def test_restart_on_a_spread_spectrum(info):
    inst = spectrum_instance(np.geomspace(info.mu, info.L, 5), 1.0)
    result = restart_wrap(
        inst, agd_smooth_schedule(info.L), AGD_CERT, info, 1e-6, np.zeros(5)
    )
    assert halving_check(result.epochs).passed
    assert result.iterates().shape == (result.total_iterations + 1, 5)


@pytest.mark.parametrize("factory", [gd_schedule, heavy_ball_schedule])
def test_stationary_base_is_a_fixed_point(factory, info):
    inst = spectrum_instance([0.01, 0.2, 1.0], 1.0)
    base = factory(info)
    cert = RateCertificate(C=1.0, alpha=1.0)
    result = restart_wrap(inst, base, cert, info, 1e-4, np.zeros(3))
    plain = run(
        inst,
        base,
        info,
        PCLIState.zeros(base.p, 3),
        result.total_iterations,
    )
    assert max_point_difference(result.states, plain.states) == 0.0


def test_restart_gives_up_at_the_cap(info):
    inst = hard_instance(1, info.mu, 1.0)
    with pytest.raises(NonConvergenceError):
        restart_wrap(
            inst,
            agd_smooth_schedule(info.L),
            AGD_CERT,
            info,
            1e-12,
            np.zeros(1),
            max_iterations=80,
        )


def test_restart_reports_divergence(info):
    inst = hard_instance(1, info.L, 1.0)
    base = gd_schedule(info, "fixed", 3.0)
    with pytest.raises(NonConvergenceError):
        restart_wrap(
            inst, base, RateCertificate(C=1e3, alpha=1.0), info, 1e-6, [0.0]
        )


def test_restart_arguments():
    inst = hard_instance(1, 1.0, 1.0)
    smooth = SideInformation(L=1.0)
    with pytest.raises(ValueError):
        restart_wrap(
            inst, gd_schedule(smooth), AGD_CERT, smooth, 1e-3, np.zeros(1)
        )
    info = SideInformation(L=1.0, mu=0.5)
    with pytest.raises(ValueError):
        restart_wrap(inst, gd_schedule(info), AGD_CERT, info, 0.0, [0.0])


def test_restart_with_custom_gap(info):
    inst = hard_instance(2, info.mu, 1.0)
    seen = []

    def distance(x):
        seen.append(x)
        return float(np.linalg.norm(x - inst.minimizer))

    result = restart_wrap(
        inst,
        agd_smooth_schedule(info.L),
        AGD_CERT,
        info,
        1e-3,
        np.zeros(2),
        gap_fn=distance,
    )
    assert len(seen) == len(result.epochs)
    assert result.epochs[0].suboptimality == pytest.approx(1.0)


def test_halving_check():
    verdict = halving_check([1.0, 0.5, 0.25])
    assert verdict.passed
    assert verdict.worst_ratio == 0.5
    verdict = halving_check([1.0, 0.6])
    assert not verdict.passed
    assert verdict.worst_ratio == pytest.approx(0.6)
    assert halving_check([1.0, 0.0, 0.0]).passed
    assert math.isinf(halving_check([0.0, 1.0]).worst_ratio)
    records = [EpochRecord(0, 0, 4.0), EpochRecord(1, 10, 1.0)]
    assert halving_check(records).worst_ratio == 0.25
    with pytest.raises(ValueError):
        halving_check([1.0])


def test_epoch_log_frame():
    frame = epoch_log_frame([EpochRecord(0, 0, 1.0), EpochRecord(1, 5, 0.4)])
    assert list(frame.columns) == EPOCH_LOG_COLUMNS
    assert frame["iterations"].tolist() == [0, 5]
