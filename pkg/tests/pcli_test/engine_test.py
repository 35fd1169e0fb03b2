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
import numpy as np
import pytest

from pcli_lab.algos import (
    agd_smooth_schedule,
    agd_stationary_schedule,
    gd_schedule,
)
from pcli_lab.instances import hard_instance, suboptimality
from pcli_lab.pcli import (
    ONE,
    ZERO,
    Diagonal,
    DimensionMismatchError,
    DivergenceError,
    FunctionSchedule,
    PCLIState,
    Scalar,
    ScheduleClass,
    SideInformation,
    classify,
    grid,
    run,
    step,
)
from pcli_lab.pcli.engine import max_point_difference


@pytest.fixture
def info():
    return SideInformation(L=1.0, mu=0.01)


def _fixed_gd(step_size: float) -> FunctionSchedule:
    def generator(k, info):
        return grid([[Scalar(-step_size)]]), grid([[ONE]])

    return FunctionSchedule(generator, p=1, label="fixed")


def test_gd_inv_L_hits_minimizer_in_one_step():
    info = SideInformation(L=2.0)
    inst = hard_instance(1, 2.0, 1.0)
    traj = run(inst, gd_schedule(info), info, PCLIState.zeros(1, 1), 1)
    assert len(traj) == 2
    assert traj[0] == PCLIState.zeros(1, 1)
    np.testing.assert_array_equal(traj.final.iterate, [1.0])
    assert suboptimality(inst, traj.final.iterate) == 0.0


def test_run_prefix_property(info):
    inst = hard_instance(2, 0.3, 1.0)
    sched = agd_smooth_schedule(info.L)
    init = PCLIState.zeros(2, 2)
    long = run(inst, sched, info, init, 12)
    short = run(inst, sched, info, init, 7)
    assert max_point_difference(long.states[:8], short.states) == 0.0
    assert len(run(inst, sched, info, init, 0)) == 1
    with pytest.raises(ValueError):
        run(inst, sched, info, init, -1)


def test_stationary_agd_matches_scalar_recurrence(info):
    # On eta = mu the error obeys e_k = (1 + k / 10) 0.9^k for kappa = 100.
    inst = hard_instance(1, info.mu, 1.0)
    traj = run(
        inst, agd_stationary_schedule(info), info, PCLIState.zeros(2, 1), 60
    )
    gap0 = suboptimality(inst, traj[0].iterate)
    for k in (10, 30, 60):
        expected = (1.0 + 0.1 * k) ** 2 * 0.81**k
        measured = suboptimality(inst, traj[k].iterate) / gap0
        assert measured == pytest.approx(expected, rel=1e-8)


def test_step_rejects_wrong_point_count(info):
    inst = hard_instance(1, 1.0, 1.0)
    with pytest.raises(DimensionMismatchError):
        step(PCLIState.zeros(2, 1), gd_schedule(info), info, inst.gradient)


def test_step_rejects_wrong_diagonal_length(info):
    def generator(k, info):
        return grid([[Diagonal([1.0, 2.0])]]), grid([[ONE]])

    sched = FunctionSchedule(generator, p=1, label="diag")
    inst = hard_instance(3, 1.0, 1.0)
    with pytest.raises(DimensionMismatchError):
        step(PCLIState.zeros(1, 3), sched, info, inst.gradient)


def test_gradients_shared_between_rows():
    calls = []

    def grad(x):
        calls.append(x.copy())
        return x

    def generator(k, info):
        g = Scalar(1.0)
        return grid([[g, ZERO], [g, g]]), grid([[ZERO, ZERO], [ZERO, ZERO]])

    sched = FunctionSchedule(generator, p=2, label="shared")
    state = PCLIState(points=(np.array([1.0]), np.array([2.0])))
    out = step(state, sched, SideInformation(L=1.0), grad)
    assert len(calls) == 2
    np.testing.assert_array_equal(out.points[1], [3.0])
    assert out.k == 1


def test_divergence_is_flagged():
    info = SideInformation(L=1.0)
    inst = hard_instance(1, 1.0, 1.0)
    traj = run(inst, _fixed_gd(3.0), info, PCLIState.zeros(1, 1), 1000)
    assert traj.diverged
    assert len(traj) < 1001
    with pytest.raises(DivergenceError):
        run(inst, _fixed_gd(3.0), info, PCLIState.zeros(1, 1), 1000, True)


def test_state_validation():
    with pytest.raises(ValueError):
        PCLIState(points=())
    with pytest.raises(DimensionMismatchError):
        PCLIState(points=(np.zeros(2), np.zeros(3)))
    with pytest.raises(ValueError):
        PCLIState(points=(np.zeros(2),), k=-1)
    state = PCLIState.replicate(np.array([1.0, 2.0]), 3, k=4)
    assert (state.p, state.d, state.k) == (3, 2, 4)
    with pytest.raises(ValueError):
        state.points[0][0] = 5.0


def test_classify(info):
    assert classify(gd_schedule(info), info) == ScheduleClass.STATIONARY
    assert (
        classify(agd_stationary_schedule(info), info)
        == ScheduleClass.STATIONARY
    )
    assert (
        classify(agd_smooth_schedule(info.L), info) == ScheduleClass.OBLIVIOUS
    )
    with pytest.raises(ValueError):
        classify(gd_schedule(info), info, sample_ks=(3,))


def test_max_point_difference_length_mismatch():
    a = [PCLIState.zeros(1, 1)]
    assert max_point_difference(a, a + a) == float("inf")


def test_side_information():
    assert SideInformation(L=4.0, mu=1.0).kappa == 4.0
    assert SideInformation(L=4.0).kappa == float("inf")
    assert SideInformation(L=4.0).frame == (0.0, 4.0)
    assert SideInformation(L=4.0, mu=4.0).frame == (0.0, 4.0)
    with pytest.raises(ValueError):
        SideInformation(L=0.0)
    with pytest.raises(ValueError):
        SideInformation(L=1.0, mu=2.0)
    with pytest.raises(ValueError):
        SideInformation(L=1.0).require_mu("test")
