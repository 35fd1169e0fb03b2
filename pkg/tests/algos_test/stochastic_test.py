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
    NonQuadraticComponentError,
    StochasticMethod,
    StochasticMethodConfig,
    expected_schedule,
    expected_update,
    gd_schedule,
    monte_carlo_moments,
    stochastic_run,
)
from pcli_lab.algos.stochastic import component_draws, simulate
from pcli_lab.instances import finite_sum_split, spectrum_instance
from pcli_lab.pcli import Diagonal, PCLIState, Scalar, SideInformation, run

M, D = 3, 2


@pytest.fixture
def instance():
    return spectrum_instance([0.2, 1.0], 1.0)


@pytest.fixture
def split(instance):
    return finite_sum_split(instance, M, seed=7)


def _config(method, m=M, **kwargs):
    return StochasticMethodConfig(
        method=method, m=m, step=kwargs.pop("step", 0.1), **kwargs
    )


def test_config_defaults_and_validation():
    cfg = _config("SVRG")
    assert cfg.method == StochasticMethod.SVRG
    assert cfg.svrg_epoch == 2 * M
    assert cfg.p == 2
    assert cfg.label == "svrg"
    assert _config(StochasticMethod.SAG).p == M + 1
    with pytest.raises(ValueError):
        _config("SAG", m=0)
    with pytest.raises(ValueError):
        _config("SAG", step=0.0)
    with pytest.raises(ValueError):
        _config("SAG", seed=-1)
    with pytest.raises(ValueError):
        _config("SVRG", svrg_epoch=0)
    with pytest.raises(ValueError):
        _config("ADAM")


def test_component_draws_are_reproducible():
    first = component_draws(5, 11, 100, 4)
    np.testing.assert_array_equal(first, component_draws(5, 11, 100, 4))
    assert first.min() >= 0 and first.max() < 4
    assert not np.array_equal(first, component_draws(5, 12, 100, 4))


def test_sag_with_one_component_is_gradient_descent(instance):
    info = SideInformation(L=1.0, mu=0.2)
    cfg = _config("SAG", m=1, step=0.7)
    single = finite_sum_split(instance, 1)
    sag = stochastic_run(cfg, single, PCLIState.zeros(2, D), 25)
    gd = run(
        instance,
        gd_schedule(info, "fixed", 0.7),
        info,
        PCLIState.zeros(1, D),
        25,
    )
    assert len(sag) == len(gd) == 26
    for a, b in zip(sag.states, gd.states):
        assert a.k == b.k
        np.testing.assert_array_equal(a.iterate, b.iterate)


@pytest.mark.parametrize("method", ["SAG", "SAGA", "SVRG"])
def test_runs_are_deterministic(method, split):
    cfg = _config(method)
    init = PCLIState.zeros(cfg.p, D)
    first = stochastic_run(cfg, split, init, 15)
    again = stochastic_run(cfg, split, init, 15)
    assert first.states == again.states
    assert first.final.k == 15


def test_svrg_snapshot_refresh(split):
    cfg = _config("SVRG", svrg_epoch=4)
    traj = stochastic_run(cfg, split, PCLIState.zeros(2, D), 8)
    for state in traj.states:
        if state.k % 4 == 0 and state.k > 0:
            np.testing.assert_array_equal(state.points[0], state.points[1])
    assert not np.array_equal(traj[3].points[0], traj[3].points[1])


def test_component_checks(split, instance):
    cfg = _config("SAG")
    with pytest.raises(NonQuadraticComponentError):
        stochastic_run(cfg, instance, PCLIState.zeros(cfg.p, D), 1)
    with pytest.raises(ValueError):
        stochastic_run(
            _config("SAG", m=2), split, PCLIState.zeros(3, D), 1
        )
    with pytest.raises(ValueError):
        stochastic_run(cfg, split, PCLIState.zeros(2, D), 1)
    with pytest.raises(ValueError):
        stochastic_run(cfg, split, PCLIState.zeros(cfg.p, D), -1)


def test_simulate_shapes(split):
    cfg = _config("SAGA")
    stream = simulate(cfg, split, PCLIState.zeros(cfg.p, D), replicates=5)
    assert next(stream).shape == (5, M + 1, D)
    assert next(stream).shape == (5, M + 1, D)


@pytest.mark.parametrize("method", ["SAG", "SAGA", "SVRG"])
def test_monte_carlo_matches_expected_update(method, split):
    cfg = _config(method, seed=3)
    init = PCLIState.zeros(cfg.p, D)
    ks = [1, 2, 4]
    moments = monte_carlo_moments(cfg, split, init, ks, replicates=4000)
    update = expected_update(cfg, split)
    start = np.stack(init.points)
    for k in ks:
        mean, se = moments[k]
        expected = update.power_apply(start, k)
        random = se > 0.0
        z = np.abs(mean[random] - expected[random]) / se[random]
        assert z.max() <= 5.0
        np.testing.assert_allclose(
            mean[~random], expected[~random], rtol=1e-12, atol=1e-12
        )


def test_monte_carlo_arguments(split):
    cfg = _config("SAG")
    init = PCLIState.zeros(cfg.p, D)
    with pytest.raises(ValueError):
        monte_carlo_moments(cfg, split, init, [1], replicates=1)
    assert monte_carlo_moments(cfg, split, init, [], replicates=2) == {}


@pytest.mark.parametrize("method", ["SAG", "SAGA"])
def test_expected_schedule_runs_expected_update(method, split, instance):
    info = SideInformation(L=1.0, mu=0.2)
    cfg = _config(method)
    sched = expected_schedule(cfg, split.weights)
    assert sched.label == f"{method.lower()}-expected"
    assert isinstance(sched.coefficients(0, info)[0][0][M], Diagonal)
    traj = run(instance, sched, info, PCLIState.zeros(M + 1, D), 10)
    update = expected_update(cfg, split)
    expected = update.power_apply(np.zeros((M + 1, D)), 10)
    np.testing.assert_allclose(
        np.stack(traj.final.points), expected, rtol=1e-12, atol=1e-14
    )


def test_expected_schedule_scalar_weights(split):
    sched = expected_schedule(_config("SAG"), split.weights[:, 0])
    A, _ = sched.coefficients(3, SideInformation(L=1.0))
    assert isinstance(A[0][M], Scalar)
    assert A[0][M].a == pytest.approx(split.weights[0, 0] / M)


def test_expected_schedule_errors(split):
    with pytest.raises(ValueError):
        expected_schedule(_config("SVRG"), split.weights)
    with pytest.raises(ValueError):
        expected_schedule(_config("SAG"), np.ones(M + 1))
