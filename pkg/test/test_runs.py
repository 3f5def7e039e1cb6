#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

import numpy as np
import pytest
from NuMPI import MPI

from GeomInt.Integrators import Runs
from GeomInt.Integrators.Newton import NewtonConfig
from GeomInt.Integrators.Runs import INTEGRATOR_NAMES, RunFailure, integrator_kind, linear_constraint_system, run
from GeomInt.Systems.Factory import initial_data, make_system
from GeomInt.Systems.Systems import ConstraintViolation

pytestmark = pytest.mark.skipif(MPI.COMM_WORLD.Get_size() > 1,
                                reason="tests only serial functionalities, please execute with pytest")


def test_integrator_kinds():
    assert integrator_kind("symplectic_euler") == "hamiltonian"
    assert integrator_kind("oracle_rk4") == "hamiltonian"
    assert integrator_kind("none") == "hamiltonian"
    assert integrator_kind("vakonomic_midpoint") == "vakonomic"
    assert integrator_kind("nonholonomic") == "nonholonomic"
    assert len(set(INTEGRATOR_NAMES)) == len(INTEGRATOR_NAMES)
    with pytest.raises(ValueError):
        integrator_kind("rk45")


@pytest.mark.parametrize("integrator", ["symplectic_euler", "symplectic_euler_b", "midpoint", "verlet",
                                        "explicit_euler", "none", "oracle_rk4"])
def test_hamiltonian_runs(integrator):
    data = initial_data("free")
    traj = run(make_system("free"), integrator, 0.1, 10, data["q"], data["p"])
    assert len(traj) == 11
    assert traj.names == ["q", "p", "H", "constraint_residual"]
    np.testing.assert_allclose(traj.times, np.arange(11) * 0.1)
    expected = data["q"] if integrator == "none" else data["q"] + data["p"]
    np.testing.assert_allclose(traj.last("q"), expected, atol=1e-12)
    np.testing.assert_allclose(traj.column("H"), 0.625)


def test_vakonomic_run(martinet_distribution):
    cfg = NewtonConfig(tol=1e-12)
    data = initial_data("martinet_distribution")
    traj = run(martinet_distribution, "vakonomic_euler", 0.01, 50, data["q"], data["p"], cfg=cfg)
    assert traj.names == ["q", "p", "lambda", "H", "constraint_residual"]
    assert traj.widths() == {"q": 3, "p": 3, "lambda": 1, "H": 1, "constraint_residual": 1}
    assert len(traj) == 51
    assert np.max(traj.column("constraint_residual")) <= cfg.tol


def test_vakonomic_run_on_martinet():
    sys = make_system("martinet")
    data = initial_data("martinet")
    traj = run(sys, "vakonomic_midpoint", 0.01, 20, data["q"], data["p"])
    H = traj.column("H")[:, 0]
    np.testing.assert_allclose(H, H[0], rtol=1e-3)


def test_nonholonomic_runs(heisenberg):
    data = initial_data("heisenberg")
    traj = run(heisenberg, "nonholonomic", 1e-3, 1000, data["q"], data["p"])
    assert traj.names == ["q", "v", "lambda", "H", "constraint_residual"]
    assert np.max(traj.column("constraint_residual")) <= 1e-7
    # the nonholonomic energy is a first integral
    H = traj.column("H")[:, 0]
    np.testing.assert_allclose(H, H[0], rtol=1e-9)

    traj = run(heisenberg, "nonholonomic_discrete", 1e-2, 100, data["q"], data["p"])
    assert len(traj) == 101
    assert np.max(traj.column("constraint_residual")) <= 1e-12


def test_nonholonomic_initial_velocity(martinet_distribution):
    traj = run(martinet_distribution, "nonholonomic", 0.01, 5, [0., 1., 0.], v0=[1., 0., 0.5])
    np.testing.assert_allclose(traj.column("v")[0], [1., 0., 0.5])
    with pytest.raises(ConstraintViolation):
        run(martinet_distribution, "nonholonomic", 0.01, 5, [0., 1., 0.], v0=[1., 0., 0.])


def test_missing_initial_data(martinet_distribution):
    with pytest.raises(ValueError):
        run(martinet_distribution, "midpoint", 0.1, 5, [0., 1., 0.])
    with pytest.raises(ValueError):
        run(martinet_distribution, "nonholonomic", 0.1, 5, [0., 1., 0.])


@pytest.mark.parametrize("h, steps", [(0., 10), (-0.1, 10), (0.1, 0)])
def test_invalid_step_parameters(oscillator, h, steps):
    with pytest.raises(ValueError):
        run(oscillator, "verlet", h, steps, [1.], [0.])


def test_linear_constraint_system(oscillator):
    assert linear_constraint_system(oscillator) is oscillator
    martinet = linear_constraint_system(make_system("martinet"))
    assert martinet.split.constrained == (2,)


def test_failure_keeps_partial_trajectory(oscillator, monkeypatch):
    calls = []

    def failing(system, state, h, cfg=None):
        calls.append(h)
        if len(calls) > 3:
            raise ArithmeticError("diverged")
        return state

    monkeypatch.setitem(Runs.HAMILTONIAN_STEPS, "midpoint", failing)
    with pytest.raises(RunFailure) as info:
        run(oscillator, "midpoint", 0.1, 10, [1.], [0.])
    assert len(info.value.trajectory) == 4
    assert isinstance(info.value.cause, ArithmeticError)
    np.testing.assert_allclose(info.value.trajectory.times, [0., 0.1, 0.2, 0.3])


class StepLog(object):
    def __init__(self):
        self.steps = []

    def st(self, headers, values):
        if headers[0] == "step":
            self.steps.append(values[0])


def test_logged_samples(oscillator):
    log = StepLog()
    run(oscillator, "verlet", 0.1, 5, [1.], [0.], logger=log)
    assert log.steps == list(range(6))
