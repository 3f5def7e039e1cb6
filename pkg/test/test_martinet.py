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

from GeomInt.Core.States import PhaseState
from GeomInt.Integrators.Newton import NewtonConfig
from GeomInt.Integrators.Symplectic import stormer_verlet_step
from GeomInt.ReferenceSolutions.Martinet import (MartinetSystem, dilation, fiber_derivative,
                                                 martinet_discrete_lagrangian, martinet_hamiltonian,
                                                 martinet_lagrangian, martinet_rhs, martinet_verlet_substeps,
                                                 recovered_lagrangian, verlet_substep_residuals)
from GeomInt.Systems.Systems import ConstraintViolation

pytestmark = pytest.mark.skipif(MPI.COMM_WORLD.Get_size() > 1,
                                reason="tests only serial functionalities, please execute with pytest")

STATE = PhaseState([0., 1., 0.], [1., 0., 1.])


def random_states(count, seed):
    rng = np.random.default_rng(seed)
    return [PhaseState(rng.uniform(-0.5, 0.5, 3), rng.uniform(-1, 1, 3)) for _ in range(count)]


@pytest.mark.parametrize("beta", [0., 1.])
def test_hamiltonian(beta):
    assert martinet_hamiltonian(MartinetSystem(beta), STATE) == pytest.approx(1.125, rel=1e-15)


def test_hamiltonian_with_weight():
    sys = MartinetSystem(1.)
    # w = 2 at x = 1
    assert martinet_hamiltonian(sys, PhaseState([1., 0., 0.], [0., 2., 0.])) == pytest.approx(0.5)


def test_rhs():
    qdot, pdot = martinet_rhs(MartinetSystem(0.), STATE)
    np.testing.assert_allclose(qdot, [1.5, 0., 0.75])
    np.testing.assert_allclose(pdot, [0., -1.5, 0.])


def test_rhs_against_finite_differences():
    sys = MartinetSystem(0.7)
    step = 1e-6
    for state in random_states(5, seed=11):
        qdot, pdot = martinet_rhs(sys, state)
        for i in range(3):
            e = np.eye(3)[i] * step
            dq = (sys.hamiltonian(PhaseState(state.q + e, state.p))
                  - sys.hamiltonian(PhaseState(state.q - e, state.p))) / (2 * step)
            dp = (sys.hamiltonian(PhaseState(state.q, state.p + e))
                  - sys.hamiltonian(PhaseState(state.q, state.p - e))) / (2 * step)
            assert pdot[i] == pytest.approx(-dq, abs=1e-8)
            assert qdot[i] == pytest.approx(dp, abs=1e-8)


def test_pole():
    sys = MartinetSystem(1.)
    with pytest.raises(MartinetSystem.PoleError):
        sys.hamiltonian(PhaseState([-1., 0., 0.], [1., 1., 0.]))
    with pytest.raises(ArithmeticError):
        martinet_rhs(sys, PhaseState([-1., 0., 0.], [1., 1., 0.]))


def test_fiber_derivative_satisfies_constraint():
    sys = MartinetSystem(0.4)
    for state in random_states(50, seed=12):
        tangent = fiber_derivative(sys, state)
        assert abs(sys.constraint_violation(tangent.q, tangent.v)[0]) <= 1e-15


@pytest.mark.parametrize("beta", [0., 0.4])
def test_dilation_and_recovered_lagrangian(beta):
    sys = MartinetSystem(beta)
    for state in random_states(100, seed=13):
        H = sys.hamiltonian(state)
        assert dilation(sys, state) == pytest.approx(2 * H, rel=1e-13, abs=1e-14)
        tangent = fiber_derivative(sys, state)
        assert recovered_lagrangian(sys, state) == pytest.approx(martinet_lagrangian(sys, tangent.q, tangent.v),
                                                                 rel=1e-12, abs=1e-14)


def test_discrete_lagrangian_examples():
    ld, residual = martinet_discrete_lagrangian(MartinetSystem(0.), [0., 0., 0.], [0.1, 0., 0.], 0.1)
    assert ld == pytest.approx(0.05)
    assert residual == 0.
    ld, _ = martinet_discrete_lagrangian(MartinetSystem(1.), [0., 0., 0.], [0., 0.2, 0.], 0.1)
    assert ld == pytest.approx(0.2)


def test_discrete_lagrangian_off_constraint():
    with pytest.raises(ConstraintViolation):
        martinet_discrete_lagrangian(MartinetSystem(0.), [0., 1., 0.], [0.1, 1., 0.], 0.1)


@pytest.mark.parametrize("beta", [0., 0.5])
def test_generating_function_projection(beta):
    sys = MartinetSystem(beta)
    rng = np.random.default_rng(14)
    h = 0.1
    for _ in range(1000):
        q0 = rng.uniform(-1, 1, 3)
        dx, dy = rng.uniform(-0.2, 0.2, 2)
        q1 = q0 + [dx, dy, q0[1] ** 2 / 2 * dx]
        ld, _ = martinet_discrete_lagrangian(sys, q0, q1, h)
        expected = h * martinet_lagrangian(sys, q0, (q1 - q0) / h)
        assert ld == pytest.approx(expected, rel=1e-11, abs=1e-300)

        p1 = rng.uniform(-1, 1, 3)
        image = q0 + h * sys.evaluate(q0, p1, energy=False, gradient=True)[2]
        assert abs(sys.discrete_constraint_violation(q0, image)[0]) <= 1e-14


def test_verlet_substeps():
    sys = MartinetSystem(0.3)
    cfg = NewtonConfig(tol=1e-13)
    h = 0.1
    for state in random_states(10, seed=15):
        half, full, ld_plus, ld_minus = martinet_verlet_substeps(sys, state, h, cfg)
        np.testing.assert_allclose(full.flat(), stormer_verlet_step(sys, state, h, cfg).flat(), atol=1e-12)
        first, second = verlet_substep_residuals(sys, state.q, half.q, full.q)
        assert abs(first) <= 1e-12
        assert abs(second) <= 1e-12
        assert np.isfinite(ld_plus) and np.isfinite(ld_minus)


def test_verlet_keeps_the_invariant_plane():
    sys = MartinetSystem(0.5)
    state = PhaseState([0.2, 0., 0.1], [1., 0., 0.5])
    for _ in range(20):
        state = stormer_verlet_step(sys, state, 0.05)
        assert state.q[1] == 0.
        assert state.p[1] == 0.
    np.testing.assert_allclose(state.p, [1., 0., 0.5])
    np.testing.assert_allclose(state.q, [1.2, 0., 0.1], rtol=1e-12)


@pytest.mark.parametrize("beta", [0., 0.8])
def test_linear_constraint_form(beta):
    sys = MartinetSystem(beta)
    linear = sys.as_linear_constraint_system()
    for state in random_states(10, seed=16):
        x = state.q[0]
        np.testing.assert_allclose(linear.reduced_metric(state.q, derivatives=False).gamma,
                                   np.diag([1., (1 + beta * x) ** 2]), atol=1e-14)
        assert linear.hamiltonian(state) == pytest.approx(sys.hamiltonian(state), rel=1e-12, abs=1e-14)
        np.testing.assert_allclose(linear.hamiltonian_gradient(state)[1], sys.hamiltonian_gradient(state)[1],
                                   atol=1e-12)
