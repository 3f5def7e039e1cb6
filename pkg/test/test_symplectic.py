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
from GeomInt.Integrators.Symplectic import (adjoint_euler_step, euler_generating_function, explicit_euler_step,
                                            half_euler_A, half_euler_B, identity_step, midpoint_step,
                                            stormer_verlet_step, symplectic_euler_step)
from GeomInt.ReferenceSolutions.Martinet import MartinetSystem
from GeomInt.Systems.Factory import make_system

pytestmark = pytest.mark.skipif(MPI.COMM_WORLD.Get_size() > 1,
                                reason="tests only serial functionalities, please execute with pytest")

START = PhaseState([1.], [0.])
TIGHT = NewtonConfig(tol=1e-13)


def martinet_states(count, seed):
    rng = np.random.default_rng(seed)
    return [PhaseState(rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)) for _ in range(count)]


def test_symplectic_euler_oscillator(oscillator):
    s = symplectic_euler_step(oscillator, START, 0.1)
    np.testing.assert_allclose(s.p, [-0.1])
    np.testing.assert_allclose(s.q, [0.99])


def test_symplectic_euler_free_particle():
    sys = make_system("free")
    s = symplectic_euler_step(sys, PhaseState([1., 2.], [3., 4.]), 0.1)
    np.testing.assert_allclose(s.p, [3., 4.])
    np.testing.assert_allclose(s.q, [1.3, 2.4])


def test_symplectic_euler_defining_equations(martinet_distribution):
    h = 0.05
    state = PhaseState([0.2, 0.9, -0.1], [1., 0.4, 0.7])
    s = symplectic_euler_step(martinet_distribution, state, h)
    _, dH_dq, dH_dp = martinet_distribution.evaluate(state.q, s.p, energy=False, gradient=True)
    np.testing.assert_allclose(s.p - state.p + h * dH_dq, 0., atol=1e-12)
    np.testing.assert_allclose(s.q - state.q - h * dH_dp, 0., atol=1e-12)


def test_midpoint_oscillator(oscillator):
    h = 0.1
    s = midpoint_step(oscillator, START, h)
    np.testing.assert_allclose(s.q, [(1 - h ** 2 / 4) / (1 + h ** 2 / 4)], rtol=1e-12)
    np.testing.assert_allclose(s.p, [-h / (1 + h ** 2 / 4)], rtol=1e-12)


def test_midpoint_free_particle():
    sys = make_system("free")
    s = midpoint_step(sys, PhaseState([0., 0.], [1., -1.]), 0.5)
    np.testing.assert_allclose(s.q, [0.5, -0.5])
    np.testing.assert_allclose(s.p, [1., -1.])


def test_verlet_oscillator(oscillator):
    s = stormer_verlet_step(oscillator, START, 0.1)
    np.testing.assert_allclose(s.q, [0.995])
    np.testing.assert_allclose(s.p, [-0.09975])


def test_verlet_is_composition_of_half_steps():
    sys = MartinetSystem(0.3)
    h = 0.1
    for state in martinet_states(10, seed=5):
        full = stormer_verlet_step(sys, state, h, TIGHT)
        composed = half_euler_B(sys, half_euler_A(sys, state, h / 2, TIGHT), h / 2, TIGHT)
        np.testing.assert_allclose(full.flat(), composed.flat(), atol=1e-12)


@pytest.mark.parametrize("step", [midpoint_step, stormer_verlet_step])
def test_symmetric_methods_are_reversible(step):
    sys = MartinetSystem(0.3)
    h = 0.1
    for state in martinet_states(10, seed=6):
        back = step(sys, step(sys, state, h, TIGHT), -h, TIGHT)
        np.testing.assert_allclose(back.flat(), state.flat(), atol=1e-11)


def test_euler_variants_are_adjoint(martinet_distribution):
    h = 0.1
    state = PhaseState([0.1, 0.5, 0.], [1., -0.3, 0.2])
    back = adjoint_euler_step(martinet_distribution, symplectic_euler_step(martinet_distribution, state, h), -h)
    np.testing.assert_allclose(back.flat(), state.flat(), atol=1e-11)


def test_explicit_euler(oscillator):
    s = explicit_euler_step(oscillator, START, 0.1)
    np.testing.assert_allclose(s.flat(), [1., -0.1])


def test_identity(oscillator):
    assert identity_step(oscillator, START, 0.1).flat().tolist() == [1., 0.]


def test_zero_step_rejected(oscillator):
    with pytest.raises(ValueError):
        symplectic_euler_step(oscillator, START, 0.)
    with pytest.raises(ValueError):
        midpoint_step(oscillator, START, np.nan)


def test_generating_function_generates_the_step(martinet_distribution):
    h = 0.05
    state = PhaseState([0.2, 0.9, -0.1], [1., 0.4, 0.7])
    s = symplectic_euler_step(martinet_distribution, state, h)
    step = 1e-6

    def S(q0, p1):
        return euler_generating_function(martinet_distribution, q0, p1, h)

    for i in range(3):
        e = np.eye(3)[i] * step
        dS_dp1 = (S(state.q, s.p + e) - S(state.q, s.p - e)) / (2 * step)
        dS_dq0 = (S(state.q + e, s.p) - S(state.q - e, s.p)) / (2 * step)
        # H quadratic in p: S = hH, so ∂S/∂p₁ = h H_p and ∂S/∂q₀ = h H_q
        assert dS_dp1 == pytest.approx(s.q[i] - state.q[i], abs=1e-8)
        assert dS_dq0 == pytest.approx(state.p[i] - s.p[i], abs=1e-8)
