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
from GeomInt.Dynamics.Continuous import hamiltonian_field
from GeomInt.Dynamics.Oracle import NonFiniteStateError, oracle_integrate, rk4_step
from GeomInt.Systems.Factory import make_system

pytestmark = pytest.mark.skipif(MPI.COMM_WORLD.Get_size() > 1,
                                reason="tests only serial functionalities, please execute with pytest")


def test_single_step(oscillator):
    h = 0.1
    s = rk4_step(oscillator, PhaseState([1.], [0.]), h)
    # RK4 on a linear field is the degree-four Taylor polynomial of the flow
    np.testing.assert_allclose(s.q, [1 - h ** 2 / 2 + h ** 4 / 24], rtol=1e-14)
    np.testing.assert_allclose(s.p, [-(h - h ** 3 / 6)], rtol=1e-14)
    np.testing.assert_allclose(s.q, [np.cos(h)], atol=1e-8)
    np.testing.assert_allclose(s.p, [-np.sin(h)], atol=1e-7)


def test_constant_momentum():
    sys = make_system("free")
    traj = oracle_integrate(hamiltonian_field(sys), [0., 0., 1., 0.5], 0.1, 10,
                            columns={"q": slice(0, 2), "p": slice(2, 4)})
    assert len(traj) == 11
    np.testing.assert_array_equal(traj.column("p"), np.tile([1., 0.5], (11, 1)))
    np.testing.assert_allclose(traj.last("q"), [1., 0.5], rtol=1e-14)
    np.testing.assert_allclose(traj.times[-1], 1.)


def test_fourth_order(oscillator):
    field = hamiltonian_field(oscillator)
    errors = []
    for h, steps in [(0.1, 10), (0.05, 20)]:
        y = oracle_integrate(field, [1., 0.], h, steps).last("y")
        errors.append(np.max(np.abs(y - [np.cos(1.), -np.sin(1.)])))
    assert 14 < errors[0] / errors[1] < 18


def test_rejects_non_positive_step(oscillator):
    with pytest.raises(ValueError):
        oracle_integrate(hamiltonian_field(oscillator), [1., 0.], 0., 10)


def test_non_finite_state():
    def blow_up(y):
        return y ** 2 * 1e200

    with pytest.raises(NonFiniteStateError) as info, np.errstate(over="ignore", invalid="ignore"):
        oracle_integrate(blow_up, [1e100], 1., 5)
    assert info.value.step == 1
