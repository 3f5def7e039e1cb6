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

from GeomInt.Core.States import PhaseState, VakonomicState
from GeomInt.Expressions.Parser import parse_expr
from GeomInt.Systems.Factory import make_system
from GeomInt.Systems.Systems import LinearConstraintSystem, MetricError, make_split

pytestmark = pytest.mark.skipif(MPI.COMM_WORLD.Get_size() > 1,
                                reason="tests only serial functionalities, please execute with pytest")

XYZ = ["x", "y", "z"]


def martinet_with_metric(diagonal):
    metric = [[parse_expr(diagonal[i] if i == j else "0", XYZ) for j in range(3)] for i in range(3)]
    return LinearConstraintSystem(make_split(3, [2]), [[parse_expr("y^2/2", XYZ), parse_expr("0", XYZ)]],
                                  metric=metric, varnames=XYZ)


def fd_gradient(f, x, step=1e-6):
    return np.array([(f(x + step * e) - f(x - step * e)) / (2 * step) for e in np.eye(len(x))])


def test_reduced_metric(martinet_distribution):
    np.testing.assert_allclose(martinet_distribution.reduced_metric([0., 1., 0.]).gamma, [[1.25, 0.], [0., 1.]])
    np.testing.assert_allclose(martinet_distribution.reduced_metric([0.3, 0., 2.]).gamma, np.eye(2))
    sys = martinet_with_metric(["2", "1", "1"])
    np.testing.assert_allclose(sys.reduced_metric([0., 1., 0.]).gamma, [[2.25, 0.], [0., 1.]])


def test_reduced_metric_derivatives(martinet_distribution):
    q = np.array([0.2, 0.7, -0.4])
    rm = martinet_distribution.reduced_metric(q)
    for i in range(3):
        e = np.eye(3)[i] * 1e-6
        fd = (martinet_distribution.reduced_metric(q + e).gamma - martinet_distribution.reduced_metric(q - e).gamma) \
            / 2e-6
        np.testing.assert_allclose(rm.dgamma[i], fd, atol=1e-8)


def test_inverse_reduced_metric_derivatives(rng):
    sys = martinet_with_metric(["1 + x^2", "2 + y*z", "1"])
    for q in rng.uniform(-1, 1, size=(20, 3)):
        rm = sys.reduced_metric(q)
        for i in range(3):
            # (∂γ⁻¹) γ = −γ⁻¹ ∂γ
            np.testing.assert_allclose(rm.dgamma_inv(i) @ rm.gamma, -rm.gamma_inv @ rm.dgamma[i], atol=1e-10)
            e = np.eye(3)[i] * 1e-6
            fd = (sys.reduced_metric(q + e).gamma_inv - sys.reduced_metric(q - e).gamma_inv) / 2e-6
            np.testing.assert_allclose(rm.dgamma_inv(i), fd, atol=1e-7)


def test_hamiltonian(martinet_distribution):
    state = PhaseState([0., 1., 0.], [1., 0., 2.])
    assert martinet_distribution.hamiltonian(state) == pytest.approx(1.6)
    assert martinet_distribution.hamiltonian(PhaseState([0., 0., 0.], [1., 1., 5.])) == pytest.approx(1.)


def test_zero_momentum_gives_potential():
    sys = make_system({"n": 2, "potential": "x^2 + 3*y", "constraints": [{"alpha_index": 2, "coeffs": ["x"]}]})
    state = PhaseState([0.5, 1.], [0., 0.])
    assert sys.hamiltonian(state) == pytest.approx(3.25)
    dH_dq, dH_dp = sys.hamiltonian_gradient(state)
    np.testing.assert_allclose(dH_dp, 0.)
    np.testing.assert_allclose(dH_dq, [1., 3.])


def test_hamiltonian_gradient(martinet_distribution):
    state = PhaseState([0., 1., 0.], [1., 0., 2.])
    dH_dq, dH_dp = martinet_distribution.hamiltonian_gradient(state)
    np.testing.assert_allclose(dH_dp, [1.6, 0., 0.8])
    np.testing.assert_allclose(dH_dp[2], 0.8)


@pytest.mark.parametrize("catalog", ["martinet_distribution", "heisenberg", "holonomic_demo"])
def test_hamiltonian_gradient_against_finite_differences(catalog, rng):
    sys = make_system(catalog)
    for _ in range(10):
        q, p = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        dH_dq, dH_dp = sys.hamiltonian_gradient(PhaseState(q, p))
        np.testing.assert_allclose(dH_dq, fd_gradient(lambda x: sys.hamiltonian(PhaseState(x, p)), q),
                                   rtol=1e-6, atol=1e-8)
        np.testing.assert_allclose(dH_dp, fd_gradient(lambda x: sys.hamiltonian(PhaseState(q, x)), p),
                                   rtol=1e-6, atol=1e-8)


def test_gradient_with_metric_and_potential(rng):
    sys = make_system({"n": 3, "varnames": XYZ, "metric": [["2 + y^2", "x/4", "0"], ["x/4", "1", "0"],
                                                           ["0", "0", "1 + x^2"]],
                       "potential": "x*y + z^2", "constraints": [{"alpha_index": 3, "coeffs": ["y^2/2", "x"]}]})
    q, p = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
    dH_dq, dH_dp = sys.hamiltonian_gradient(PhaseState(q, p))
    np.testing.assert_allclose(dH_dq, fd_gradient(lambda x: sys.hamiltonian(PhaseState(x, p)), q),
                               rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(dH_dp, fd_gradient(lambda x: sys.hamiltonian(PhaseState(q, x)), p),
                               rtol=1e-6, atol=1e-8)


def test_constrained_legendre(martinet_distribution):
    state = martinet_distribution.constrained_legendre(VakonomicState([0., 1., 0.], [1., 0.], [2.]))
    np.testing.assert_allclose(state.p, [0.25, 0., 2.])
    zero = martinet_distribution.constrained_legendre(VakonomicState([0.3, -1., 2.], [0., 0.], [0.]))
    np.testing.assert_allclose(zero.p, 0.)


def test_legendre_inverse(martinet_distribution):
    s = martinet_distribution.legendre_inverse(PhaseState([0., 1., 0.], [0.25, 0., 2.]))
    np.testing.assert_allclose(s.vfree, [1., 0.], atol=1e-14)
    np.testing.assert_allclose(s.mu, [2.])


@pytest.mark.parametrize("catalog", ["martinet_distribution", "heisenberg"])
def test_legendre_round_trip(catalog, rng):
    sys = make_system(catalog)
    for _ in range(100):
        s = VakonomicState(rng.uniform(-2, 2, 3), rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 1))
        back = sys.legendre_inverse(sys.constrained_legendre(s))
        np.testing.assert_allclose(back.vfree, s.vfree, atol=1e-12)
        np.testing.assert_allclose(back.mu, s.mu, atol=1e-12)


def test_energy(martinet_distribution, rng):
    s = VakonomicState([0., 1., 0.], [1., 0.], [2.])
    assert martinet_distribution.energy(s) == pytest.approx(0.625)
    assert martinet_distribution.energy(VakonomicState([0., 1., 0.], [1., 0.], [-7.])) == pytest.approx(0.625)
    for _ in range(20):
        s = VakonomicState(rng.uniform(-2, 2, 3), rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 1))
        np.testing.assert_allclose(martinet_distribution.energy(s),
                                   martinet_distribution.hamiltonian(martinet_distribution.constrained_legendre(s)),
                                   rtol=1e-10)


def test_energy_at_rest_is_potential():
    sys = make_system({"n": 2, "potential": "x^2", "constraints": [{"alpha_index": 2, "coeffs": ["x"]}]})
    assert sys.energy(VakonomicState([2., 0.], [0.], [1.])) == pytest.approx(4.)


def test_metric_not_positive_definite():
    sys = martinet_with_metric(["x", "1", "1"])
    with pytest.raises(MetricError):
        sys.hamiltonian(PhaseState([-1., 0., 0.], [1., 0., 0.]))


def test_asymmetric_metric_rejected():
    with pytest.raises(ValueError):
        make_system({"n": 2, "metric": [["1", "x"], ["0", "1"]]})


@pytest.mark.parametrize("upper, lower", [("x*y", "y*x"), ("(x + 1)^2", "x^2 + 2*x + 1"), ("x/2", "0.5*x")])
def test_metric_symmetry_is_checked_by_value(upper, lower):
    sys = make_system({"n": 2, "metric": [["2", upper], [lower, "2"]]})
    np.testing.assert_allclose(sys.metric_matrix(np.array([0.5, 1.])), sys.metric_matrix(np.array([0.5, 1.])).T)
    with pytest.raises(ValueError, match="not symmetric"):
        make_system({"n": 2, "metric": [["2", upper], [lower + " + x", "2"]]})


def test_constraint_violation(martinet_distribution):
    np.testing.assert_allclose(martinet_distribution.constraint_violation([0., 1., 0.], [1., 0., 0.5]), [0.])
    np.testing.assert_allclose(martinet_distribution.constraint_violation([0., 1., 0.], [1., 0., 1.]), [0.5])
