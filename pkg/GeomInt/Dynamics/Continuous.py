#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Right-hand sides of the three continuous dynamics: Hamilton's equations,
the reduced vakonomic (constrained-variational) equations on the Lagrangian
side, and the nonholonomic (Lagrange-d'Alembert) equations with the
multipliers eliminated by a linear solve.
"""

import numpy as np
import scipy.linalg

from GeomInt.Core.States import ExtendedVakState, NonholonomicState, PhaseState
from GeomInt.Systems.Systems import ConstraintViolation
from GeomInt.Tools.Dual import solve, values

ADMISSIBLE_VIOLATION = 1e-8


class MultiplierError(ArithmeticError):
    pass


def hamiltonian_rhs(system, state):
    """q̇ = ∂H/∂p, ṗ = −∂H/∂q"""
    dH_dq, dH_dp = system.hamiltonian_gradient(state)
    return dH_dp, -dH_dq


def vakonomic_rhs(sys, s):
    """
    Reduced vakonomic equations in (q, q̇^a, p_α):

        d/dt (γ_ab q̇^b − p_α Γ^α_a) = ½ q̇·∂_aγ·q̇ − ∂_aV − p_α ∂_aΓ^α_b q̇^b
        ṗ_β = ½ q̇·∂_βγ·q̇ − ∂_βV − p_α ∂_βΓ^α_b q̇^b
        q̇^α = Γ^α_a q̇^a

    Returns:
    --------
    q̇ (n), v̇free (n−k), ṗcon (k)
    """
    q, v, mu = s.q, s.vfree, s.pcon
    rm = sys.reduced_metric(q)
    gam = sys.gamma_matrix(q)
    dgam = sys.gamma_gradient(q)
    dV = sys.potential_gradient(q)
    qdot = sys.embedding(q) @ v
    force = np.array([0.5 * v @ rm.dgamma[i] @ v - dV[i] - mu @ (dgam[i] @ v) for i in range(sys.n)])
    free, constrained = sys.split.parts(force)
    gamma_rate = sum(qdot[i] * rm.dgamma[i] for i in range(sys.n))
    gam_rate = sum(qdot[i] * dgam[i] for i in range(sys.n))
    rhs = free - gamma_rate @ v + gam.T @ constrained + gam_rate.T @ mu
    return qdot, solve(rm.gamma, rhs), constrained


def make_nonholonomic_state(sys, q, v, tol=ADMISSIBLE_VIOLATION):
    """Admit (q, v) only if it satisfies the constraints within `tol`"""
    s = NonholonomicState(q, v)
    residual = np.max(np.abs(sys.constraint_violation(s.q, s.v)), initial=0.)
    if residual > tol:
        raise ConstraintViolation(residual)
    return s


def nonholonomic_rhs(sys, s):
    """
    Solve g q̈ + c(q, q̇) + ∇V = Aᵀλ, A q̈ + Ȧ q̇ = 0 for (q̈, λ), where c holds
    the Christoffel terms and A^α_i = ∂φ^α/∂q̇^i. The multiplier matrix
    A g⁻¹ Aᵀ is SPD for SPD g.

    Returns:
    --------
    q̈ (n), λ (k)
    """
    q, v = s.q, s.v
    g = sys.metric_matrix(q)
    dg = sys.metric_gradient(q)
    dV = sys.potential_gradient(q)
    christoffel = sum(v[i] * dg[i] for i in range(sys.n)) @ v \
        - 0.5 * np.array([v @ dg[i] @ v for i in range(sys.n)])
    g_inv_force = solve(g, -(christoffel + dV))
    if sys.k == 0:
        return g_inv_force, np.zeros(0)
    a = sys.constraint_matrix(q)
    vfree, _ = sys.split.parts(v)
    dgam = sys.gamma_gradient(q)
    # Ȧ q̇ only involves the free block: −(Σ_i q̇^i ∂_iΓ) q̇^a
    a_rate_v = -(sum(v[i] * dgam[i] for i in range(sys.n)) @ vfree)
    g_inv_at = solve(g, a.T)
    m = a @ g_inv_at
    try:
        scipy.linalg.cholesky(values(m))
    except np.linalg.LinAlgError:
        raise MultiplierError("multiplier matrix A g⁻¹ Aᵀ is singular at q = {}".format(values(q)))
    lam = solve(m, -a_rate_v - a @ g_inv_force)
    return g_inv_force + g_inv_at @ lam, lam


def hamiltonian_field(system):
    n = system.n

    def field(y):
        qdot, pdot = hamiltonian_rhs(system, PhaseState(y[:n], y[n:]))
        return np.concatenate([qdot, pdot])
    return field


def vakonomic_field(sys):
    n, k = sys.n, sys.k

    def field(y):
        qdot, vdot, pdot = vakonomic_rhs(sys, ExtendedVakState(y[:n], y[n:2 * n - k], y[2 * n - k:]))
        return np.concatenate([qdot, vdot, pdot])
    return field


def nonholonomic_field(sys):
    n = sys.n

    def field(y):
        vdot, _ = nonholonomic_rhs(sys, NonholonomicState(y[:n], y[n:]))
        return np.concatenate([y[n:], vdot])
    return field
