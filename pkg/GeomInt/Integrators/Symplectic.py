#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
One-step maps on PhaseState for a HamiltonianSystem: the two symplectic
Euler variants, the implicit midpoint rule, Störmer-Verlet, and two
controls (explicit Euler, identity).

A negative h runs the map backwards; h = 0 is rejected.
"""

import numpy as np

from GeomInt.Core.States import PhaseState
from GeomInt.Integrators.Newton import DEFAULT, solve_implicit


def check_step_size(h):
    if not np.isfinite(h) or h == 0:
        raise ValueError("step size must be finite and nonzero, got {}".format(h))


def _dH(system, q, p):
    _, dH_dq, dH_dp = system.evaluate(q, p, energy=False, gradient=True)
    return dH_dq, dH_dp


def symplectic_euler_step(system, state, h, cfg=DEFAULT, logger=None):
    """
    p₁ = p₀ − h H_q(q₀, p₁),  q₁ = q₀ + h H_p(q₀, p₁)

    Implicit in p₁ only.
    """
    check_step_size(h)
    q0, p0 = state.q, state.p

    def residual(p1):
        return p1 - p0 + h * _dH(system, q0, p1)[0]

    p1 = solve_implicit(residual, p0 - h * _dH(system, q0, p0)[0], cfg, logger)
    return PhaseState(q0 + h * _dH(system, q0, p1)[1], p1)


half_euler_A = symplectic_euler_step


def adjoint_euler_step(system, state, h, cfg=DEFAULT, logger=None):
    """
    q₁ = q₀ + h H_p(q₁, p₀),  p₁ = p₀ − h H_q(q₁, p₀)

    Implicit in q₁ only; the adjoint of symplectic_euler_step.
    """
    check_step_size(h)
    q0, p0 = state.q, state.p

    def residual(q1):
        return q1 - q0 - h * _dH(system, q1, p0)[1]

    q1 = solve_implicit(residual, q0 + h * _dH(system, q0, p0)[1], cfg, logger)
    return PhaseState(q1, p0 - h * _dH(system, q1, p0)[0])


half_euler_B = adjoint_euler_step


def midpoint_step(system, state, h, cfg=DEFAULT, logger=None):
    """
    q₁ = q₀ + h H_p(q̄, p̄),  p₁ = p₀ − h H_q(q̄, p̄)

    with q̄, p̄ the midpoints of the step; Newton on all 2n unknowns.
    """
    check_step_size(h)
    q0, p0 = state.q, state.p
    n = len(q0)

    def residual(y):
        q1, p1 = y[:n], y[n:]
        dH_dq, dH_dp = _dH(system, (q0 + q1) / 2, (p0 + p1) / 2)
        return np.concatenate([q1 - q0 - h * dH_dp, p1 - p0 + h * dH_dq])

    dH_dq, dH_dp = _dH(system, q0, p0)
    y = solve_implicit(residual, np.concatenate([q0 + h * dH_dp, p0 - h * dH_dq]), cfg, logger)
    return PhaseState(y[:n], y[n:])


def stormer_verlet_step(system, state, h, cfg=DEFAULT, logger=None):
    """
    p_{1/2} = p₀ − h/2 H_q(q₀, p_{1/2})
    q₁ = q₀ + h/2 (H_p(q₀, p_{1/2}) + H_p(q₁, p_{1/2}))
    p₁ = p_{1/2} − h/2 H_q(q₁, p_{1/2})
    """
    check_step_size(h)
    q0, p0 = state.q, state.p

    def half_momentum(p):
        return p - p0 + h / 2 * _dH(system, q0, p)[0]

    p_half = solve_implicit(half_momentum, p0 - h / 2 * _dH(system, q0, p0)[0], cfg, logger)
    drift = _dH(system, q0, p_half)[1]

    def position(q):
        return q - q0 - h / 2 * (drift + _dH(system, q, p_half)[1])

    q1 = solve_implicit(position, q0 + h * drift, cfg, logger)
    return PhaseState(q1, p_half - h / 2 * _dH(system, q1, p_half)[0])


def explicit_euler_step(system, state, h, cfg=DEFAULT, logger=None):
    """Forward Euler; not symplectic, kept as a control"""
    check_step_size(h)
    dH_dq, dH_dp = _dH(system, state.q, state.p)
    return PhaseState(state.q + h * dH_dp, state.p - h * dH_dq)


def identity_step(system, state, h, cfg=DEFAULT, logger=None):
    return PhaseState(state.q, state.p)


def euler_generating_function(system, q0, p1, h):
    """
    S(q₀, p₁) = h (p₁ · H_p(q₀, p₁) − H(q₀, p₁)), the generating function
    of symplectic_euler_step for Hamiltonians quadratic in p
    """
    H, _, dH_dp = system.evaluate(q0, p1, energy=True, gradient=True)
    return h * (np.asarray(p1) @ dH_dp - H)


def verlet_generating_functions(system, state, h, cfg=DEFAULT):
    """
    Half-step states and discrete Lagrangians of one Störmer-Verlet step.

    Returns:
    --------
    half: PhaseState (q_{1/2}, p_{1/2})
    full: PhaseState (q₁, p₁)
    ld_plus: p_{1/2}·(q_{1/2} − q₀) − h/2 H(q₀, p_{1/2})
    ld_minus: p_{1/2}·(q₁ − q_{1/2}) − h/2 H(q₁, p_{1/2})
    """
    half = half_euler_A(system, state, h / 2, cfg)
    full = half_euler_B(system, half, h / 2, cfg)
    ld_plus = half.p @ (half.q - state.q) - h / 2 * system.evaluate(state.q, half.p)[0]
    ld_minus = half.p @ (full.q - half.q) - h / 2 * system.evaluate(full.q, half.p)[0]
    return half, full, ld_plus, ld_minus


INTEGRATORS = {
    "symplectic_euler": symplectic_euler_step,
    "symplectic_euler_b": adjoint_euler_step,
    "midpoint": midpoint_step,
    "verlet": stormer_verlet_step,
    "explicit_euler": explicit_euler_step,
    "none": identity_step,
}

ORDERS = {
    "symplectic_euler": 1,
    "symplectic_euler_b": 1,
    "midpoint": 2,
    "verlet": 2,
    "explicit_euler": 1,
    "oracle_rk4": 4,
}
