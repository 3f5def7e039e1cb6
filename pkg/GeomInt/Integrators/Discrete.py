#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Discrete constrained mechanics for LinearConstraintSystem.

The discrete Lagrangian and discrete constraints come from a one-point
quadrature of 𝕃 and φ, evaluated at q₀ ("euler") or at (q₀ + q₁)/2
("midpoint"):

    𝕃_d(q₀, q₁) = h 𝕃(q_b, (q₁ − q₀)/h)
    φ_d(q₀, q₁) = Δq^α − Γ^α_a(q_b) Δq^a

With rule="gauss" the constraint is instead the line integral of the
constraint forms along the segment, by three-point Gauss-Legendre
quadrature:

    φ_d(q₀, q₁) = Δq^α − ∫₀¹ Γ^α_a(q₀ + sΔq) ds Δq^a

which is the exact increment of the constraint function when Γ is
holonomic and of degree ≤ 5 along the segment. The discrete
vakonomic and discrete nonholonomic equations then coincide, with
λ_nh = λ_{k+1} − λ_k.

Momenta follow p₀ = −D₁𝕃_d − λ·D₁φ_d and p₁ = D₂𝕃_d + λ·D₂φ_d, i.e. the
first slot of Υ is negated once so that p₀ is the physical momentum.
All slot derivatives are exact (dual numbers).
"""

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from GeomInt.Core.States import PhaseState
from GeomInt.Integrators.Newton import DEFAULT, RegularityError, solve_implicit
from GeomInt.Integrators.Symplectic import check_step_size
from GeomInt.Tools.Dual import jacobian, solve

DISCRETIZATIONS = ("euler", "midpoint")
CONSTRAINT_RULES = ("point", "gauss")
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(3)
GAUSS_NODES = tuple(zip((_NODES + 1) / 2, _WEIGHTS / 2))
REGULARITY_LIMIT = 1e12


@dataclass(frozen=True)
class DiscreteVakStep:
    """Result of one discrete vakonomic step"""
    q1: np.ndarray
    p1: np.ndarray
    lambda1: np.ndarray
    constraint_residual: float = 0.
    regularity_condition: float = np.nan


def _base_point(q0, q1, discretization):
    if discretization == "euler":
        return q0
    if discretization == "midpoint":
        return (q0 + q1) / 2
    raise ValueError("unknown discretization '{}', expected one of {}".format(discretization, DISCRETIZATIONS))


def discrete_lagrangian(sys, q0, q1, h, discretization="euler"):
    """𝕃_d(q₀, q₁) = (1/2h) Δq·g(q_b)·Δq − h V(q_b)"""
    qb = _base_point(q0, q1, discretization)
    dq = q1 - q0
    return dq @ sys.metric_matrix(qb) @ dq / (2 * h) - h * sys.potential_value(qb)


def discrete_constraint(sys, q0, q1, discretization="euler", rule="point"):
    """
    φ_d^α(q₀, q₁) = Δq^α − Γ^α_a(q_b) Δq^a, or the Gauss-Legendre line
    integral of ω^α along the segment for rule="gauss"
    """
    dq = q1 - q0
    if rule == "point":
        return sys.constraint_matrix(_base_point(q0, q1, discretization)) @ dq
    if rule == "gauss":
        return sum(float(w) * (sys.constraint_matrix(q0 + float(s) * dq) @ dq) for s, w in GAUSS_NODES)
    raise ValueError("unknown constraint rule '{}', expected one of {}".format(rule, CONSTRAINT_RULES))


def slot_derivatives(sys, q0, q1, h, discretization="euler", rule="point"):
    """
    Slot derivatives of the discrete Lagrangian and constraints.

    Returns:
    --------
    D1L, D2L: vectors n
    D1phi, D2phi: k×n matrices
    """
    n = sys.n

    def stacked(z):
        a, b = z[:n], z[n:]
        return np.concatenate([[discrete_lagrangian(sys, a, b, h, discretization)],
                               discrete_constraint(sys, a, b, discretization, rule)])

    d = jacobian(stacked, np.concatenate([q0, q1]))
    return d[0, :n], d[0, n:], d[1:, :n], d[1:, n:]


def discrete_vakonomic_step(sys, q0, p0, discretization="euler", h=None, guess=None, cfg=DEFAULT,
                            regularity=True, logger=None, rule="point"):
    """
    Solve the 2n + k equations

        p₀ = −D₁𝕃_d(q₀, q₁) − λ₁·D₁φ_d(q₀, q₁)
        p₁ = D₂𝕃_d(q₀, q₁) + λ₁·D₂φ_d(q₀, q₁)
        φ_d(q₀, q₁) = 0

    for (q₁, p₁, λ₁).

    Parameters:
    -----------
    sys: LinearConstraintSystem
    q0, p0: array_like
    discretization: str
        "euler" or "midpoint"
    h: float
    guess: array_like, optional
        multiplier of the previous step; zero if None
    cfg: NewtonConfig
    regularity: bool
        assemble the regularity matrix and report its condition number
    rule: str
        "point" or "gauss" quadrature of the discrete constraints

    Returns:
    --------
    DiscreteVakStep
    """
    check_step_size(h)
    _base_point(q0, q0, discretization)
    q0 = np.asarray(q0, dtype=float)
    p0 = np.asarray(p0, dtype=float)
    n, k = sys.n, sys.k

    def residual(y):
        q1, p1, lam = y[:n], y[n:2 * n], y[2 * n:]
        d1L, d2L, d1phi, d2phi = slot_derivatives(sys, q0, q1, h, discretization, rule)
        return np.concatenate([p0 + d1L + lam @ d1phi,
                               p1 - d2L - lam @ d2phi,
                               discrete_constraint(sys, q0, q1, discretization, rule)])

    lam0 = np.zeros(k) if guess is None else np.asarray(guess, dtype=float)
    dH_dp = sys.evaluate(q0, p0, energy=False, gradient=True)[2]
    y = solve_implicit(residual, np.concatenate([q0 + h * dH_dp, p0, lam0]), cfg, logger)
    q1, p1, lam = y[:n], y[n:2 * n], y[2 * n:]
    violation = np.max(np.abs(discrete_constraint(sys, q0, q1, discretization, rule)), initial=0.)
    condition = np.nan
    if regularity:
        _, mu = sys.split.parts(p1)
        q1free, _ = sys.split.parts(q1)
        condition = regularity_condition(sys, q0, q1free, mu, h, discretization, cfg, rule)
        if logger is not None and condition > REGULARITY_LIMIT / 1e4:
            logger.pr("regularity matrix poorly conditioned: {:.3e}".format(condition))
    return DiscreteVakStep(q1, p1, lam, violation, condition)


def complete_configuration(sys, q0, q1free, h=None, discretization="euler", cfg=DEFAULT, rule="point"):
    """Constrained coordinates of q₁ solving φ_d(q₀, q₁) = 0"""
    q0 = np.asarray(q0, dtype=float)
    q0free, q0con = sys.split.parts(q0)
    q1con = q0con + sys.gamma_matrix(q0) @ (np.asarray(q1free) - q0free)
    if (discretization == "euler" and rule == "point") or sys.k == 0:
        return sys.split.join(q1free, q1con)

    def residual(qc):
        return discrete_constraint(sys, q0, sys.split.join(q1free, qc), discretization, rule)

    return sys.split.join(q1free, solve_implicit(residual, q1con, cfg))


def _legendre_pair(sys, q0, q1free, mu1, h, discretization, cfg, rule="point"):
    check_step_size(h)
    q1 = complete_configuration(sys, q0, q1free, h, discretization, cfg, rule)
    d1L, d2L, d1phi, d2phi = slot_derivatives(sys, np.asarray(q0, dtype=float), q1, h, discretization, rule)
    _, d2L_con = sys.split.parts(d2L)
    d2phi_con = d2phi[:, list(sys.split.constrained)]
    lam = solve(d2phi_con.T, np.asarray(mu1, dtype=float) - d2L_con) if sys.k else np.zeros(0)
    return q1, -d1L - lam @ d1phi, d2L + lam @ d2phi


def discrete_legendre_minus(sys, q0, q1free, mu1, h, discretization="euler", cfg=DEFAULT, rule="point"):
    """
    𝔽L_d⁻: (q₀, q₁ᵃ, μ₁) ↦ (q₀, p₀) with p₀ = −D₁(𝕃_d + λ·φ_d) and λ fixed
    by p₁_α = μ₁_α
    """
    _, p0, _ = _legendre_pair(sys, q0, q1free, mu1, h, discretization, cfg, rule)
    return PhaseState(q0, p0)


def discrete_legendre_plus(sys, q0, q1free, mu1, h, discretization="euler", cfg=DEFAULT, rule="point"):
    """𝔽L_d⁺: (q₀, q₁ᵃ, μ₁) ↦ (q₁, p₁) with p₁ = D₂(𝕃_d + λ·φ_d)"""
    q1, _, p1 = _legendre_pair(sys, q0, q1free, mu1, h, discretization, cfg, rule)
    return PhaseState(q1, p1)


def regularity_matrix(sys, q0, q1free, mu1, h, discretization="euler", cfg=DEFAULT, fd_step=1e-6, rule="point"):
    """
    Derivative of (q₁ᵃ, μ₁) ↦ p₀ at fixed q₀; nondegenerate iff the
    discrete Lagrangian is regular there. Central differences through the
    (possibly implicit) completion of q₁.
    """
    q1free = np.asarray(q1free, dtype=float)
    mu1 = np.asarray(mu1, dtype=float)
    m = len(q1free)

    def p0_of(x):
        return _legendre_pair(sys, q0, x[:m], x[m:], h, discretization, cfg, rule)[1]

    x = np.concatenate([q1free, mu1])
    columns = [(p0_of(x + fd_step * e) - p0_of(x - fd_step * e)) / (2 * fd_step) for e in np.eye(len(x))]
    return np.array(columns).T


def regularity_condition(sys, q0, q1free, mu1, h, discretization="euler", cfg=DEFAULT, rule="point"):
    """Condition number of the regularity matrix; RegularityError above 1e12"""
    condition = np.linalg.cond(regularity_matrix(sys, q0, q1free, mu1, h, discretization, cfg, rule=rule))
    if not condition <= REGULARITY_LIMIT:
        raise RegularityError(condition)
    return condition


def discrete_nonholonomic_step(sys, qprev, qcur, h, guess=None, cfg=DEFAULT, logger=None, rule="point"):
    """
    Solve for (q_{k+1}, λ)

        D₂𝕃_d(q_{k−1}, q_k) + D₁𝕃_d(q_k, q_{k+1}) = λ_α ω^α(q_k)
        φ_d(q_k, q_{k+1}) = 0

    with ω^α = dq^α − Γ^α_a dq^a and the Euler discretization. With
    rule="gauss" and holonomic Γ, seeding (q₀, q₁) from a discrete vakonomic
    run with the same rule reproduces that run.

    Returns:
    --------
    qnext: vector n, lam: vector k
    """
    check_step_size(h)
    qprev = np.asarray(qprev, dtype=float)
    qcur = np.asarray(qcur, dtype=float)
    n = sys.n
    d2L_prev = slot_derivatives(sys, qprev, qcur, h, rule=rule)[1]
    omega = sys.constraint_matrix(qcur)

    def residual(y):
        qn, lam = y[:n], y[n:]
        d1L = slot_derivatives(sys, qcur, qn, h, rule=rule)[0]
        return np.concatenate([d2L_prev + d1L - lam @ omega, discrete_constraint(sys, qcur, qn, rule=rule)])

    lam0 = np.zeros(sys.k) if guess is None else np.asarray(guess, dtype=float)
    y = solve_implicit(residual, np.concatenate([2 * qcur - qprev, lam0]), cfg, logger)
    return y[:n], y[n:]


def verlet_discrete_lagrangian(sys, q0, q1, h):
    """
    ½h 𝕃(q₀, Δq/h) + ½h 𝕃(q₁, Δq/h), the discrete Lagrangian of
    Störmer-Verlet for systems without constraints
    """
    if sys.k:
        raise ValueError("the Verlet discrete Lagrangian is defined for unconstrained systems")
    v = (np.asarray(q1) - np.asarray(q0)) / h
    return h / 2 * (sys.lagrangian(q0, v) + sys.lagrangian(q1, v))


def slot_gradient_fd(sys, q0, q1, h, discretization="euler", step=1e-7):
    """Forward-difference D₁𝕃_d, D₂𝕃_d; a cross-check of slot_derivatives"""
    n = sys.n
    z = np.concatenate([q0, q1]).astype(float)
    g = scipy.optimize.approx_fprime(z, lambda x: discrete_lagrangian(sys, x[:n], x[n:], h, discretization), step)
    return g[:n], g[n:]
