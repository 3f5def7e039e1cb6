#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Is a nonholonomic trajectory also vakonomic?

Along a nonholonomic motion with multipliers λ(t), the vakonomic equations
hold for some μ(t) iff

    μ̇_β = −λ_β − μ_α ∂_βΓ^α_b q̇^b        (constrained block)
    q̇^a μ_α R^α_ab = 0                     (free block)

The first equation fixes μ(t) up to μ(0); μ(0) is fitted by least squares
against the second.
"""

import numpy as np
import scipy.linalg
from scipy.optimize import OptimizeResult

from GeomInt.Comparison.Curvature import curvature
from GeomInt.Core.States import NonholonomicState
from GeomInt.Dynamics.Continuous import nonholonomic_rhs
from GeomInt.Integrators.Discrete import discrete_nonholonomic_step, slot_derivatives
from GeomInt.Integrators.Newton import DEFAULT

CONTINUOUS_TOLERANCE = 1e-6
DISCRETE_TOLERANCE = 1e-8
MU_FIT = "least-squares (implementation choice)"


def _require_constraints(sys):
    if sys.k == 0:
        raise ValueError("compare requires constraints")


def common_solution_scan(sys, traj, tol=CONTINUOUS_TOLERANCE, logger=None):
    """
    Parameters:
    -----------
    sys: LinearConstraintSystem
    traj: Trajectory
        nonholonomic run with columns q and v
    tol: float
        bound on both residuals for the verdict "common"

    Returns:
    --------
    OptimizeResult with
        verdict: "common" or "not common"
        common: bool
        fit_residual: root mean square of the free-block residual
        curvature_residual: max over samples of ‖q̇^a μ_α R^α_ab‖∞
        mu0, times, mu, residuals, curvature_norm
        mu_fit: description of the μ reconstruction
    """
    _require_constraints(sys)
    if not traj.has("q", "v"):
        raise KeyError("common_solution_scan needs q and v columns")
    times = traj.times
    qs, vs = traj.column("q"), traj.column("v")
    k = sys.k
    lam, rate, velocity, curvature_norm = [], [], [], []
    for q, v in zip(qs, vs):
        lam.append(nonholonomic_rhs(sys, NonholonomicState(q, v))[1])
        vfree, _ = sys.split.parts(v)
        dgam = sys.gamma_gradient(q)
        # K[β, α] = ∂_βΓ^α_b q̇^b
        rate.append(np.array([dgam[beta] @ vfree for beta in sys.split.constrained]))
        R = curvature(sys, q)
        velocity.append(R.velocity_matrix(vfree))
        curvature_norm.append(np.max(np.abs(R.R), initial=0.))

    # trapezoidal rule for μ̇ = −K μ − λ: particular solution and fundamental matrix
    eye = np.eye(k)
    particular = [np.zeros(k)]
    fundamental = [eye]
    for j in range(len(times) - 1):
        dt = times[j + 1] - times[j]
        lhs = eye + dt / 2 * rate[j + 1]
        explicit = eye - dt / 2 * rate[j]
        particular.append(scipy.linalg.solve(lhs, explicit @ particular[j] - dt / 2 * (lam[j] + lam[j + 1])))
        fundamental.append(scipy.linalg.solve(lhs, explicit @ fundamental[j]))

    a = np.concatenate([c @ phi for c, phi in zip(velocity, fundamental)])
    b = -np.concatenate([c @ mu for c, mu in zip(velocity, particular)])
    mu0 = scipy.linalg.lstsq(a, b)[0] if a.size else np.zeros(k)
    mu = np.array([mp + phi @ mu0 for mp, phi in zip(particular, fundamental)])
    residuals = np.array([np.max(np.abs(c @ m), initial=0.) for c, m in zip(velocity, mu)])
    fit_residual = np.sqrt(np.mean(np.concatenate([c @ m for c, m in zip(velocity, mu)]) ** 2)) \
        if a.size else 0.
    curvature_residual = np.max(residuals, initial=0.)
    common = bool(fit_residual <= tol and curvature_residual <= tol)
    if logger is not None:
        logger.pr("common solution scan: fit {:.3e}, curvature {:.3e}".format(fit_residual, curvature_residual))
    return OptimizeResult(verdict="common" if common else "not common", common=common,
                          fit_residual=float(fit_residual), curvature_residual=float(curvature_residual),
                          tolerance=tol, mu0=mu0, times=times, mu=mu, residuals=residuals,
                          curvature_norm=np.array(curvature_norm), mu_fit=MU_FIT)


def discrete_common_solution_check(sys, qprev, qcur, h, tol=DISCRETE_TOLERANCE, cfg=DEFAULT):
    """
    Take one discrete nonholonomic step (q_{k−1}, q_k) ↦ q_{k+1} and look for
    discrete vakonomic multipliers over the same configurations:

        D₂𝕃_d(q_{k−1}, q_k) + D₁𝕃_d(q_k, q_{k+1})
            + λ_k·D₂φ_d(q_{k−1}, q_k) + λ_{k+1}·D₁φ_d(q_k, q_{k+1}) = 0

    solved by least squares in (λ_k, λ_{k+1}).

    Returns:
    --------
    OptimizeResult with qnext, nonholonomic_multiplier, lambdas (2×k),
    residual, common (residual ≤ tol), tolerance
    """
    _require_constraints(sys)
    qprev = np.asarray(qprev, dtype=float)
    qcur = np.asarray(qcur, dtype=float)
    qnext, lam = discrete_nonholonomic_step(sys, qprev, qcur, h, cfg=cfg)
    _, d2L, _, d2phi = slot_derivatives(sys, qprev, qcur, h)
    d1L, _, d1phi, _ = slot_derivatives(sys, qcur, qnext, h)
    a = np.concatenate([d2phi, d1phi]).T
    b = -(d2L + d1L)
    lambdas = scipy.linalg.lstsq(a, b)[0]
    residual = float(np.max(np.abs(a @ lambdas - b), initial=0.))
    return OptimizeResult(qnext=qnext, nonholonomic_multiplier=lam, lambdas=lambdas.reshape(2, sys.k),
                          residual=residual, common=residual <= tol, tolerance=tol)
