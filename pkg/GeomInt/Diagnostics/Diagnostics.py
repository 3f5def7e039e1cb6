#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Quantitative checks of one-step maps and trajectories: symplecticity
defect, energy drift, constraint residuals, convergence order and
reversibility.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.stats
from NuMPI import MPI
from NuMPI.Tools.Reduction import Reduction

from GeomInt.Core.States import PhaseState
from GeomInt.Dynamics.Continuous import hamiltonian_field
from GeomInt.Dynamics.Oracle import rk4
from GeomInt.Integrators.Discrete import discrete_vakonomic_step
from GeomInt.Integrators.Newton import DEFAULT
from GeomInt.Integrators.Runs import (HAMILTONIAN_STEPS, VAKONOMIC, integrator_kind, linear_constraint_system,
                                      run)
from GeomInt.Integrators.Symplectic import ORDERS

SYMPLECTICITY_TOLERANCE = 1e-5
ORDER_TOLERANCE = 0.1
REVERSIBILITY_TOLERANCE = 1e-11
ENERGY_TOLERANCE = 1e-2
CONSTRAINT_TOLERANCE = 1e-7
SYMMETRIC = ("midpoint", "verlet", "vakonomic_midpoint", "none")
STATE_RANGE = 2.
POLE_CLEARANCE = 0.5


@dataclass(frozen=True)
class DiagnosticReport:
    name: str
    value: float
    tolerance: float
    passed: bool
    context: dict = field(default_factory=dict)

    @classmethod
    def check(cls, name, value, tolerance, **context):
        """Report whose verdict is value ≤ tolerance"""
        value = float(value)
        return cls(name, value, float(tolerance), bool(value <= tolerance),
                   {key: str(val) for key, val in context.items()})

    def as_dict(self):
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance,
                "pass": self.passed, "context": dict(self.context)}


def canonical_matrix(n):
    """J = [[0, I], [−I, 0]] of size 2n"""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def step_function(system, integrator, cfg=DEFAULT):
    """The integrator as a map (PhaseState, h) -> PhaseState"""
    if integrator in HAMILTONIAN_STEPS:
        step = HAMILTONIAN_STEPS[integrator]
        return lambda state, h: step(system, state, h, cfg=cfg)
    if integrator in VAKONOMIC:
        linear = linear_constraint_system(system)
        discretization = VAKONOMIC[integrator]

        def vakonomic(state, h):
            result = discrete_vakonomic_step(linear, state.q, state.p, discretization, h, cfg=cfg,
                                             regularity=False)
            return PhaseState(result.q1, result.p1)
        return vakonomic
    raise ValueError("integrator '{}' is not a map on phase space".format(integrator))


def order_of(integrator):
    if integrator in VAKONOMIC:
        return {"euler": 1, "midpoint": 2}[VAKONOMIC[integrator]]
    return ORDERS.get(integrator)


def symplecticity_defect(step, state, h, fd_step=1e-6):
    """
    ‖DΦᵀ J DΦ − J‖∞ with DΦ from central differences of the full step.

    Parameters:
    -----------
    step: callable
        (PhaseState, h) -> PhaseState
    state: PhaseState
    h: float
    fd_step: float
    """
    if not fd_step > 0:
        raise ValueError("finite-difference step must be positive, got {}".format(fd_step))
    y = state.flat()
    m = len(y)
    columns = []
    for e in np.eye(m):
        plus = step(PhaseState.from_flat(y + fd_step * e), h).flat()
        minus = step(PhaseState.from_flat(y - fd_step * e), h).flat()
        columns.append((plus - minus) / (2 * fd_step))
    d = np.array(columns).T
    J = canonical_matrix(m // 2)
    return np.max(np.abs(d.T @ J @ d - J))


def energy_drift(system, traj):
    """
    max_t |H(t) − H(0)| and |H(T) − H(0)| along a trajectory with q, p
    columns, H evaluated afresh by `system`
    """
    if not traj.has("q", "p"):
        raise KeyError("energy_drift needs q and p columns")
    H = np.array([system.hamiltonian(PhaseState(q, p)) for q, p in zip(traj.column("q"), traj.column("p"))])
    drift = np.abs(H - H[0])
    return drift.max(), drift[-1]


def constraint_residual(system, traj, kind="continuous"):
    """
    Max over samples of ‖φ‖∞. "continuous" uses the v column (or ∂H/∂p
    when only p is present); "discrete" uses consecutive q pairs.
    """
    if not traj.has("q"):
        raise KeyError("constraint_residual needs a q column")
    qs = traj.column("q")
    if kind == "discrete":
        violations = [system.discrete_constraint_violation(a, b) for a, b in zip(qs[:-1], qs[1:])]
    elif kind == "continuous":
        if traj.has("v"):
            vs = traj.column("v")
        elif traj.has("p"):
            vs = [system.hamiltonian_gradient(PhaseState(q, p))[1] for q, p in zip(qs, traj.column("p"))]
        else:
            raise KeyError("continuous constraint_residual needs a v or p column")
        violations = [system.constraint_violation(q, v) for q, v in zip(qs, vs)]
    else:
        raise ValueError("kind must be 'continuous' or 'discrete', got {!r}".format(kind))
    return max((np.max(np.abs(phi), initial=0.) for phi in violations), default=0.)


def _steps_for(T, h):
    steps = int(round(T / h))
    if steps < 1 or abs(steps * h - T) > 1e-9 * max(1., abs(T)):
        raise ValueError("step size {} does not divide T = {}".format(h, T))
    return steps


def endpoint_errors(step, system, state, T, h_list, reference_refinement=20):
    """
    ‖Φ_h^N(state) − y(T)‖∞ for each h, with y(T) from RK4 at
    min(h_list)/reference_refinement
    """
    h_ref = min(h_list) / reference_refinement
    field = hamiltonian_field(system)
    y = state.flat()
    for _ in range(_steps_for(T, h_ref)):
        y = rk4(field, y, h_ref)
    errors = []
    for h in h_list:
        s = state
        for _ in range(_steps_for(T, h)):
            s = step(s, h)
        errors.append(np.max(np.abs(s.flat() - y)))
    return np.array(errors)


def convergence_order(step, system, state, T, h_list):
    """
    Least-squares slope of log(endpoint error) against log(h).

    Parameters:
    -----------
    step: callable
        (PhaseState, h) -> PhaseState
    system: HamiltonianSystem
        whose RK4 flow is the reference
    state: PhaseState
    T: float
    h_list: sequence of at least three step sizes dividing T
    """
    if len(h_list) < 3:
        raise ValueError("at least three step sizes are needed, got {}".format(len(h_list)))
    errors = endpoint_errors(step, system, state, T, h_list)
    return scipy.stats.linregress(np.log(h_list), np.log(errors)).slope


def random_states(system, count, seed):
    """
    `count` phase-space points with |q|, |p| ≤ 2 drawn from
    numpy.random.default_rng(seed); for the Martinet system x is redrawn
    until |1 + βx| ≥ 0.5.
    """
    rng = np.random.default_rng(seed)
    beta = getattr(system, "beta", None)
    states = []
    for _ in range(count):
        q = rng.uniform(-STATE_RANGE, STATE_RANGE, system.n)
        p = rng.uniform(-STATE_RANGE, STATE_RANGE, system.n)
        while beta is not None and abs(1 + beta * q[0]) < POLE_CLEARANCE:
            q[0] = rng.uniform(-STATE_RANGE, STATE_RANGE)
        states.append(PhaseState(q, p))
    return states


def symplecticity_reports(system, integrator, h, states, fd_step=1e-6, tol=SYMPLECTICITY_TOLERANCE,
                          cfg=DEFAULT, comm=MPI.COMM_WORLD):
    """
    Max symplecticity defect over `states`, which are dealt round-robin
    over the ranks of `comm`.
    """
    step = step_function(system, integrator, cfg)
    local = [symplecticity_defect(step, s, h, fd_step) for i, s in enumerate(states)
             if i % comm.size == comm.rank]
    defect = Reduction(comm).max(np.array(local + [0.]))
    return DiagnosticReport.check("symplecticity_defect", defect, tol, integrator=integrator, h=h,
                                  states=len(states), fd_step=fd_step)


def reversibility(step, state, h):
    """‖Φ_{−h}(Φ_h(state)) − state‖∞"""
    return np.max(np.abs(step(step(state, h), -h).flat() - state.flat()))


def run_diagnostics(system, integrator, state, h, steps=None, seed=0, T=1., h_list=(0.02, 0.01, 0.005),
                    count=10, cfg=DEFAULT, comm=MPI.COMM_WORLD, logger=None, v0=None):
    """
    The report list of `geomint diagnose`. Convergence is measured at T over
    h_list; the drift run takes `steps` steps of size h (T/h if None).

    Phase-space integrators get symplecticity, convergence order, energy
    drift and (symmetric methods) reversibility; nonholonomic integrators
    get energy drift and constraint residual of a run.
    """
    kind = integrator_kind(integrator)
    steps = _steps_for(T, h) if steps is None else steps
    reports = []
    if kind == "nonholonomic":
        traj = run(system, integrator, h, steps, state.q, state.p, v0=v0, cfg=cfg, logger=logger)
        H = traj.column("H")[:, 0]
        reports.append(DiagnosticReport.check("energy_drift", np.max(np.abs(H - H[0])),
                                              ENERGY_TOLERANCE * max(1., abs(H[0])), integrator=integrator,
                                              h=h, steps=steps, final=abs(H[-1] - H[0])))
        reports.append(DiagnosticReport.check("constraint_residual", traj.column("constraint_residual").max(),
                                              CONSTRAINT_TOLERANCE, integrator=integrator, h=h))
        return reports

    step = step_function(system, integrator, cfg)
    reports.append(symplecticity_reports(system, integrator, h, random_states(system, count, seed),
                                         cfg=cfg, comm=comm))
    if logger is not None:
        logger.pr("symplecticity defect {:.3e}".format(reports[-1].value))
    expected = order_of(integrator)
    if expected is not None:
        slope = convergence_order(step, system, state, T, h_list)
        tol = 2 * ORDER_TOLERANCE if expected == 4 else ORDER_TOLERANCE
        reports.append(DiagnosticReport.check("convergence_order", abs(slope - expected), tol,
                                              slope=slope, expected=expected, h_list=list(h_list), T=T))
        if logger is not None:
            logger.pr("convergence order {:.3f} (expected {})".format(slope, expected))
    traj = run(system, integrator, h, steps, state.q, state.p, cfg=cfg, logger=logger)
    drift, final = energy_drift(system, traj)
    H0 = traj.column("H")[0, 0]
    reports.append(DiagnosticReport.check("energy_drift", drift, ENERGY_TOLERANCE * max(1., abs(H0)),
                                          integrator=integrator, h=h, steps=steps, final=final))
    if integrator in SYMMETRIC:
        reports.append(DiagnosticReport.check("reversibility", reversibility(step, state, h),
                                              REVERSIBILITY_TOLERANCE, integrator=integrator, h=h))
    return reports
