#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Multi-step runs of every integrator, collected into a Trajectory.
"""

import numpy as np

from GeomInt.Core.States import NonholonomicState, PhaseState
from GeomInt.Core.Trajectory import Trajectory
from GeomInt.Dynamics.Continuous import make_nonholonomic_state, nonholonomic_field, nonholonomic_rhs
from GeomInt.Dynamics.Oracle import NonFiniteStateError, rk4, rk4_step
from GeomInt.Integrators.Discrete import discrete_nonholonomic_step, discrete_vakonomic_step
from GeomInt.Integrators.Newton import DEFAULT
from GeomInt.Integrators.Symplectic import INTEGRATORS

HAMILTONIAN_STEPS = dict(INTEGRATORS, oracle_rk4=rk4_step)
VAKONOMIC = {"vakonomic_euler": "euler", "vakonomic_midpoint": "midpoint"}
NONHOLONOMIC = ("nonholonomic_discrete", "nonholonomic")

INTEGRATOR_NAMES = tuple(HAMILTONIAN_STEPS) + tuple(VAKONOMIC) + NONHOLONOMIC


class RunFailure(RuntimeError):
    """A run stopped early; `trajectory` holds the samples computed so far"""

    def __init__(self, trajectory, cause):
        self.trajectory = trajectory
        self.cause = cause
        super().__init__("run failed after {} samples: {}".format(len(trajectory), cause))


def integrator_kind(name):
    """'hamiltonian', 'vakonomic' or 'nonholonomic'"""
    if name in HAMILTONIAN_STEPS:
        return "hamiltonian"
    if name in VAKONOMIC:
        return "vakonomic"
    if name in NONHOLONOMIC:
        return "nonholonomic"
    raise ValueError("unknown integrator '{}', known: {}".format(name, ", ".join(INTEGRATOR_NAMES)))


def linear_constraint_system(system):
    """The LinearConstraintSystem behind `system` (Martinet converts itself)"""
    if hasattr(system, "as_linear_constraint_system"):
        return system.as_linear_constraint_system()
    if not hasattr(system, "split"):
        raise ValueError("system '{}' has no linear constraint form".format(system.name))
    return system


def _residual(violation):
    return np.max(np.abs(violation), initial=0.)


def run(system, integrator, h, steps, q0, p0=None, v0=None, cfg=DEFAULT, logger=None):
    """
    Integrate `steps` steps of size h from the given initial data.

    Parameters:
    -----------
    system: HamiltonianSystem
    integrator: str
        one of INTEGRATOR_NAMES
    h: float
        positive step size
    steps: int
    q0: array_like
    p0: array_like, optional
        initial momenta; required by Hamiltonian and vakonomic integrators
    v0: array_like, optional
        initial velocity of nonholonomic runs; ∂H/∂p(q0, p0) if None
    cfg: NewtonConfig
    logger: ContactMechanics.Tools.Logger, optional

    Returns:
    --------
    Trajectory with steps + 1 samples. Columns are q, then p (Hamiltonian
    and vakonomic) or v (nonholonomic), then lambda when the integrator has
    multipliers, H and constraint_residual.

    Raises:
    -------
    RunFailure carrying the partial trajectory when a step fails
    """
    kind = integrator_kind(integrator)
    if not h > 0:
        raise ValueError("step size must be positive, got {}".format(h))
    if steps < 1:
        raise ValueError("at least one step is required, got {}".format(steps))
    q0 = np.asarray(q0, dtype=float)
    if kind != "nonholonomic" and p0 is None:
        raise ValueError("integrator '{}' needs initial momenta p".format(integrator))
    if kind == "hamiltonian":
        return _run_hamiltonian(system, HAMILTONIAN_STEPS[integrator], h, steps, PhaseState(q0, p0), cfg, logger)
    if kind == "vakonomic":
        return _run_vakonomic(system, VAKONOMIC[integrator], h, steps, PhaseState(q0, p0), cfg, logger)
    if v0 is None:
        if p0 is None:
            raise ValueError("integrator '{}' needs an initial velocity v or momenta p".format(integrator))
        v0 = system.hamiltonian_gradient(PhaseState(q0, p0))[1]
    linear = linear_constraint_system(system)
    start = make_nonholonomic_state(linear, q0, v0)
    if integrator == "nonholonomic":
        return _run_nonholonomic(linear, h, steps, start, logger)
    return _run_nonholonomic_discrete(linear, h, steps, start, cfg, logger)


def _record(traj, step, t, logger, **columns):
    traj.append(t, **columns)
    if logger is not None:
        logger.st(["step", "t", "H", "constraint_residual"],
                  [step, t, float(columns["H"][0]), float(columns["constraint_residual"][0])])


def _checked(step, *arrays):
    if not all(np.all(np.isfinite(a)) for a in arrays):
        raise NonFiniteStateError(step)


def _run_hamiltonian(system, step_map, h, steps, state, cfg, logger):
    traj = Trajectory(names=["q", "p", "H", "constraint_residual"])

    def sample(k, s):
        v = system.hamiltonian_gradient(s)[1]
        _record(traj, k, k * h, logger, q=s.q, p=s.p, H=[system.hamiltonian(s)],
                constraint_residual=[_residual(system.constraint_violation(s.q, v))])

    sample(0, state)
    for k in range(1, steps + 1):
        try:
            state = step_map(system, state, h, cfg=cfg)
            sample(k, state)
        except (ArithmeticError, ValueError) as err:
            raise RunFailure(traj, err) from err
    return traj


def _run_vakonomic(system, discretization, h, steps, state, cfg, logger):
    linear = linear_constraint_system(system)
    traj = Trajectory(names=["q", "p", "lambda", "H", "constraint_residual"])
    q, p, lam = state.q, state.p, np.zeros(linear.k)
    _record(traj, 0, 0., logger, q=q, p=p, **{"lambda": lam}, H=[system.hamiltonian(state)],
            constraint_residual=[0.])
    for k in range(1, steps + 1):
        try:
            result = discrete_vakonomic_step(linear, q, p, discretization, h, guess=lam, cfg=cfg,
                                             regularity=False)
            _checked(k, result.q1, result.p1, result.lambda1)
            q, p, lam = result.q1, result.p1, result.lambda1
            _record(traj, k, k * h, logger, q=q, p=p, **{"lambda": lam},
                    H=[system.hamiltonian(PhaseState(q, p))],
                    constraint_residual=[result.constraint_residual])
        except (ArithmeticError, ValueError) as err:
            raise RunFailure(traj, err) from err
    return traj


def _run_nonholonomic(sys, h, steps, state, logger):
    n = sys.n
    field = nonholonomic_field(sys)
    traj = Trajectory(names=["q", "v", "lambda", "H", "constraint_residual"])

    def sample(k, q, v):
        lam = nonholonomic_rhs(sys, NonholonomicState(q, v))[1]
        _record(traj, k, k * h, logger, q=q, v=v, **{"lambda": lam}, H=[sys.nonholonomic_energy(q, v)],
                constraint_residual=[_residual(sys.constraint_violation(q, v))])

    y = np.concatenate([state.q, state.v])
    sample(0, y[:n], y[n:])
    for k in range(1, steps + 1):
        try:
            y = rk4(field, y, h)
            _checked(k, y)
            sample(k, y[:n], y[n:])
        except (ArithmeticError, ValueError) as err:
            raise RunFailure(traj, err) from err
    return traj


def _run_nonholonomic_discrete(sys, h, steps, state, cfg, logger):
    """
    The first configuration pair is the Euler seed (q₀, q₀ + h v₀), which
    satisfies the discrete constraint whenever v₀ satisfies the continuous
    one. v is the backward difference (q_k − q_{k−1})/h.
    """
    traj = Trajectory(names=["q", "v", "lambda", "H", "constraint_residual"])
    lam = np.zeros(sys.k)
    qprev, v = state.q, state.v
    _record(traj, 0, 0., logger, q=qprev, v=v, **{"lambda": lam}, H=[sys.nonholonomic_energy(qprev, v)],
            constraint_residual=[0.])
    qcur = qprev + h * v
    try:
        v = (qcur - qprev) / h
        _record(traj, 1, h, logger, q=qcur, v=v, **{"lambda": lam}, H=[sys.nonholonomic_energy(qcur, v)],
                constraint_residual=[_residual(sys.discrete_constraint_violation(qprev, qcur))])
        for k in range(2, steps + 1):
            qnext, lam = discrete_nonholonomic_step(sys, qprev, qcur, h, guess=lam, cfg=cfg)
            _checked(k, qnext, lam)
            qprev, qcur = qcur, qnext
            v = (qcur - qprev) / h
            _record(traj, k, k * h, logger, q=qcur, v=v, **{"lambda": lam},
                    H=[sys.nonholonomic_energy(qcur, v)],
                    constraint_residual=[_residual(sys.discrete_constraint_violation(qprev, qcur))])
    except (ArithmeticError, ValueError) as err:
        raise RunFailure(traj, err) from err
    return traj
