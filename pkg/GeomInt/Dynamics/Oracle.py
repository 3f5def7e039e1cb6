#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Classical fourth-order Runge-Kutta, the reference every convergence and
equivalence check is measured against.
"""

import numpy as np

from GeomInt.Core.States import PhaseState
from GeomInt.Core.Trajectory import Trajectory
from GeomInt.Dynamics.Continuous import hamiltonian_field


class NonFiniteStateError(ArithmeticError):
    def __init__(self, step):
        self.step = step
        super().__init__("non-finite state at step {}".format(step))


def rk4(field, y, h):
    k1 = field(y)
    k2 = field(y + h / 2 * k1)
    k3 = field(y + h / 2 * k2)
    k4 = field(y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def oracle_integrate(field, y0, h, steps, columns=None, t0=0., logger=None):
    """
    Integrate y' = field(y) with `steps` RK4 steps of size h.

    Parameters:
    -----------
    field: callable
        first-order vector field on flat state vectors
    y0: array_like
        initial state
    h: float
        step size, positive
    steps: int
    columns: dict, optional
        column name -> slice of the state vector; default {"y": all}

    Returns:
    --------
    Trajectory with steps + 1 samples
    """
    if not h > 0:
        raise ValueError("step size must be positive, got {}".format(h))
    columns = {"y": slice(None)} if columns is None else columns
    y = np.array(y0, dtype=float)
    traj = Trajectory(names=list(columns))
    traj.append(t0, **{name: y[sl] for name, sl in columns.items()})
    for step in range(1, steps + 1):
        y = rk4(field, y, h)
        if not np.all(np.isfinite(y)):
            raise NonFiniteStateError(step)
        traj.append(t0 + step * h, **{name: y[sl] for name, sl in columns.items()})
        if logger is not None:
            logger.st(["step", "t"], [step, t0 + step * h])
    return traj


def rk4_step(system, state, h, cfg=None, logger=None):
    """One oracle step as a map on PhaseState"""
    y = rk4(hamiltonian_field(system), state.flat(), h)
    return PhaseState.from_flat(y)
