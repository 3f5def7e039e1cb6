#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Damped Newton iteration for the implicit equations of one-step maps.
"""

import os
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg
import scipy.optimize

from GeomInt.Tools.Dual import jacobian

TOLERANCE_VARIABLE = "GEOMINT_NEWTON_TOL"


class NewtonError(ArithmeticError):
    pass


class NoConvergence(NewtonError):
    def __init__(self, iters, final_residual):
        self.iters = iters
        self.final_residual = final_residual
        super().__init__("Newton did not converge in {} iterations, residual {:.3e}".format(iters, final_residual))


class SingularJacobian(NewtonError):
    def __init__(self, at):
        self.at = np.asarray(at)
        super().__init__("singular Jacobian at x = {}".format(self.at))


class RegularityError(NewtonError):
    def __init__(self, condition):
        self.condition = condition
        super().__init__("discrete Lagrangian not regular: condition number {:.3e}".format(condition))


@dataclass(frozen=True)
class NewtonConfig:
    """
    Parameters:
    -----------
    tol: float
        bound on the max-norm of the residual
    max_iter: int
        Newton updates before giving up
    jacobian: str
        "exact" (nested dual numbers) or "fd" (forward differences)
    fd_step: float
        finite-difference step of the "fd" Jacobian
    line_search_floor: float
        smallest damping factor tried by the halving line search
    """
    tol: float = 1e-12
    max_iter: int = 50
    jacobian: str = "exact"
    fd_step: float = 1e-7
    line_search_floor: float = 2. ** -10

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("Newton tolerance must be positive, got {}".format(self.tol))
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1, got {}".format(self.max_iter))
        if self.jacobian not in ("exact", "fd"):
            raise ValueError("jacobian must be 'exact' or 'fd', got {!r}".format(self.jacobian))

    @classmethod
    def from_environment(cls, environ=None, **overrides):
        """Defaults, then GEOMINT_NEWTON_TOL, then explicit overrides"""
        environ = os.environ if environ is None else environ
        config = cls()
        if environ.get(TOLERANCE_VARIABLE):
            try:
                config = replace(config, tol=float(environ[TOLERANCE_VARIABLE]))
            except ValueError:
                raise ValueError("{} must be a number, got {!r}".format(TOLERANCE_VARIABLE,
                                                                        environ[TOLERANCE_VARIABLE]))
        overrides = {key: val for key, val in overrides.items() if val is not None}
        return replace(config, **overrides)


DEFAULT = NewtonConfig()


def _norm(f):
    return np.max(np.abs(f)) if len(f) else 0.


def solve_implicit(residual, x0, cfg=DEFAULT, logger=None):
    """
    Find x with ‖residual(x)‖∞ ≤ cfg.tol by damped Newton.

    The step is halved until the residual norm decreases, down to
    cfg.line_search_floor. A singular Jacobian at the initial guess is
    reported as SingularJacobian; met later, it means the iteration stalled
    and is reported as NoConvergence. So is a Newton direction along which
    the residual no longer decreases, which happens when cfg.tol lies below
    the round-off floor of the residual.

    Parameters:
    -----------
    residual: callable
        vector function; must accept dual-number arrays when cfg.jacobian is
        "exact"
    x0: array_like
        initial guess
    cfg: NewtonConfig
    logger: ContactMechanics.Tools.Logger, optional

    Returns:
    --------
    x: ndarray
    """
    x = np.array(x0, dtype=float, ndmin=1)

    def F(y):
        return np.asarray(residual(y), dtype=float)

    f = F(x)
    if not np.all(np.isfinite(f)):
        raise SingularJacobian(x)
    r = _norm(f)
    for it in range(cfg.max_iter + 1):
        if logger is not None:
            logger.st(["newton_iter", "residual"], [it, r])
        if r <= cfg.tol:
            return x
        if it == cfg.max_iter:
            break
        if cfg.jacobian == "exact":
            jac = jacobian(residual, x)
        else:
            jac = np.atleast_2d(scipy.optimize.approx_fprime(x, F, cfg.fd_step))
        try:
            dx = scipy.linalg.solve(jac, -f)
        except (np.linalg.LinAlgError, ValueError):
            dx = None
        if dx is None or not np.all(np.isfinite(dx)):
            if it == 0:
                raise SingularJacobian(x)
            raise NoConvergence(it, r)
        step = 1.
        while True:
            x_new = x + step * dx
            f_new = F(x_new)
            r_new = _norm(f_new) if np.all(np.isfinite(f_new)) else np.inf
            if r_new < r or step <= cfg.line_search_floor:
                break
            step /= 2
        # no decrease along the Newton direction: the residual is at its
        # round-off floor or the iteration has stalled
        if not r_new < r:
            raise NoConvergence(it + 1, r)
        x, f, r = x_new, f_new, r_new
    raise NoConvergence(cfg.max_iter, r)
