#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .Newton import (NewtonConfig, solve_implicit, NewtonError, NoConvergence, SingularJacobian,  # noqa: F401
                     RegularityError)
from .Symplectic import (symplectic_euler_step, adjoint_euler_step, half_euler_A, half_euler_B,  # noqa: F401
                         midpoint_step, stormer_verlet_step, explicit_euler_step, identity_step)
from .Discrete import (DiscreteVakStep, discrete_vakonomic_step, discrete_nonholonomic_step,  # noqa: F401
                       discrete_legendre_minus, discrete_legendre_plus)
from .Runs import run, RunFailure  # noqa: F401
