#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .Continuous import (hamiltonian_rhs, vakonomic_rhs, nonholonomic_rhs, make_nonholonomic_state,  # noqa: F401
                         hamiltonian_field, vakonomic_field, nonholonomic_field, MultiplierError)
from .Oracle import oracle_integrate, rk4_step, NonFiniteStateError  # noqa: F401
