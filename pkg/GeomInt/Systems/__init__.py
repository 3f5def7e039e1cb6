#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .Systems import (HamiltonianSystem, LinearConstraintSystem, ReducedMetric, MetricError,  # noqa: F401
                      ConstraintViolation, make_split, reduced_metric, hamiltonian, hamiltonian_gradient,
                      constrained_legendre, legendre_inverse, energy)
from .Catalog import CATALOG, catalog_names  # noqa: F401
from .Factory import SpecificationError, make_system, initial_data  # noqa: F401
