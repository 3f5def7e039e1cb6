#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .Diagnostics import (DiagnosticReport, symplecticity_defect, energy_drift, constraint_residual,  # noqa: F401
                          convergence_order, random_states, run_diagnostics)
