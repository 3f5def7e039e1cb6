#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .Curvature import CurvatureTensor, curvature, comparison_residual  # noqa: F401
from .CommonSolutions import common_solution_scan, discrete_common_solution_check  # noqa: F401
