#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .States import (IndexSplit, PhaseState, TangentState, VakonomicState, NonholonomicState,  # noqa: F401
                     ExtendedVakState, validate_split)
from .Trajectory import Trajectory  # noqa: F401
