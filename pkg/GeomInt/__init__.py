#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Geometric integrators for mechanical systems with velocity constraints:
nonholonomic and vakonomic dynamics, symplectic one-step maps and the
discrete constrained variational steps they derive from.
"""

from .DiscoverVersion import __version__  # noqa: F401
