#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Long-running tests of GeomInt: many steps, many random samples
"""
