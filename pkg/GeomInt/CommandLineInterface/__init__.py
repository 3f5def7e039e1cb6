#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#
