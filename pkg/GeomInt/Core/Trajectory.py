#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Time series of states, multipliers and diagnostics produced by a run.
"""

import numpy as np


class Trajectory(object):
    """
    Strictly increasing time grid plus named columns. Every column holds one
    row per time; vector-valued columns are 2D.
    """

    def __init__(self, names=None):
        self._times = []
        self._names = list(names) if names is not None else None
        self._rows = {}

    def __len__(self):
        return len(self._times)

    def __repr__(self):
        return "Trajectory: {} samples, columns {}".format(len(self), self.names)

    @property
    def names(self):
        return list(self._names or [])

    @property
    def times(self):
        return np.array(self._times, dtype=float)

    def append(self, t, **columns):
        """
        Add one sample. The first call fixes the column set unless names were
        given at construction.
        """
        if self._times and not t > self._times[-1]:
            raise ValueError("time {} does not increase past {}".format(t, self._times[-1]))
        if self._names is None:
            self._names = list(columns)
        if set(columns) != set(self._names):
            raise ValueError("columns {} do not match {}".format(sorted(columns), sorted(self._names)))
        for name, row in columns.items():
            self._rows.setdefault(name, []).append(np.array(row, dtype=float, ndmin=1))
        self._times.append(float(t))

    def column(self, name):
        if name not in self.names:
            raise KeyError("trajectory has no column '{}'".format(name))
        return np.array(self._rows.get(name, []), dtype=float)

    def has(self, *names):
        return all(name in self.names for name in names)

    def widths(self):
        """Number of scalar entries per named column"""
        return {name: len(self._rows[name][0]) if self._rows.get(name) else 0 for name in self.names}

    def rows(self):
        """Flat rows [t, column entries in name order]"""
        return [np.concatenate([[t]] + [self._rows[name][i] for name in self.names])
                for i, t in enumerate(self._times)]

    def last(self, name):
        return self._rows[name][-1]
