#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Index splits and the state types every map of the package acts on.
All of them are frozen after construction.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class IndexSplit:
    """
    Adapted coordinates: the configuration indices split into free ones (a)
    and constrained ones (α), 0-based.
    """
    n: int
    free: tuple
    constrained: tuple

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(i) for i in self.free))
        object.__setattr__(self, "constrained", tuple(int(i) for i in self.constrained))

    @classmethod
    def from_constrained(cls, n, constrained):
        constrained = sorted(constrained)
        return cls(n, tuple(i for i in range(n) if i not in constrained), tuple(constrained))

    @property
    def k(self):
        return len(self.constrained)

    def parts(self, vector):
        """(free block, constrained block) of a full vector"""
        vector = np.asarray(vector)
        return vector[list(self.free)], vector[list(self.constrained)]

    def join(self, free_block, constrained_block):
        """Full vector assembled from its two blocks"""
        free_block = np.asarray(free_block)
        constrained_block = np.asarray(constrained_block)
        dtype = object if object in (free_block.dtype, constrained_block.dtype) else float
        vector = np.zeros(self.n, dtype=dtype)
        vector[list(self.free)] = free_block
        vector[list(self.constrained)] = constrained_block
        return vector


def validate_split(split, k=None):
    """
    Report every way `split` violates the adapted-coordinate invariants.

    Parameters:
    -----------
    split: IndexSplit
    k: int, optional
        expected number of constrained indices

    Returns:
    --------
    list of str, empty iff the split is well formed
    """
    violations = []
    if split.n < 0:
        violations.append("negative dimension {}".format(split.n))
    for name, block in (("free", split.free), ("constrained", split.constrained)):
        if list(block) != sorted(block):
            violations.append("{} indices not sorted".format(name))
        if len(set(block)) != len(block):
            violations.append("{} indices repeated".format(name))
        outside = [i for i in block if not 0 <= i < split.n]
        if outside:
            violations.append("{} indices out of range {}".format(name, outside))
    for i in sorted(set(split.free) & set(split.constrained)):
        violations.append("overlap at {}".format(i))
    missing = sorted(set(range(split.n)) - set(split.free) - set(split.constrained))
    if missing or (k is not None and len(split.constrained) != k):
        violations.append("cover incomplete")
    if not 0 <= len(split.constrained) <= max(split.n, 0):
        violations.append("k = {} outside [0, {}]".format(len(split.constrained), split.n))
    return violations


def _finite_vector(obj, name):
    a = np.array(getattr(obj, name), dtype=float, ndmin=1)
    if a.ndim != 1:
        raise ValueError("'{}' must be a vector".format(name))
    if not np.all(np.isfinite(a)):
        raise ValueError("'{}' has non-finite entries: {}".format(name, a))
    a.setflags(write=False)
    object.__setattr__(obj, name, a)


@dataclass(frozen=True)
class PhaseState:
    """A point (q, p) of the cotangent bundle"""
    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        _finite_vector(self, "q")
        _finite_vector(self, "p")
        if len(self.q) != len(self.p):
            raise ValueError("q and p differ in length: {} != {}".format(len(self.q), len(self.p)))

    @property
    def n(self):
        return len(self.q)

    def flat(self):
        return np.concatenate([self.q, self.p])

    @classmethod
    def from_flat(cls, y):
        n = len(y) // 2
        return cls(y[:n], y[n:])


@dataclass(frozen=True)
class TangentState:
    """A point (q, v) of the tangent bundle"""
    q: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        _finite_vector(self, "q")
        _finite_vector(self, "v")
        if len(self.q) != len(self.v):
            raise ValueError("q and v differ in length: {} != {}".format(len(self.q), len(self.v)))


@dataclass(frozen=True)
class VakonomicState:
    """(q^i, q̇^a, μ_α): adapted coordinates of the constrained-variational state space"""
    q: np.ndarray
    vfree: np.ndarray
    mu: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        for name in ("q", "vfree", "mu"):
            _finite_vector(self, name)
        if len(self.vfree) + len(self.mu) != len(self.q):
            raise ValueError("vfree and mu must have n - k and k entries")


@dataclass(frozen=True)
class NonholonomicState:
    """(q, v) with v on the constraint distribution; see make_nonholonomic_state"""
    q: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        _finite_vector(self, "q")
        _finite_vector(self, "v")
        if len(self.q) != len(self.v):
            raise ValueError("q and v differ in length")

    def flat(self):
        return np.concatenate([self.q, self.v])


@dataclass(frozen=True)
class ExtendedVakState:
    """(q, q̇^a, p_α) of the reduced vakonomic system"""
    q: np.ndarray
    vfree: np.ndarray
    pcon: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        for name in ("q", "vfree", "pcon"):
            _finite_vector(self, name)
        if len(self.vfree) + len(self.pcon) != len(self.q):
            raise ValueError("vfree and pcon must have n - k and k entries")

    def flat(self):
        return np.concatenate([self.q, self.vfree, self.pcon])
