#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Forward-mode dual numbers with perturbation tags.

A `Dual` carries a real part and one directional derivative. Duals created by
different seeds carry different tags; arithmetic between two tags treats the
older one as a constant of the newer, so nesting (derivatives of derivatives)
needs no special casing. Real and derivative parts may themselves be duals.

The array helpers below let the same numpy code run on plain float arrays or
on object arrays of duals; this is how exact Jacobians of implicit step
residuals are obtained.
"""

import functools
import itertools
import operator

import numpy as np
import scipy.linalg

_tags = itertools.count(1)


def new_tag():
    """Fresh perturbation tag, larger than every tag issued before."""
    return next(_tags)


def _elementwise(op, reflected=False):
    """
    Dual-with-ndarray arithmetic acts on every element, giving an object
    array of duals.
    """

    def decorator(method):
        @functools.wraps(method)
        def wrapper(self, other):
            if isinstance(other, np.ndarray):
                mine = np.full(other.shape, self, dtype=object)
                return op(other, mine) if reflected else op(mine, other)
            return method(self, other)
        return wrapper
    return decorator


class Dual(object):
    """ a + b ε with ε² = 0, tagged by the seed that created it """

    __slots__ = ("real", "eps", "tag")

    def __init__(self, real, eps=0., tag=0):
        self.real = real
        self.eps = eps
        self.tag = tag

    def __repr__(self):
        return "Dual({0.real!r}, {0.eps!r}, tag={0.tag})".format(self)

    # numpy defers mixed operations to the reflected methods below
    __array_ufunc__ = None

    # arithmetic works on the outermost tag present among the operands
    def _top(self, other):
        if isinstance(other, Dual) and other.tag > self.tag:
            return other.tag
        return self.tag

    @_elementwise(operator.add)
    def __add__(self, other):
        t = self._top(other)
        a, b = parts(self, t)
        c, d = parts(other, t)
        return Dual(a + c, b + d, t)

    @_elementwise(operator.add, reflected=True)
    def __radd__(self, other):
        return self.__add__(other)

    @_elementwise(operator.sub)
    def __sub__(self, other):
        t = self._top(other)
        a, b = parts(self, t)
        c, d = parts(other, t)
        return Dual(a - c, b - d, t)

    @_elementwise(operator.sub, reflected=True)
    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Dual(-self.real, -self.eps, self.tag)

    def __pos__(self):
        return self

    @_elementwise(operator.mul)
    def __mul__(self, other):
        t = self._top(other)
        a, b = parts(self, t)
        c, d = parts(other, t)
        return Dual(a * c, a * d + b * c, t)

    @_elementwise(operator.mul, reflected=True)
    def __rmul__(self, other):
        return self.__mul__(other)

    @_elementwise(operator.truediv)
    def __truediv__(self, other):
        t = self._top(other)
        a, b = parts(self, t)
        c, d = parts(other, t)
        if value(c) == 0:
            raise ZeroDivisionError("division of a dual number by zero")
        return Dual(a / c, (b * c - a * d) / (c * c), t)

    @_elementwise(operator.truediv, reflected=True)
    def __rtruediv__(self, other):
        t = self._top(other)
        a, b = parts(other, t)
        c, d = parts(self, t)
        if value(c) == 0:
            raise ZeroDivisionError("division by a dual number with zero real part")
        return Dual(a / c, (b * c - a * d) / (c * c), t)

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise TypeError("dual numbers support non-negative integer powers only")
        if n == 0:
            return 1.
        return Dual(self.real ** n, n * self.real ** (n - 1) * self.eps, self.tag)


def parts(x, tag):
    """
    Split x into (real, eps) with respect to perturbation `tag`; anything not
    carrying that tag is a constant there.
    """
    if isinstance(x, Dual) and x.tag == tag:
        return x.real, x.eps
    return x, 0.


def value(x):
    """Strip every level of perturbation and return a float."""
    while isinstance(x, Dual):
        x = x.real
    return float(x)


def derivative(x, tag):
    """The ε-part of x at `tag` (zero if x does not depend on that seed)."""
    return parts(x, tag)[1]


def top_tag(*arrays):
    """Largest tag found in the given scalars or arrays, None for plain data."""
    tags = [e.tag for a in arrays for e in np.ravel(np.asarray(a, dtype=object))
            if isinstance(e, Dual)]
    return max(tags) if tags else None


def values(a):
    """Float array of the real parts of a (possibly dual) array."""
    a = np.asarray(a)
    if a.dtype != object:
        return a.astype(float)
    return np.array([value(e) for e in a.ravel()], dtype=float).reshape(a.shape)


def split(a, tag):
    """Elementwise `parts` of an array; both halves keep the shape of a."""
    a = np.asarray(a, dtype=object)
    pairs = [parts(e, tag) for e in a.ravel()]
    re = np.empty(len(pairs), dtype=object)
    ep = np.empty(len(pairs), dtype=object)
    for i, (r, e) in enumerate(pairs):
        re[i], ep[i] = r, e
    return demote(re.reshape(a.shape)), demote(ep.reshape(a.shape))


def combine(re, ep, tag):
    """Inverse of `split`."""
    re = np.asarray(re, dtype=object)
    ep = np.asarray(ep, dtype=object)
    out = np.empty(re.size, dtype=object)
    for i, (r, e) in enumerate(zip(re.ravel(), ep.ravel())):
        out[i] = Dual(r, e, tag)
    return out.reshape(re.shape)


def demote(a):
    """Object arrays free of duals become float arrays again."""
    if a.dtype == object and top_tag(a) is None:
        return a.astype(float)
    return a


def seed(x, direction, tag=None):
    """Object array x + ε direction under a fresh (or given) tag."""
    tag = new_tag() if tag is None else tag
    return combine(np.asarray(x, dtype=object), np.asarray(direction, dtype=object), tag), tag


def solve(a, b):
    """
    Linear solve that differentiates through dual entries:
    (A + εȦ)(x + εẋ) = b + εḃ gives x = A⁻¹b and ẋ = A⁻¹(ḃ − Ȧx).
    """
    a = np.asarray(a)
    b = np.asarray(b)
    tag = top_tag(a, b)
    if tag is None:
        return scipy.linalg.solve(a.astype(float), b.astype(float))
    a0, a1 = split(a, tag)
    b0, b1 = split(b, tag)
    x0 = solve(a0, b0)
    x1 = solve(a0, b1 - a1 @ x0)
    return combine(x0, x1, tag)


def inv(a):
    a = np.asarray(a)
    return solve(a, np.eye(a.shape[0]))


def gradient(fun, x):
    """
    Exact gradient of a scalar function by one forward sweep per coordinate.
    x may already hold duals from an outer seed; the result then does too.
    """
    x = np.asarray(x)
    n = len(x)
    grad = np.empty(n, dtype=object)
    for j in range(n):
        xd, tag = seed(x, np.eye(n)[j])
        grad[j] = derivative(fun(xd), tag)
    return demote(grad)


def jacobian(fun, x):
    """
    Exact Jacobian of a vector function, column by column. For a float x the
    result is a float array; duals in x (an outer seed) carry through.
    """
    x = np.asarray(x)
    n = len(x)
    columns = []
    for j in range(n):
        xd, tag = seed(x, np.eye(n)[j])
        fx = np.ravel(np.asarray(fun(xd), dtype=object))
        columns.append([derivative(f, tag) for f in fx])
    jac = np.empty((len(columns[0]) if columns else 0, n), dtype=object)
    for j, column in enumerate(columns):
        for i, entry in enumerate(column):
            jac[i, j] = entry
    return demote(jac)


def asarray(nested):
    """Array from nested lists of floats and duals, float dtype when possible."""
    return demote(np.array(nested, dtype=object))
