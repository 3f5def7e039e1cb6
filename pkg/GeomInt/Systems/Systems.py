#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Mechanical systems seen from the Hamiltonian side. Every integrator works
on a HamiltonianSystem; LinearConstraintSystem is the general
velocity-linear constrained system whose Hamiltonian is induced by the
reduced metric γ_ab.
"""

import abc
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from GeomInt.Core.States import IndexSplit, PhaseState, VakonomicState, validate_split
from GeomInt.Expressions.Parser import Expr, diff_expr, eval_expr
from GeomInt.Tools.Dual import demote, inv, solve, values


class MetricError(ValueError):
    def __init__(self, q):
        self.q = q
        super().__init__("metric not SPD at q = {}".format(values(q)))


class HamiltonianSystem(object, metaclass=abc.ABCMeta):
    """
    A Hamiltonian H(q, p) on T*R^n with exact first derivatives. The
    arguments of `evaluate` may carry dual numbers, which is how integrators
    obtain exact Jacobians of their implicit equations.
    """

    name = "generic_hamiltonian"

    @property
    @abc.abstractmethod
    def n(self):
        """configuration dimension"""
        raise NotImplementedError()

    @abc.abstractmethod
    def evaluate(self, q, p, energy=True, gradient=False):
        """
        Evaluate the Hamiltonian and/or its gradient.

        Parameters:
        -----------
        q, p: array_like
            configuration and momenta
        energy: bool
            compute H
        gradient: bool
            compute ∂H/∂q and ∂H/∂p

        Returns:
        --------
        H, H_q, H_p (None for what was not requested)
        """
        raise NotImplementedError()

    def constraint_violation(self, q, v):
        """φ(q, v); empty for systems without velocity constraints"""
        return np.zeros(0)

    def discrete_constraint_violation(self, q0, q1):
        """Euler discretization φ_d(q₀, q₁) = φ(q₀, q₁ − q₀)"""
        return self.constraint_violation(q0, np.asarray(q1) - np.asarray(q0))

    def hamiltonian(self, state):
        return self.evaluate(state.q, state.p, energy=True, gradient=False)[0]

    def hamiltonian_gradient(self, state):
        _, dH_dq, dH_dp = self.evaluate(state.q, state.p, energy=False, gradient=True)
        return dH_dq, dH_dp


@dataclass(frozen=True)
class ReducedMetric:
    """γ_ab, its inverse and the n matrices ∂γ/∂q^i"""
    gamma: np.ndarray
    gamma_inv: np.ndarray
    dgamma: tuple

    def dgamma_inv(self, i):
        """∂γ⁻¹/∂q^i = −γ⁻¹ (∂γ/∂q^i) γ⁻¹"""
        return -self.gamma_inv @ self.dgamma[i] @ self.gamma_inv


def _same_function(a, b, n, samples=16):
    """Equality of two expressions, structurally or at fixed pseudo-random points"""
    if a == b:
        return True
    for q in np.random.default_rng(0).uniform(-2., 2., size=(samples, n)):
        try:
            va, vb = float(eval_expr(a, q)), float(eval_expr(b, q))
        except ArithmeticError:
            continue
        if not np.isclose(va, vb, rtol=1e-12, atol=1e-12):
            return False
    return True


def _matrix(shape, entry):
    m = np.empty(shape, dtype=object)
    for index in np.ndindex(*shape):
        m[index] = entry(*index)
    return demote(m)


class LinearConstraintSystem(HamiltonianSystem):
    """
    Lagrangian ½ g_ij(q) q̇^i q̇^j − V(q) with the constraints
    φ^α = q̇^α − Γ^α_a(q) q̇^a = 0.
    """

    name = "linear_constraints"

    def __init__(self, split, gamma_coeffs=(), metric=None, potential=None, name=None, varnames=None):
        """
        Parameters:
        -----------
        split: IndexSplit
            free and constrained configuration indices
        gamma_coeffs: k×(n−k) nested sequence of Expr
            Γ^α_a; row α follows split.constrained, column a split.free
        metric: n×n nested sequence of Expr, optional
            symmetric metric g_ij; identity if None
        potential: Expr, optional
            V(q); zero if None
        name: str, optional
        varnames: list of str, optional
            names used when printing expressions
        """
        violations = validate_split(split)
        if violations:
            raise ValueError("invalid index split: " + ", ".join(violations))
        self.split = split
        n, k = split.n, split.k
        self.gamma_coeffs = tuple(tuple(row) for row in gamma_coeffs)
        if len(self.gamma_coeffs) != k or any(len(row) != n - k for row in self.gamma_coeffs):
            raise ValueError("constraint coefficients must form a {}×{} array".format(k, n - k))
        self.metric = None if metric is None else tuple(tuple(row) for row in metric)
        if self.metric is not None:
            if len(self.metric) != n or any(len(row) != n for row in self.metric):
                raise ValueError("metric must be {}×{}".format(n, n))
            for i in range(n):
                for j in range(i):
                    if not _same_function(self.metric[i][j], self.metric[j][i], n):
                        raise ValueError("metric not symmetric at ({}, {})".format(i, j))
        self.potential = potential
        for e in self._expressions():
            if not isinstance(e, Expr):
                raise TypeError("expected an expression, got {!r}".format(e))
            if any(i >= n for i in e.variables()):
                raise ValueError("expression refers to a variable beyond n = {}".format(n))
        if name is not None:
            self.name = name
        self.varnames = list(varnames) if varnames is not None else ["q{}".format(i + 1) for i in range(n)]

    def _expressions(self):
        for row in self.gamma_coeffs:
            yield from row
        for row in self.metric or ():
            yield from row
        if self.potential is not None:
            yield self.potential

    def __repr__(self):
        return ("System '{0.name}': n = {0.n}, free = {0.split.free}, "
                "constrained = {0.split.constrained}").format(self)

    @property
    def n(self):
        return self.split.n

    @property
    def k(self):
        return self.split.k

    # --- configuration-dependent coefficients ---

    def metric_matrix(self, q):
        if self.metric is None:
            return np.eye(self.n)
        return _matrix((self.n, self.n), lambda i, j: eval_expr(self.metric[i][j], q))

    def metric_gradient(self, q):
        """(n, n, n) array, entry [i] = ∂g/∂q^i"""
        if self.metric is None:
            return np.zeros((self.n, self.n, self.n))
        return _matrix((self.n, self.n, self.n), lambda i, r, s: diff_expr(self.metric[r][s], q, i))

    def gamma_matrix(self, q):
        return _matrix((self.k, self.n - self.k), lambda al, a: eval_expr(self.gamma_coeffs[al][a], q))

    def gamma_gradient(self, q):
        """(n, k, n−k) array, entry [i] = ∂Γ/∂q^i"""
        return _matrix((self.n, self.k, self.n - self.k),
                       lambda i, al, a: diff_expr(self.gamma_coeffs[al][a], q, i))

    def potential_value(self, q):
        return 0. if self.potential is None else eval_expr(self.potential, q)

    def potential_gradient(self, q):
        if self.potential is None:
            return np.zeros(self.n)
        return _matrix((self.n,), lambda i: diff_expr(self.potential, q, i))

    def embedding(self, q):
        """
        n×(n−k) matrix E with q̇ = E q̇^a on the constraint distribution:
        identity rows for free indices, Γ rows for constrained ones.
        """
        return self._embed(self.gamma_matrix(q))

    def embedding_gradient(self, q):
        dgam = self.gamma_gradient(q)
        return np.array([self._embed(dgam[i], ones=False) for i in range(self.n)])

    def _embed(self, block, ones=True):
        dtype = object if block.dtype == object else float
        e = np.zeros((self.n, self.n - self.k), dtype=dtype)
        if ones:
            e[list(self.split.free), range(self.n - self.k)] = 1.
        e[list(self.split.constrained), :] = block
        return e

    def constraint_matrix(self, q):
        """k×n matrix A^α_i = ∂φ^α/∂q̇^i"""
        gam = self.gamma_matrix(q)
        dtype = object if gam.dtype == object else float
        a = np.zeros((self.k, self.n), dtype=dtype)
        a[:, list(self.split.free)] = -gam
        a[range(self.k), list(self.split.constrained)] = 1.
        return a

    def constraint_violation(self, q, v):
        """φ^α(q, v)"""
        return self.constraint_matrix(q) @ np.asarray(v)

    def check_metric(self, q):
        try:
            scipy.linalg.cholesky(values(self.metric_matrix(q)))
        except np.linalg.LinAlgError:
            raise MetricError(q)

    # --- reduced quantities ---

    def reduced_metric(self, q, derivatives=True):
        """
        γ = Eᵀ g E, i.e.
        γ_ab = g_ab + g_aα Γ^α_b + g_bα Γ^α_a + g_αβ Γ^α_a Γ^β_b,
        with ∂γ/∂q^i by the product rule.
        """
        g = self.metric_matrix(q)
        e = self.embedding(q)
        gamma = e.T @ g @ e
        try:
            scipy.linalg.cholesky(values(g))
            scipy.linalg.cholesky(values(gamma))
        except np.linalg.LinAlgError:
            raise MetricError(q)
        dgamma = ()
        if derivatives:
            dg = self.metric_gradient(q)
            de = self.embedding_gradient(q)
            dgamma = tuple(de[i].T @ g @ e + e.T @ dg[i] @ e + e.T @ g @ de[i] for i in range(self.n))
        return ReducedMetric(gamma, inv(gamma), dgamma)

    def evaluate(self, q, p, energy=True, gradient=False):
        """
        H = ½ γ^ab P_a P_b + V with P_a = p_a + p_α Γ^α_a.
        """
        q = np.asarray(q)
        p = np.asarray(p)
        e = self.embedding(q)
        rm = self.reduced_metric(q, derivatives=gradient)
        P = e.T @ p
        u = rm.gamma_inv @ P
        H = dH_dq = dH_dp = None
        if energy:
            H = 0.5 * (P @ u) + self.potential_value(q)
        if gradient:
            de = self.embedding_gradient(q)
            dV = self.potential_gradient(q)
            dH_dq = demote(np.array([0.5 * (P @ rm.dgamma_inv(i) @ P) + u @ (de[i].T @ p) + dV[i]
                                     for i in range(self.n)], dtype=object))
            dH_dp = e @ u
        return H, dH_dq, dH_dp

    def constrained_legendre(self, s):
        """(q, q̇^a, μ) ↦ (q, p) with p_a = γ_ab q̇^b − μ_α Γ^α_a, p_α = μ_α"""
        rm = self.reduced_metric(s.q, derivatives=False)
        pfree = rm.gamma @ s.vfree - self.gamma_matrix(s.q).T @ s.mu
        return PhaseState(s.q, self.split.join(pfree, s.mu))

    def legendre_inverse(self, state):
        """(q, p) ↦ (q, q̇^a = γ^ab P_b, μ_α = p_α)"""
        rm = self.reduced_metric(state.q, derivatives=False)
        P = self.embedding(state.q).T @ state.p
        _, mu = self.split.parts(state.p)
        return VakonomicState(state.q, solve(rm.gamma, P), mu)

    def energy(self, s):
        """E_L = ½ γ_ab q̇^a q̇^b + V; the μ terms cancel for velocity-linear constraints"""
        rm = self.reduced_metric(s.q, derivatives=False)
        return 0.5 * (s.vfree @ rm.gamma @ s.vfree) + self.potential_value(s.q)

    def lagrangian(self, q, v):
        """𝕃(q, v) = ½ g(v, v) − V(q) on the full tangent bundle"""
        v = np.asarray(v)
        return 0.5 * (v @ self.metric_matrix(q) @ v) - self.potential_value(q)

    def nonholonomic_energy(self, q, v):
        v = np.asarray(v)
        return 0.5 * (v @ self.metric_matrix(q) @ v) + self.potential_value(q)


def make_split(n, constrained):
    return IndexSplit.from_constrained(n, constrained)


def reduced_metric(sys, q):
    return sys.reduced_metric(np.asarray(q, dtype=float))


def hamiltonian(sys, state):
    return sys.hamiltonian(state)


def hamiltonian_gradient(sys, state):
    return sys.hamiltonian_gradient(state)


def constrained_legendre(sys, s):
    return sys.constrained_legendre(s)


def legendre_inverse(sys, state):
    return sys.legendre_inverse(state)


def energy(sys, s):
    return sys.energy(s)


class ConstraintViolation(ValueError):
    def __init__(self, residual, what="state"):
        self.residual = residual
        super().__init__("{} violates the constraints by {:.3e}".format(what, residual))
