#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
The Martinet sub-Riemannian structure on R³: distribution dz = y²/2 dx,
metric dx² + (1+βx)² dy².

    H(q, p) = ½ ((p_x + p_z y²/2)² + p_y² / (1+βx)²)

H is quadratic in p, degenerate along the annihilator of the
distribution, and its fiber derivative lands on the constraint
submanifold ż = y²/2 ẋ.
"""

import numpy as np

from GeomInt.Core.States import IndexSplit, TangentState
from GeomInt.Expressions.Parser import parse_expr
from GeomInt.Integrators.Newton import DEFAULT
from GeomInt.Integrators.Symplectic import check_step_size, verlet_generating_functions
from GeomInt.Systems.Systems import ConstraintViolation, HamiltonianSystem, LinearConstraintSystem
from GeomInt.Tools.Dual import asarray, demote, value

ADMISSIBLE_RESIDUAL = 1e-8


class MartinetSystem(HamiltonianSystem):
    """Martinet Hamiltonian with parameter β"""

    name = "martinet"

    class PoleError(ArithmeticError):
        def __init__(self, x, beta):
            self.x = x
            super().__init__("1 + βx vanishes at x = {} for β = {}".format(x, beta))

    def __init__(self, beta=0.):
        self.beta = float(beta)

    def __repr__(self):
        return "System '{0.name}': beta = {0.beta}".format(self)

    @property
    def n(self):
        return 3

    def scale(self, q):
        """w = 1 + βx; raises PoleError where it vanishes"""
        w = 1 + self.beta * q[0]
        if value(w) == 0:
            raise self.PoleError(value(q[0]), self.beta)
        return w

    def evaluate(self, q, p, energy=True, gradient=False):
        x, y, z = q
        px, py, pz = p
        w = self.scale(q)
        u = px + pz * y ** 2 / 2
        H = dH_dq = dH_dp = None
        if energy:
            H = (u ** 2 + py ** 2 / w ** 2) / 2
        if gradient:
            dH_dq = demote(np.array([-self.beta * py ** 2 / w ** 3, u * pz * y, 0 * u], dtype=object))
            dH_dp = demote(np.array([u, py / w ** 2, u * y ** 2 / 2], dtype=object))
        return H, dH_dq, dH_dp

    def constraint_violation(self, q, v):
        """ż − y²/2 ẋ"""
        return asarray([v[2] - q[1] ** 2 / 2 * v[0]])

    def as_linear_constraint_system(self):
        """
        The same problem as a LinearConstraintSystem: Γ^z_x = y²/2, Γ^z_y = 0
        and the metric dx² + (1+βx)² dy² + (dz − y²/2 dx)², whose reduced
        metric is diag(1, (1+βx)²).
        """
        names = ["x", "y", "z"]
        w2 = "(1+{!r}*x)^2".format(self.beta)
        metric = [["1+y^4/4", "0", "-y^2/2"],
                  ["0", w2, "0"],
                  ["-y^2/2", "0", "1"]]
        return LinearConstraintSystem(
            IndexSplit.from_constrained(3, [2]),
            [[parse_expr("y^2/2", names), parse_expr("0", names)]],
            metric=[[parse_expr(text, names) for text in row] for row in metric],
            name="martinet_linear", varnames=names)


def martinet_hamiltonian(sys, state):
    return sys.hamiltonian(state)


def martinet_rhs(sys, state):
    """
    Hamilton's equations of the Martinet Hamiltonian; ṗ_z vanishes
    identically since z is cyclic.

    Returns:
    --------
    q̇, ṗ: vectors of length 3
    """
    dH_dq, dH_dp = sys.hamiltonian_gradient(state)
    return dH_dp, -dH_dq


def fiber_derivative(sys, state):
    """𝔽H(q, p) = (q, ∂H/∂p); always satisfies ż = y²/2 ẋ"""
    return TangentState(state.q, sys.hamiltonian_gradient(state)[1])


def dilation(sys, state):
    """Δ*H = p_i ∂H/∂p_i"""
    return state.p @ sys.hamiltonian_gradient(state)[1]


def recovered_lagrangian(sys, state):
    """L∘𝔽H = Δ*H − H"""
    return dilation(sys, state) - sys.hamiltonian(state)


def martinet_lagrangian(sys, q, v):
    """L(q, v) = ½ (ẋ² + (1+βx)² ẏ²) on the constraint submanifold"""
    w = sys.scale(q)
    return (v[0] ** 2 + w ** 2 * v[1] ** 2) / 2


def martinet_discrete_lagrangian(sys, q0, q1, h):
    """
    Discrete Lagrangian obtained by projecting the generating function
    S(q₀, p₁) = h (p₁·∂H/∂p₁ − H) onto configuration pairs.

    The projection q₁ = q₀ + h ∂H/∂p(q₀, p₁) is inverted for p₁ (its fiber
    direction p_z is fixed to zero) and S is evaluated there. The result
    equals h L(q₀, (q₁ − q₀)/h) with the (1+βx₀)² weight.

    Parameters:
    -----------
    sys: MartinetSystem
    q0, q1: array_like
        configuration pair on the discrete constraint
        (z₁ − z₀) = y₀²/2 (x₁ − x₀)
    h: float

    Returns:
    --------
    Ld: float
    constraint_residual: float
    """
    check_step_size(h)
    q0 = np.asarray(q0, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    residual = sys.discrete_constraint_violation(q0, q1)[0]
    if abs(residual) > ADMISSIBLE_RESIDUAL:
        raise ConstraintViolation(abs(residual), what="configuration pair")
    w = sys.scale(q0)
    dq = q1 - q0
    p1 = np.array([dq[0] / h, dq[1] * w ** 2 / h, 0.])
    H, _, dH_dp = sys.evaluate(q0, p1, energy=True, gradient=True)
    return h * (p1 @ dH_dp - H), residual


def martinet_verlet_substeps(sys, state, h, cfg=DEFAULT):
    """
    The two half steps of Störmer-Verlet on the Martinet Hamiltonian.

    Returns:
    --------
    half: PhaseState (q_{1/2}, p_{1/2})
    full: PhaseState (q₁, p₁)
    ld_plus, ld_minus: float
        discrete Lagrangians of the two half steps
    """
    check_step_size(h)
    return verlet_generating_functions(sys, state, h, cfg)


def verlet_substep_residuals(sys, q0, q_half, q1):
    """
    Discrete constraints of the two half steps:
    (z_{1/2} − z₀) − y₀²/2 (x_{1/2} − x₀) and (z₁ − z_{1/2}) − y₁²/2 (x₁ − x_{1/2})
    """
    return (sys.discrete_constraint_violation(q0, q_half)[0],
            (q1[2] - q_half[2]) - q1[1] ** 2 / 2 * (q1[0] - q_half[0]))
