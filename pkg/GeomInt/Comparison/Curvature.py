#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Curvature of the connection Γ defined by the constraints
q̇^α = Γ^α_a(q) q̇^a. Nonholonomic and vakonomic motions can only share a
trajectory where q̇^a μ_α R^α_ab vanishes.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CurvatureTensor:
    """R^α_ab, shape (k, n−k, n−k), antisymmetric in (a, b)"""
    R: np.ndarray

    def contract(self, vfree, mu):
        """r_b = q̇^a μ_α R^α_ab"""
        return np.einsum("a,k,kab->b", np.asarray(vfree, dtype=float), np.asarray(mu, dtype=float), self.R)

    def velocity_matrix(self, vfree):
        """C with C μ = contract(vfree, μ); shape (n−k, k)"""
        return np.einsum("a,kab->bk", np.asarray(vfree, dtype=float), self.R)


def horizontal_derivative(sys, q):
    """
    D_a Γ^α_b = ∂_a Γ^α_b + Γ^β_a ∂_β Γ^α_b, as an array [α, a, b]
    """
    q = np.asarray(q, dtype=float)
    dgam = sys.gamma_gradient(q)
    gam = sys.gamma_matrix(q)
    free = list(sys.split.free)
    constrained = list(sys.split.constrained)
    d_free = np.transpose(dgam[free], (1, 0, 2))
    d_con = np.einsum("ja,jkb->kab", gam, dgam[constrained])
    return d_free + d_con


def curvature(sys, q):
    """
    R^α_ab = ∂_aΓ^α_b − ∂_bΓ^α_a + Γ^β_a ∂_βΓ^α_b − Γ^β_b ∂_βΓ^α_a

    Returns:
    --------
    CurvatureTensor
    """
    d = horizontal_derivative(sys, q)
    return CurvatureTensor(d - np.transpose(d, (0, 2, 1)))


def comparison_residual(sys, q, vfree, mu):
    """r_b = Σ q̇^a μ_α R^α_ab(q); zero where common solutions may pass"""
    return curvature(sys, q).contract(vfree, mu)
