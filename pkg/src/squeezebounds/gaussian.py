"""Phase-space description of the output state.

The closed forms in :func:`evolve_moments` are the production path.  The
symplectic factorization exists to cross-check them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ModelParams

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class GaussianState:
    """Quadrature means ``(<q>, <p>)`` and the 2x2 covariance matrix."""

    mean: np.ndarray
    cov: np.ndarray

    @property
    def purity_det(self) -> float:
        """``det cov``; equals 1/4 for pure single-mode states."""
        return float(np.linalg.det(self.cov))


def evolve_moments(p: ModelParams) -> GaussianState:
    l1, l2, al, th, ph = p.lambda1, p.lambda2, p.alpha, p.theta, p.phi
    ct, st = math.cos(th), math.sin(th)
    cp, sp = math.cos(ph), math.sin(ph)
    mq = SQRT2 * al * math.exp(l2) * (math.exp(l1) * ct * cp - math.exp(-l1) * st * sp)
    mp = -SQRT2 * al * math.exp(-l2) * (math.exp(-l1) * st * cp + math.exp(l1) * ct * sp)
    vq = 0.5 * math.exp(2 * l2) * (math.exp(2 * l1) * cp**2 + math.exp(-2 * l1) * sp**2)
    vp = 0.5 * math.exp(-2 * l2) * (math.exp(-2 * l1) * cp**2 + math.exp(2 * l1) * sp**2)
    cqp = -0.5 * math.sin(2 * ph) * math.sinh(2 * l1)
    return GaussianState(np.array([mq, mp]), np.array([[vq, cqp], [cqp, vp]]))


def moment_derivatives(p: ModelParams):
    """Analytic derivatives of the moments with respect to ``(lambda1, lambda2)``.

    Returns
    -------
    dmean : ndarray, shape (2, 2)
        ``dmean[j]`` is the derivative of ``(<q>, <p>)`` along ``lambda_{j+1}``.
    dcov : ndarray, shape (2, 2, 2)
        ``dcov[j]`` is the derivative of the covariance matrix.
    """
    l1, l2, al, th, ph = p.lambda1, p.lambda2, p.alpha, p.theta, p.phi
    ct, st = math.cos(th), math.sin(th)
    cp, sp = math.cos(ph), math.sin(ph)
    e1, e2 = math.exp(l1), math.exp(l2)
    state = evolve_moments(p)
    mq, mp = state.mean
    vq, vp = state.cov[0, 0], state.cov[1, 1]

    dmq1 = SQRT2 * al * e2 * (e1 * ct * cp + st * sp / e1)
    dmp1 = -SQRT2 * al / e2 * (-st * cp / e1 + e1 * ct * sp)
    dvq1 = e2**2 * (e1**2 * cp**2 - sp**2 / e1**2)
    dvp1 = (-cp**2 / e1**2 + e1**2 * sp**2) / e2**2
    dc1 = -math.sin(2 * ph) * math.cosh(2 * l1)

    dmean = np.array([[dmq1, dmp1], [mq, -mp]])
    dcov = np.array([
        [[dvq1, dc1], [dc1, dvp1]],
        [[2 * vq, 0.0], [0.0, -2 * vp]],
    ])
    return dmean, dcov


def probe_moments(alpha: float, theta: float) -> GaussianState:
    """Moments of the coherent probe in the phase-space convention."""
    return GaussianState(
        SQRT2 * alpha * np.array([math.cos(theta), -math.sin(theta)]),
        0.5 * np.eye(2),
    )


def squeeze_matrix(lam: float) -> np.ndarray:
    return np.diag([math.exp(lam), math.exp(-lam)])


def rotation_matrix(phi: float) -> np.ndarray:
    # Heisenberg action of exp(-i phi a^dag a): q -> q cos(phi) + p sin(phi)
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def symplectic_factors(p: ModelParams):
    """``(S(lambda2), R(phi), S(lambda1))`` whose product maps probe moments out."""
    return squeeze_matrix(p.lambda2), rotation_matrix(p.phi), squeeze_matrix(p.lambda1)


def evolve_symplectic(p: ModelParams) -> GaussianState:
    s2, r, s1 = symplectic_factors(p)
    m = s2 @ r @ s1
    probe = probe_moments(p.alpha, p.theta)
    return GaussianState(m @ probe.mean, m @ probe.cov @ m.T)
