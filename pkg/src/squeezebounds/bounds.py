"""Closed-form information matrices, scalar bounds and stepwise bounds.

Matrices follow the generator normalization used throughout the package:
``Q_11 = 16 alpha^2 + 8`` (see ``fock_oracle.INFO_SCALE``).  Every quantity is
independent of ``lambda2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularMatrixError
from .params import ModelParams


@dataclass(frozen=True)
class InfoMatrices:
    qfim: np.ndarray
    uhlmann: np.ndarray


def qfim_closed(p: ModelParams) -> np.ndarray:
    a2 = p.alpha**2
    l1, th, ph = p.lambda1, p.theta, p.phi
    q11 = 16 * a2 + 8
    q12 = (16 * a2 * math.cos(2 * th) * math.sinh(2 * l1) * math.sin(2 * ph)
           + 8 * (2 * a2 + 1) * math.cos(2 * ph))
    q22 = 2 * (
        8 * a2 * math.sin(2 * th) * math.sinh(4 * l1) * math.sin(2 * ph) ** 2
        + 8 * a2 * math.cos(2 * th) * math.sinh(2 * l1) * math.sin(4 * ph)
        - 2 * (4 * a2 + 1) * math.sinh(2 * l1) ** 2 * math.cos(4 * ph)
        + (4 * a2 + 1) * math.cosh(4 * l1)
        + 4 * a2 + 3
    )
    return np.array([[q11, q12], [q12, q22]])


def uhlmann_closed(p: ModelParams) -> np.ndarray:
    a2 = p.alpha**2
    u12 = 8 * math.sin(2 * p.phi) * (
        2 * a2 * math.sin(2 * p.theta) * math.sinh(2 * p.lambda1)
        + (2 * a2 + 1) * math.cosh(2 * p.lambda1)
    )
    return np.array([[0.0, u12], [-u12, 0.0]])


def info_closed(p: ModelParams) -> InfoMatrices:
    return InfoMatrices(qfim_closed(p), uhlmann_closed(p))


@dataclass(frozen=True)
class ScalarBounds:
    """Scalar quantifiers of one information-matrix pair.

    ``sloppiness``, ``quantumness`` and the SLD bound ``cq`` (with the two
    brackets) are ``None`` when the QFI matrix is singular; ``singular`` is
    then set.  ``incompatibility`` is ``None`` when ``U = 0``.
    """

    sloppiness: float | None
    incompatibility: float | None
    quantumness: float | None
    t_identity: float
    cq: float | None
    bracket_t: float | None
    bracket_r: float | None
    singular: bool


def is_singular(q, sing_tol=1e-12) -> bool:
    """Relative test ``det Q < sing_tol * ||Q||^2`` (max-entry norm)."""
    q = np.asarray(q, dtype=float)
    scale = float(np.max(np.abs(q))) ** 2
    return scale == 0 or np.linalg.det(q) < sing_tol * scale


def scalar_bounds(q, u, sing_tol: float = 1e-12) -> ScalarBounds:
    q = np.asarray(q, dtype=float)
    u12 = float(np.asarray(u, dtype=float)[0, 1])
    det_u = u12 * u12
    tr_q = float(np.trace(q))
    incompat = 1.0 / det_u if det_u > 0 else None
    t_id = math.sqrt(2.0 * det_u) / tr_q
    if is_singular(q, sing_tol):
        return ScalarBounds(None, incompat, None, t_id, None, None, None, True)
    det_q = float(np.linalg.det(q))
    cq = tr_q / det_q
    r = math.sqrt(det_u / det_q)
    return ScalarBounds(
        sloppiness=1.0 / det_q,
        incompatibility=incompat,
        quantumness=r,
        t_identity=t_id,
        cq=cq,
        bracket_t=cq * (1 + t_id),
        bracket_r=cq * (1 + r),
        singular=False,
    )


def weighted_cq(q, w=None) -> float:
    """``Tr[W Q^-1]``; identity weight by default."""
    q = np.asarray(q, dtype=float)
    if is_singular(q):
        raise SingularMatrixError("QFI matrix is singular")
    w = np.eye(2) if w is None else np.asarray(w, dtype=float)
    if w.shape != (2, 2) or not np.allclose(w, w.T):
        raise ValueError("weight must be a symmetric 2x2 matrix")
    if np.any(np.linalg.eigvalsh(w) < 0):
        raise ValueError("weight must be positive semidefinite")
    return float(np.trace(w @ np.linalg.inv(q)))


def cq_optimal_closed(alpha: float, lambda1: float) -> float:
    """SLD bound ``Tr Q / det Q`` at ``phi = theta = pi/4`` in closed form."""
    a2 = alpha**2
    x = 1 + (1 + 4 * a2) * math.cosh(4 * lambda1) + 4 * a2 * math.sinh(4 * lambda1)
    return (1.0 / (1 + 2 * a2) + 2.0 / x) / 8.0


def asymptotic_cq(alpha: float, lambda1: float) -> float:
    """Large-``alpha`` limit of :func:`cq_optimal_closed`."""
    return (1 + math.exp(-4 * lambda1)) / (16 * alpha**2)


def asymptotic_R(alpha: float, lambda1: float) -> float:
    """Quantumness at ``phi = theta = pi/4`` to order ``1/alpha^2``."""
    if not alpha > 0:
        raise DomainError("asymptotic_R needs alpha > 0")
    s, c = math.sinh(lambda1), math.cosh(lambda1)
    return 1 - 2 / alpha**2 * math.exp(-4 * lambda1) * s * s * c * c


def asymptotic_T(lambda1: float) -> float:
    """Identity-weight quantumness at ``phi = theta = pi/4``, ``alpha >> 1``."""
    return 1 / (math.sqrt(2) * math.cosh(2 * lambda1))


@dataclass(frozen=True)
class StepwiseBounds:
    gamma_star_1: float
    gamma_star_2: float
    c_sep_min_1: float
    c_sep_min_2: float


def _sloppiness(q, s):
    if s is None:
        raise SingularMatrixError("sloppiness undefined for a singular QFI matrix")
    if not s > 0:
        raise DomainError(f"sloppiness must be > 0, got {s}")
    return s


def stepwise_bounds(q, s: float, gamma: float):
    """``(C_sep1, C_sep2)`` when a fraction ``gamma`` goes to the first step.

    ``C_sep1`` estimates ``lambda1`` first, ``C_sep2`` estimates ``lambda2``
    first.  ``gamma`` may be an array of fractions.
    """
    g = np.asarray(gamma, dtype=float)
    if not np.all((g > 0) & (g < 1)):
        raise DomainError(f"gamma must lie in (0, 1), got {gamma}")
    gamma = g if g.ndim else float(g)
    s = _sloppiness(q, s)
    q11, q22 = float(q[0][0]), float(q[1][1])
    c1 = s * q22 / gamma + 1 / (q22 * (1 - gamma))
    c2 = s * q11 / gamma + 1 / (q11 * (1 - gamma))
    return c1, c2


def stepwise_optimal(q, s: float) -> StepwiseBounds:
    s = _sloppiness(q, s)
    root = math.sqrt(s)
    out = []
    # sep1 is driven by Q_22 (lambda1 first), sep2 by Q_11
    for qkk in (float(q[1][1]), float(q[0][0])):
        gamma = qkk * root / (1 + qkk * root)
        out.append((gamma, 1 / qkk + qkk * s + 2 * root))
    return StepwiseBounds(out[0][0], out[1][0], out[0][1], out[1][1])
