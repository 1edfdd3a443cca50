"""Classical Fisher information of general-dyne detection.

The POVM seed is a pure Gaussian state with covariance ``diag(z, 1/z) / 2``;
``z = 1`` is heterodyne and ``z -> 0, inf`` approach homodyne of ``q`` and
``p``.  Outcomes are Gaussian with covariance ``sigma + sigma_m``, so the
Fisher matrix follows from the moment derivatives alone.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bounds import asymptotic_cq
from .errors import DomainError, OptimizationError, SingularMatrixError
from .gaussian import evolve_moments, moment_derivatives
from .params import ModelParams


@dataclass(frozen=True)
class GeneralDyneSetting:
    z: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.z) and self.z > 0):
            raise ValueError(f"z must be a finite positive real, got {self.z}")

    @property
    def cov(self) -> np.ndarray:
        return 0.5 * np.diag([self.z, 1.0 / self.z])


def _setting(s) -> GeneralDyneSetting:
    return s if isinstance(s, GeneralDyneSetting) else GeneralDyneSetting(float(s))


def outcome_covariance(p: ModelParams, setting) -> np.ndarray:
    return evolve_moments(p).cov + _setting(setting).cov


def cfi_matrix(p: ModelParams, setting) -> np.ndarray:
    """Fisher matrix of the Gaussian outcome distribution for ``(lambda1, lambda2)``.

    ``F_jk = dX_j^T S^-1 dX_k + Tr[S^-1 dS_j S^-1 dS_k] / 2`` with ``S`` the
    outcome covariance; the measurement part of ``S`` does not depend on the
    parameters.
    """
    sigma = outcome_covariance(p, setting)
    inv = np.linalg.inv(sigma)
    dmean, dcov = moment_derivatives(p)
    left = [inv @ dcov[j] for j in range(2)]
    f = np.empty((2, 2))
    for j in range(2):
        for k in range(2):
            f[j, k] = dmean[j] @ inv @ dmean[k] + 0.5 * np.trace(left[j] @ left[k])
    return 0.5 * (f + f.T)


def c_g(f, sing_tol: float = 1e-12) -> float:
    """``Tr F^-1``."""
    f = np.asarray(f, dtype=float)
    scale = float(np.max(np.abs(f))) ** 2
    if scale == 0 or np.linalg.det(f) < sing_tol * scale:
        raise SingularMatrixError("Fisher matrix is singular")
    return float(np.trace(np.linalg.inv(f)))


def optimal_cfi_closed(alpha: float, lambda1: float) -> np.ndarray:
    """Fisher matrix at ``theta = 0, phi = pi/4, z = exp(2 lambda2)``.

    Diagonal and independent of ``lambda2``.  The covariance contribution to
    the second entry is ``cosh^2(2 lambda1) / cosh^2(lambda1)``.
    """
    t, ch = math.tanh(lambda1), math.cosh(lambda1)
    a2 = alpha**2
    f11 = 1 + t * t + 2 * a2 * (1 + t)
    f22 = 2 * a2 * math.exp(3 * lambda1) / ch + (math.cosh(2 * lambda1) / ch) ** 2
    return np.diag([f11, f22])


def cg_asymptotic(alpha: float, lambda1: float) -> float:
    """Large-``alpha`` limit of the optimized ``Tr F^-1``: ``(1 + e^{-2 lambda1})^2 / (4 alpha^2)``."""
    if not alpha > 0:
        raise DomainError("cg_asymptotic needs alpha > 0")
    return (1 + math.exp(-2 * lambda1)) ** 2 / (4 * alpha**2)


def holevo_ratio_band(alpha: float, lambda1: float):
    """Asymptotic ``(lower, upper)`` estimate of ``C_H / C_g`` for ``alpha >> 1``.

    Lower end is the SLD bound over the optimized general-dyne bound; the
    upper end scales it by 3/2.  ``alpha`` only fixes the regime, the band
    does not depend on it.
    """
    if not alpha > 0:
        raise DomainError("holevo_ratio_band needs alpha > 0")
    lower = asymptotic_cq(alpha, lambda1) / cg_asymptotic(alpha, lambda1)
    return lower, 1.5 * lower


@dataclass(frozen=True)
class OptimalSetting:
    theta: float
    phi: float
    z: float
    c_g: float
    evaluations: int


def _objective(lambda1, lambda2, alpha):
    def cost(x):
        theta, phi, logz = x
        p = ModelParams(lambda1, lambda2, alpha, theta, phi)
        try:
            return c_g(cfi_matrix(p, GeneralDyneSetting(math.exp(logz))))
        except SingularMatrixError:
            return math.inf
    return cost


def _fd_gradient(cost, x, h):
    steps = np.eye(x.size) * h
    return np.array([(cost(x + e) - cost(x - e)) / (2 * h) for e in steps])


def _fd_hessian(cost, x, h):
    n = x.size
    steps = np.eye(n) * h
    f0 = cost(x)
    hess = np.empty((n, n))
    for i in range(n):
        ei = steps[i]
        hess[i, i] = (cost(x + ei) - 2 * f0 + cost(x - ei)) / h**2
        for j in range(i):
            ej = steps[j]
            hess[i, j] = hess[j, i] = (
                cost(x + ei + ej) - cost(x + ei - ej)
                - cost(x - ei + ej) + cost(x - ei - ej)
            ) / (4 * h * h)
    return hess


def _newton_polish(cost, x, iters=3):
    """Newton steps on finite-difference derivatives.

    A simplex only locates a smooth minimum to about sqrt(machine eps) in
    the arguments; stationarity of the gradient pins it down to ~1e-11.
    Steps that leave the feasible box or grow the gradient are rejected.
    """
    grad = _fd_gradient(cost, x, 1e-5)
    for _ in range(iters):
        try:
            step = np.linalg.solve(_fd_hessian(cost, x, 1e-3), grad)
        except np.linalg.LinAlgError:
            break
        trial = x - step
        if not (0 <= trial[1] <= math.pi / 2 and -6 <= trial[2] <= 6):
            break
        trial_grad = _fd_gradient(cost, trial, 1e-5)
        if not np.all(np.isfinite(trial_grad)) or (
                np.linalg.norm(trial_grad) >= np.linalg.norm(grad)):
            break
        x, grad = trial, trial_grad
    return x


def optimize_setting(lambda1: float, lambda2: float, alpha: float,
                     grid=(24, 13, 25), max_evals: int = 10_000,
                     tol: float = 1e-10) -> OptimalSetting:
    """Minimize ``Tr F^-1`` over probe phase, scrambler phase and ``z``.

    Coarse grid over ``theta in [0, pi)``, ``phi in [0, pi/2]``,
    ``log z in [-6, 6]``, then Nelder-Mead refinement and a final Newton
    polish.  The returned
    ``theta`` is reduced to ``[-pi/2, pi/2)`` (the bound has period pi in
    ``theta``).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    cost = _objective(lambda1, lambda2, alpha)
    thetas = np.linspace(0, math.pi, grid[0], endpoint=False)
    phis = np.linspace(0, math.pi / 2, grid[1])
    logzs = np.linspace(-6, 6, grid[2])
    best = min(
        ((cost(x), x) for x in itertools.product(thetas, phis, logzs)),
        key=lambda item: item[0],
    )
    if not math.isfinite(best[0]):
        raise OptimizationError("no grid point gives a nonsingular Fisher matrix")
    res = minimize(
        cost, np.array(best[1]), method="Nelder-Mead",
        bounds=[(None, None), (0, math.pi / 2), (-6, 6)],
        options={"xatol": 1e-10, "fatol": tol * 1e-4 * best[0],
                 "maxfev": max_evals, "adaptive": False},
    )
    if not res.success:
        raise OptimizationError(f"refinement failed: {res.message}")
    x = _newton_polish(cost, res.x)
    value = cost(x)
    if not value <= res.fun * (1 + 1e-12):
        x, value = res.x, res.fun
    theta = (x[0] + math.pi / 2) % math.pi - math.pi / 2
    return OptimalSetting(float(theta), float(x[1]), math.exp(x[2]),
                          float(value), int(res.nfev))
