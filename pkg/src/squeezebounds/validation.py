"""Cross-checks of the closed forms against the Fock oracle on a grid."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds, fock_oracle, gaussian
from .params import ModelParams, NumericsConfig, default_numerics

# relative tolerance, with an absolute floor of REL_TOL * ZERO_FLOOR near zero
REL_TOL = 1e-6
ZERO_FLOOR = 1e-2

STANDARD_GRID = {
    "lambda1": tuple(0.25 * k for k in range(7)),
    "lambda2": (0.0, 0.5),
    "alpha": (0.0, 0.5, 1.0, 2.0),
    "theta": tuple(k * math.pi / 8 for k in range(5)),
    "phi": tuple(k * math.pi / 8 for k in range(5)),
}

_RANGES = {
    "lambda1": (0.0, 1.5),
    "lambda2": (0.0, 0.5),
    "alpha": (0.0, 2.0),
    "theta": (0.0, math.pi / 2),
    "phi": (0.0, math.pi / 2),
}


def scaled_error(a, b) -> float:
    """Largest ``|a - b| / max(|b|, ZERO_FLOOR)`` over entries."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), ZERO_FLOOR)))


def make_grid(points: int | None = None, **overrides):
    """Grid axes: the standard grid, or ``points`` evenly spaced values per axis.

    Keyword overrides pin an axis to the given value(s).
    """
    if points is None:
        axes = dict(STANDARD_GRID)
    else:
        axes = {k: tuple(np.linspace(lo, hi, points)) for k, (lo, hi) in _RANGES.items()}
    for name, value in overrides.items():
        if value is not None:
            axes[name] = tuple(np.atleast_1d(value).astype(float))
    return axes


def grid_points(axes):
    names = ("lambda1", "lambda2", "alpha", "theta", "phi")
    for values in itertools.product(*(axes[n] for n in names)):
        yield ModelParams(*values)


@dataclass
class ValidationResult:
    qfim: float = 0.0
    uhlmann: float = 0.0
    moments: float = 0.0
    points: int = 0
    worst: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return max(self.qfim, self.uhlmann, self.moments) < REL_TOL

    def _update(self, name, err, p):
        if err > getattr(self, name):
            setattr(self, name, err)
            self.worst[name] = p


def validate(cfg: NumericsConfig | None = None, axes=None,
             moments: bool = True) -> ValidationResult:
    """Compare oracle and closed forms at every grid point.

    Raises whatever the oracle raises (``TailError``, ``ConvergenceError``).
    """
    cfg = default_numerics() if cfg is None else cfg
    axes = STANDARD_GRID if axes is None else axes
    result = ValidationResult()
    for p in grid_points(axes):
        q, u = fock_oracle.info_matrices_fock(p, cfg)
        result._update("qfim", scaled_error(q, bounds.qfim_closed(p)), p)
        result._update("uhlmann", scaled_error(u, bounds.uhlmann_closed(p)), p)
        if moments:
            mean, cov = fock_oracle.output_moments(p, cfg)
            ref = gaussian.evolve_moments(p)
            err = max(scaled_error(mean, ref.mean), scaled_error(cov, ref.cov))
            result._update("moments", err, p)
        result.points += 1
    return result
