"""Model inputs and numerical configuration.

Conventions: hbar = 1, ``q = (a + a^dag)/sqrt(2)``, ``p = (a - a^dag)/(i sqrt(2))``,
so the vacuum has quadrature variance 1/2.  All bounds are per probe copy.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, fields


@dataclass(frozen=True)
class ModelParams:
    """Point in parameter space of the two-squeezing model.

    Parameters
    ----------
    lambda1, lambda2 : float
        First and second squeezing parameters (the estimated quantities).
    alpha : float
        Coherent probe amplitude, real and nonnegative.
    theta : float
        Probe phase in radians.
    phi : float
        Phase of the scrambler applied between the squeezings, radians.
    """

    lambda1: float = 0.0
    lambda2: float = 0.0
    alpha: float = 0.0
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if (
                isinstance(value, bool)
                or not isinstance(value, numbers.Real)
                or not math.isfinite(value)
            ):
                raise ValueError(f"{f.name} must be a finite real, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")

    def replace(self, **changes) -> "ModelParams":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ModelParams(**values)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class NumericsConfig:
    """Tolerances and truncation settings for the numerical paths.

    ``fock_dim`` is the starting truncation; with ``adapt`` it is doubled up
    to ``max_dim`` until both the tail check and the doubling check pass.
    """

    fock_dim: int = 256
    tail_tol: float = 1e-10
    sing_tol: float = 1e-12
    fd_step: float = 1e-5
    max_dim: int = 4096
    adapt: bool = True
    conv_tol: float = 1e-8

    def __post_init__(self):
        if int(self.fock_dim) != self.fock_dim or self.fock_dim < 4:
            raise ValueError(f"fock_dim must be an integer >= 4, got {self.fock_dim}")
        if self.max_dim < self.fock_dim and self.adapt:
            raise ValueError("max_dim must be >= fock_dim")
        for name in ("tail_tol", "sing_tol", "fd_step", "conv_tol"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value}")

    def replace(self, **changes) -> "NumericsConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return NumericsConfig(**values)


def default_numerics() -> NumericsConfig:
    return NumericsConfig()
