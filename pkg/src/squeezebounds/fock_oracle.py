"""Brute-force truncated Fock-space engine.

Builds the output state ``U2 V U1 |alpha e^{i theta}>`` of the
two-squeezing model amplitude by amplitude, together with its exact
parameter derivatives, and evaluates the information matrices and quadrature
moments from first principles.  Nothing here uses the closed forms; this
module exists to check them.

A state is a complex ``ndarray`` of Fock amplitudes ``c_0 .. c_{D-1}``.
Most functions also accept a ``(D, k)`` batch of column vectors.

Conventions
-----------
Two probe/frame conventions are needed because no single one reproduces
both the closed-form information matrices and the closed-form quadrature
moments (see README):

``"info"``
    Probe ``|alpha e^{i(theta + pi/2)}>``; reproduces ``bounds.qfim_closed``
    and ``bounds.uhlmann_closed``.
``"phase_space"``
    Squeezing generator ``-i(a^2 - a^dag^2)`` (stretches ``q``) and probe
    ``|alpha e^{-i theta}>``; reproduces ``gaussian.evolve_moments``.  It is
    implemented as the ``"info"`` engine conjugated by a quarter-turn
    phase rotation.
"""
from __future__ import annotations

import functools
import math

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .errors import ConvergenceError, TailError
from .params import ModelParams, NumericsConfig, default_numerics

# probe phase = sign * theta + offset; output rotated by apply_phase(post)
CONVENTIONS = {
    "info": (1.0, math.pi / 2, 0.0),
    "phase_space": (-1.0, -math.pi / 4, -math.pi / 4),
}

# Information matrices are reported per unit of the full generator G, i.e.
# from derivative vectors 2 * d|psi>/d lambda.  Entries are 4x the QFI with
# respect to lambda itself.
INFO_SCALE = 4.0


def _config(cfg):
    return default_numerics() if cfg is None else cfg


def _convention(name):
    try:
        return CONVENTIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown convention {name!r}; expected one of {sorted(CONVENTIONS)}"
        ) from None


def tail_mass(state) -> float:
    """Fraction of the squared norm in the top ``ceil(D/8)`` Fock levels.

    For a batch, the largest fraction over columns.
    """
    c = np.asarray(state)
    dim = c.shape[0]
    top = dim - math.ceil(dim / 8)
    total = np.sum(np.abs(c) ** 2, axis=0)
    upper = np.sum(np.abs(c[top:]) ** 2, axis=0)
    frac = np.where(total > 0, upper / np.where(total > 0, total, 1.0), 0.0)
    return float(np.max(frac))


def check_tail(state, cfg=None):
    cfg = _config(cfg)
    tail = tail_mass(state)
    if not tail < cfg.tail_tol:
        raise TailError(tail, np.shape(state)[0], cfg.tail_tol)
    return tail


def _coherent(alpha, theta, dim):
    c = np.zeros(dim, dtype=complex)
    if alpha == 0:
        c[0] = 1.0
        return c
    n = np.arange(dim)
    logmag = -0.5 * alpha**2 + n * math.log(alpha) - 0.5 * gammaln(n + 1)
    return np.exp(logmag) * np.exp(1j * theta * n)


def coherent_state(alpha: float, theta: float, cfg: NumericsConfig | None = None):
    """Amplitudes ``exp(-alpha^2/2) (alpha e^{i theta})^n / sqrt(n!)``.

    Raises
    ------
    TailError
        If the Poisson tail beyond the truncation is not below ``tail_tol``.
    """
    cfg = _config(cfg)
    if not alpha >= 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    c = _coherent(alpha, theta, cfg.fock_dim)
    check_tail(c, cfg)
    return c


def apply_G(state):
    """Apply the squeezing generator ``a^2 + a^dag^2`` (no normalization)."""
    c = np.asarray(state)
    dim = c.shape[0]
    if dim < 4:
        raise ValueError(f"state dimension must be >= 4, got {dim}")
    n = np.arange(dim - 2, dtype=float)
    ladder = np.sqrt((n + 1) * (n + 2))
    if c.ndim == 2:
        ladder = ladder[:, None]
    out = np.zeros(c.shape, dtype=complex)
    out[:-2] += ladder * c[2:]
    out[2:] += ladder * c[:-2]
    return out


def apply_phase(state, phi: float):
    """Apply ``exp(-i phi a^dag a)``: ``c_n -> e^{-i phi n} c_n``."""
    c = np.asarray(state)
    phase = np.exp(-1j * phi * np.arange(c.shape[0]))
    if c.ndim == 2:
        phase = phase[:, None]
    return phase * c


@functools.lru_cache(maxsize=8)
def _parity_eig(dim):
    # G only couples n <-> n +- 2, so each parity sector is tridiagonal.
    blocks = []
    for parity in (0, 1):
        idx = np.arange(parity, dim, 2)
        offdiag = np.sqrt((idx[:-1] + 1.0) * (idx[:-1] + 2.0))
        w, v = eigh_tridiagonal(np.zeros(len(idx)), offdiag)
        blocks.append((idx, w, v))
    return tuple(blocks)


def _squeeze_spectral(c, lam):
    if lam == 0:
        return np.array(c, dtype=complex)
    out = np.empty(c.shape, dtype=complex)
    for idx, w, v in _parity_eig(c.shape[0]):
        phase = np.exp(-0.5j * lam * w)
        if c.ndim == 2:
            phase = phase[:, None]
        out[idx] = v @ (phase * (v.T @ c[idx]))
    return out


def _squeeze_taylor(c, lam, max_terms=80):
    dim = c.shape[0]
    # max column sum of the banded generator
    gnorm = math.sqrt(dim * (dim + 1.0)) + math.sqrt((dim - 1.0) * (dim - 2.0))
    steps = max(1, math.ceil(0.5 * abs(lam) * gnorm))
    h = -0.5j * lam / steps
    out = np.array(c, dtype=complex)
    for _ in range(steps):
        term = out
        acc = out.copy()
        for k in range(1, max_terms + 1):
            term = (h / k) * apply_G(term)
            acc += term
            if np.linalg.norm(term) <= 1e-17 * np.linalg.norm(acc):
                break
        else:
            raise ConvergenceError(
                f"Taylor series did not converge in {max_terms} terms"
            )
        out = acc
    return out


def apply_squeeze(state, lam: float, cfg: NumericsConfig | None = None,
                  method: str = "spectral"):
    """Apply ``exp(-i lam G / 2)`` to a state or batch of states.

    ``method="spectral"`` diagonalizes the truncated generator on its two
    parity sectors (tridiagonal, cached per dimension).  ``method="taylor"``
    uses step splitting with a Taylor series per step; it is slower and kept
    as an independent check.

    Raises
    ------
    TailError
        If the output leaks into the top band of the truncation.
    ConvergenceError
        If the norm of a normalized input is not preserved to 1e-9, or the
        Taylor series stalls.
    """
    cfg = _config(cfg)
    c = np.asarray(state, dtype=complex)
    if lam == 0:
        return c.copy()
    if method == "spectral":
        out = _squeeze_spectral(c, lam)
    elif method == "taylor":
        out = _squeeze_taylor(c, lam)
    else:
        raise ValueError(f"unknown method {method!r}")
    check_tail(out, cfg)
    n_in = np.linalg.norm(c, axis=0)
    n_out = np.linalg.norm(out, axis=0)
    if np.any(np.abs(n_out - n_in) > 1e-9 * np.maximum(n_in, 1.0)):
        raise ConvergenceError("squeezing did not preserve the norm to 1e-9")
    return out


def _evolve(p, dim, convention, method="spectral"):
    """Output state and exact derivative vectors at one truncation.

    Returns ``(psi, d1, d2, tail)`` where ``tail`` is the worst top-band
    fraction over every intermediate vector.  No tail check is enforced.
    """
    sign, offset, post = _convention(convention)
    probe = _coherent(p.alpha, sign * p.theta + offset, dim)
    tails = [tail_mass(probe)]
    squeeze = _squeeze_spectral if method == "spectral" else _squeeze_taylor
    pair = np.stack([probe, apply_G(probe)], axis=1)
    tails.append(tail_mass(pair))
    pair = squeeze(pair, p.lambda1)
    tails.append(tail_mass(pair))
    pair = squeeze(apply_phase(pair, p.phi), p.lambda2)
    tails.append(tail_mass(pair))
    psi = pair[:, 0]
    d1 = -0.5j * pair[:, 1]
    d2 = -0.5j * apply_G(psi)
    tails.append(tail_mass(d2))
    if post:
        psi, d1, d2 = (apply_phase(v, post) for v in (psi, d1, d2))
    return psi, d1, d2, max(tails)


def _dims(cfg):
    if not cfg.adapt:
        return [cfg.fock_dim]
    dims = [cfg.fock_dim]
    while dims[-1] * 2 <= cfg.max_dim:
        dims.append(dims[-1] * 2)
    return dims


def _vec_gap(a, b):
    """Largest amplitude change between truncations, relative to ``|b|``.

    The shorter vector is zero-padded; entries are compared one by one, as
    matrix results are.
    """
    a = np.atleast_2d(np.asarray(a).T).T
    b = np.atleast_2d(np.asarray(b).T).T
    if a.shape[0] > b.shape[0]:
        a, b = b, a
    m = a.shape[0]
    diff = max(np.max(np.abs(a - b[:m])), np.max(np.abs(b[m:]), initial=0.0))
    return float(diff / max(np.linalg.norm(b), 1e-300))


def _mat_gap(a, b):
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def _converged(p, cfg, convention, reduce, gap, method="spectral"):
    """Evaluate ``reduce(psi, d1, d2)`` at growing truncations.

    Accepts the first dimension whose tail is below ``tail_tol`` and whose
    result agrees with the half-dimension run to ``conv_tol``.  Without
    ``adapt`` only the tail check applies.
    """
    dims = _dims(cfg)
    prev = None
    last_tail = None
    for k, dim in enumerate(dims):
        psi, d1, d2, tail = _evolve(p, dim, convention, method)
        value = reduce(psi, d1, d2)
        clean = tail < cfg.tail_tol
        if clean and len(dims) == 1:
            return value
        if clean and prev is not None:
            if gap(value, prev) <= cfg.conv_tol:
                return value
            if k == len(dims) - 1:
                raise ConvergenceError(
                    f"result changed by {gap(value, prev):.2e} between "
                    f"fock_dim={dims[k - 1]} and {dim}"
                )
        prev = value
        last_tail = (tail, dim)
    raise TailError(last_tail[0], last_tail[1], cfg.tail_tol)


def output_state(p: ModelParams, cfg: NumericsConfig | None = None,
                 convention: str = "info"):
    """Normalized output state ``U2 V U1 |probe>`` at a converged truncation."""
    cfg = _config(cfg)
    return _converged(p, cfg, convention, lambda psi, d1, d2: psi, _vec_gap)


def derivative_states(p: ModelParams, cfg: NumericsConfig | None = None,
                      convention: str = "info"):
    """Exact derivatives ``(d psi/d lambda1, d psi/d lambda2)``.

    ``d1 = -(i/2) U2 V U1 G |probe>`` and ``d2 = -(i/2) G |psi>``; both are
    unnormalized.
    """
    cfg = _config(cfg)
    both = _converged(
        p, cfg, convention,
        lambda psi, d1, d2: np.stack([d1, d2], axis=1),
        _vec_gap,
    )
    return both[:, 0], both[:, 1]


def geometric_tensor(psi, d1, d2):
    """``K_jk = <d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>``."""
    ds = np.stack([d1, d2], axis=1)
    gram = ds.conj().T @ ds
    proj = ds.conj().T @ psi
    return gram - np.outer(proj, proj.conj())


def _info(psi, d1, d2):
    return 4.0 * INFO_SCALE * geometric_tensor(psi, d1, d2)


def info_matrices_fock(p: ModelParams, cfg: NumericsConfig | None = None):
    """``(Q, U)`` from the Fock engine in the ``"info"`` convention.

    ``Q = 4 INFO_SCALE Re K`` (symmetrized), ``U = 4 INFO_SCALE Im K``
    (antisymmetrized), with ``K`` from :func:`geometric_tensor`.
    """
    cfg = _config(cfg)
    k = _converged(p, cfg, "info", _info, _mat_gap)
    q = k.real
    u = k.imag
    return 0.5 * (q + q.T), 0.5 * (u - u.T)


def qfim_fock(p: ModelParams, cfg: NumericsConfig | None = None):
    return info_matrices_fock(p, cfg)[0]


def uhlmann_fock(p: ModelParams, cfg: NumericsConfig | None = None):
    return info_matrices_fock(p, cfg)[1]


def _moment_vector(psi, d1=None, d2=None):
    mean, cov = moments_fock(psi)
    return np.concatenate([mean, cov.ravel()])


def output_moments(p: ModelParams, cfg: NumericsConfig | None = None,
                   convention: str = "phase_space"):
    """Quadrature moments of the output state, converged on the moments.

    Truncation acceptance compares the moments themselves between dimension
    doublings, which is looser than comparing amplitudes as
    :func:`output_state` does.
    """
    cfg = _config(cfg)
    v = _converged(p, cfg, convention, _moment_vector, _mat_gap)
    return v[:2], v[2:].reshape(2, 2)


def moments_fock(state):
    """Quadrature means ``(<q>, <p>)`` and covariance matrix of a state."""
    c = np.asarray(state)
    c = c / np.linalg.norm(c)
    n = np.arange(c.shape[0], dtype=float)
    a1 = np.vdot(c[:-1], np.sqrt(n[1:]) * c[1:])
    a2 = np.vdot(c[:-2], np.sqrt(n[1:-1] * n[2:]) * c[2:])
    nbar = float(np.sum(n * np.abs(c) ** 2))
    mq = math.sqrt(2.0) * a1.real
    mp = math.sqrt(2.0) * a1.imag
    qq = a2.real + nbar + 0.5
    pp = -a2.real + nbar + 0.5
    qp = a2.imag
    cov = np.array([[qq - mq * mq, qp - mq * mp], [qp - mq * mp, pp - mp * mp]])
    return np.array([mq, mp]), cov
