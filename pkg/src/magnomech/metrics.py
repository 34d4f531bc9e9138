"""Fidelity and entanglement figures of merit.

Fidelity against a pure target ket is the plain overlap <phi|rho|phi>,
well defined also for the subnormalized branch states the transfer
pipeline reports (there it reads as the success probability of a perfect
transfer).  Uhlmann fidelity is provided for completeness.

Logarithmic negativity E_N = ln || rho^(T_B) ||_1 (natural log, clamped at
zero) comes in a Fock-basis route via partial transposition and a Gaussian
route via symplectic eigenvalues of a partially transposed covariance
matrix.  Covariance conventions: x = a + a^dag, p = -i(a - a^dag), vacuum
covariance = identity; the symplectic form is block-diagonal [[0, 1], [-1, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock

FIDELITY_DEFINITIONS = ("pure_target_overlap", "uhlmann")
NEGATIVITY_METHODS = ("fock_ppt", "gaussian_symplectic", "closed_form")


@dataclass(frozen=True)
class Fidelity:
    value: float
    definition: str


@dataclass(frozen=True)
class LogNegativity:
    value: float
    method: str


def fidelity_pure_target(target: fock.FockKet, rho: fock.FockDensityMatrix) -> Fidelity:
    """<phi|rho|phi> for a pure target; real, in [0, trace(rho)]."""
    if target.dims.dims != rho.dims.dims:
        raise ValueError("target and state dimensions differ")
    v = target.amplitudes
    val = float(np.real(v.conj() @ rho.matrix @ v))
    return Fidelity(value=max(0.0, val), definition="pure_target_overlap")


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def uhlmann_fidelity(rho: fock.FockDensityMatrix,
                     sigma: fock.FockDensityMatrix) -> Fidelity:
    """(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    if rho.dims.dims != sigma.dims.dims:
        raise ValueError("state dimensions differ")
    sq = _psd_sqrt(rho.matrix)
    inner = sq @ sigma.matrix @ sq
    w = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return Fidelity(value=float(np.sqrt(w).sum() ** 2), definition="uhlmann")


def log_negativity_fock(rho: fock.FockDensityMatrix,
                        transpose_modes=(1,)) -> LogNegativity:
    """E_N from the trace norm of the partial transpose, clamped at 0."""
    pt = fock.partial_transpose(rho, transpose_modes)
    # phase-free states give a real matrix up to roundoff; the real
    # symmetric solver is ~3x faster and the discarded part is far below
    # any tolerance used on this number
    if float(np.max(np.abs(pt.imag))) <= 1e-14 * max(1.0, float(np.max(np.abs(pt.real)))):
        pt = np.ascontiguousarray(pt.real)
    trace_norm = float(np.abs(np.linalg.eigvalsh(pt)).sum())
    return LogNegativity(value=max(0.0, float(np.log(trace_norm))),
                         method="fock_ppt")


def effective_squeezing(squeezing: float, efficiency: float) -> float:
    """r' = artanh(sqrt(eta) * tanh(r)): squeezing left after a partial swap.

    Monotone in both arguments; r' = r at eta = 1 and 0 at eta = 0.  The
    matching closed-form log negativity of the swapped pair is 2 * r'.
    """
    r = float(squeezing)
    eta = float(efficiency)
    if r < 0.0:
        raise ValueError("squeezing must be >= 0")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency {eta!r} outside [0, 1]")
    return float(np.arctanh(np.sqrt(eta) * np.tanh(r)))


def closed_form_log_negativity(squeezing: float, efficiency: float) -> LogNegativity:
    """E_N = 2 * artanh(sqrt(eta) * tanh(r)) for the swapped squeezed pair."""
    return LogNegativity(value=2.0 * effective_squeezing(squeezing, efficiency),
                         method="closed_form")


def symplectic_form(n_modes: int) -> np.ndarray:
    """Direct sum of [[0, 1], [-1, 0]] per mode, quadrature order (x, p)."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def symplectic_eigenvalues(cm: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix (vacuum -> all ones)."""
    cm = np.asarray(cm, dtype=float)
    n = cm.shape[0] // 2
    ev = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ cm))
    return np.sort(ev)[::2]  # each nu appears twice


def log_negativity_gaussian(cm: np.ndarray, transpose_modes=(1,),
                            *, physical_tol: float = 1e-9) -> LogNegativity:
    """E_N = max(0, -ln nu_min) after transposing the listed modes.

    ``cm`` is a covariance matrix in (x, p) interleaved order with vacuum
    normalized to the identity.  Transposition flips the p quadrature of
    each listed mode.  Raises ValueError when the input covariance matrix
    is unphysical beyond ``physical_tol``.
    """
    cm = np.asarray(cm, dtype=float)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1] or cm.shape[0] % 2:
        raise ValueError("covariance matrix must be square of even size")
    n = cm.shape[0] // 2
    if isinstance(transpose_modes, (int, np.integer)):
        transpose_modes = (int(transpose_modes),)
    asym = float(np.max(np.abs(cm - cm.T)))
    if asym > 1e-10:
        raise ValueError(f"covariance matrix asymmetric by {asym:.3e}")
    omega = symplectic_form(n)
    w = np.linalg.eigvalsh(cm + 1j * omega)
    if w[0] < -physical_tol:
        raise ValueError(f"unphysical covariance matrix: min eig of V + i*Omega "
                         f"is {w[0]:.3e}")
    flip = np.ones(2 * n)
    for k in transpose_modes:
        if not 0 <= k < n:
            raise ValueError(f"mode {k} out of range")
        flip[2 * k + 1] = -1.0
    cm_pt = cm * np.outer(flip, flip)
    nu_min = float(symplectic_eigenvalues(cm_pt).min())
    return LogNegativity(value=max(0.0, -float(np.log(nu_min))),
                         method="gaussian_symplectic")
