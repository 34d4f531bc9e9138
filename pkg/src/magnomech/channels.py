"""Fiber photon loss: transmittance bookkeeping and the loss channel.

Attenuation is quoted in dB: T = 10**(-(alpha * L + extra) / 10).  The
channel itself is pure photon loss and comes in two mathematically
equivalent realizations, kept separate on purpose so they can be checked
against each other:

* "kraus": A_k = sqrt(C(n, k) terms) a^k T^(n/2), applied directly;
* "ancilla": beamsplitter onto a vacuum ancilla with sin(theta)^2 = 1 - T,
  ancilla traced out afterwards.

`post_loss_pulse_state` evaluates the closed-form double sum for the pulse
state that an anti-Stokes swap of a magnon state produces after fiber loss,
serving as an independent oracle for the engine route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock

# group index of standard single-mode fiber, for transit-time metadata only
FIBER_GROUP_INDEX = 1.468
SPEED_OF_LIGHT = 299792458.0

LOSS_METHODS = ("kraus", "ancilla")


@dataclass(frozen=True)
class FiberSpec:
    """A fiber link: length and attenuation in dB."""

    length_km: float
    attenuation_db_per_km: float = 0.2
    extra_loss_db: float = 0.0

    def __post_init__(self):
        if self.length_km < 0.0:
            raise ValueError("length_km must be >= 0")
        if self.attenuation_db_per_km < 0.0:
            raise ValueError("attenuation_db_per_km must be >= 0")
        if self.extra_loss_db < 0.0:
            raise ValueError("extra_loss_db must be >= 0")

    @property
    def total_loss_db(self) -> float:
        return self.length_km * self.attenuation_db_per_km + self.extra_loss_db

    @property
    def transit_time_s(self) -> float:
        """One-way propagation delay; metadata only, never applied to states."""
        return self.length_km * 1e3 * FIBER_GROUP_INDEX / SPEED_OF_LIGHT


def transmittance(fiber: FiberSpec) -> float:
    """Power transmittance T in [0, 1] from the dB budget."""
    return float(10.0 ** (-fiber.total_loss_db / 10.0))


def loss_kraus_operators(dim: int, transmittance: float) -> list[np.ndarray]:
    """Kraus set of the photon-loss channel on a dim-level mode.

    A_k |n> = sqrt(C(n, k)) * R^(k/2) * T^((n-k)/2) |n-k>, R = 1 - T.
    """
    t = float(transmittance)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmittance {t!r} outside [0, 1]")
    r = 1.0 - t
    ops = []
    for k in range(dim):
        a = np.zeros((dim, dim))
        for n in range(k, dim):
            a[n - k, n] = math.sqrt(math.comb(n, k) * r**k * t ** (n - k))
        ops.append(a)
        if r == 0.0:
            break  # only k = 0 survives at unit transmittance
    return ops


def apply_loss(rho: fock.FockDensityMatrix, mode: int, transmittance: float,
               *, method: str = "kraus") -> fock.FockDensityMatrix:
    """Photon loss of power transmittance T on one mode of a joint state."""
    if method not in LOSS_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {LOSS_METHODS}")
    dims = rho.dims
    if not 0 <= mode < dims.n_modes:
        raise ValueError(f"mode {mode} out of range")
    t = float(transmittance)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmittance {t!r} outside [0, 1]")

    if method == "ancilla":
        d = dims.dims[mode]
        joint = fock.tensor(rho, fock.vacuum(fock.ModeDims((d,))))
        ancilla = joint.dims.n_modes - 1
        theta = float(np.arcsin(np.sqrt(1.0 - t)))
        joint = fock.apply_two_mode_exponential(joint, mode, ancilla,
                                                "beamsplitter", theta)
        return fock.partial_trace(joint, ancilla)

    d = dims.dims[mode]
    out = np.zeros_like(rho.matrix)
    for a in loss_kraus_operators(d, t):
        # single-mode Kraus: act on the ket axis of `mode`, then the bra axis
        m = rho.matrix.reshape(dims.dims + dims.dims)
        m = np.moveaxis(m, mode, 0)
        shp = m.shape
        m = (a @ m.reshape(d, -1)).reshape(shp)
        m = np.moveaxis(m, 0, mode)
        nm = dims.n_modes
        m = np.moveaxis(m, nm + mode, 0)
        shp = m.shape
        m = (a.conj() @ m.reshape(d, -1)).reshape(shp)
        m = np.moveaxis(m, 0, nm + mode)
        out += m.reshape(out.shape)
    return fock.FockDensityMatrix(dims, out)


def post_loss_pulse_state(coefficients: np.ndarray, swap_efficiency: float,
                          transmittance: float, dim: int) -> fock.FockDensityMatrix:
    """Closed-form pulse state after swap (efficiency S) and loss (T).

    ``coefficients`` is the magnon density matrix c[n, s] in the number
    basis.  The returned single-mode matrix has elements

        sum_m c[n, s] (-i)^n (i)^s S^((n+s)/2)
              sqrt(C(n, m) C(s, m)) R^m T^((n+s)/2 - m)   on |n-m><s-m|

    i.e. the vacuum-conditioned branch of the swap, propagated through the
    loss channel, with the beamsplitter phases kept.  No unitary is applied;
    this is the oracle counterpart of the engine route.
    """
    c = np.asarray(coefficients, dtype=complex)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError("coefficient table must be a square matrix")
    n_max = c.shape[0]
    if n_max > dim:
        raise ValueError(
            f"truncation {dim} too small for coefficient table of size {n_max}")
    s_eff = float(swap_efficiency)
    t = float(transmittance)
    if not 0.0 <= s_eff <= 1.0:
        raise ValueError(f"swap efficiency {s_eff!r} outside [0, 1]")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmittance {t!r} outside [0, 1]")
    r = 1.0 - t
    out = np.zeros((dim, dim), dtype=complex)
    for n in range(n_max):
        for s in range(n_max):
            if c[n, s] == 0.0:
                continue
            base = c[n, s] * (-1j) ** n * (1j) ** s * s_eff ** ((n + s) / 2.0)
            for m in range(min(n, s) + 1):
                amp = math.sqrt(math.comb(n, m) * math.comb(s, m))
                amp *= r**m * t ** ((n + s) / 2.0 - m)
                out[n - m, s - m] += base * amp
    return fock.FockDensityMatrix(fock.ModeDims((dim,)), out)
