"""Pulsed magnon-photon conversion and squeezing propagators.

A drive pulse of duration tau on a cavity of linewidth kappa with effective
coupling G acts, after adiabatic elimination of the fast cavity, through the
single rate

    gscript = 2 * G**2 / kappa          (adiabatic conversion rate)

The anti-Stokes (beamsplitter) pulse converts a magnon into the output
temporal mode with efficiency eta = 1 - exp(-2 * gscript * tau); the Stokes
(parametric) pulse two-mode squeezes magnon and output mode with
cosh(r) = exp(gscript * tau).  On the truncated Fock space both are realized
as exact two-mode exponentials, see :mod:`magnomech.fock`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock

WEAK_COUPLING_BOUND = 0.05


@dataclass(frozen=True)
class PulseSpec:
    """One drive pulse: effective coupling, cavity linewidth, duration.

    coupling and cavity_linewidth are angular rates (rad/s), duration is
    in seconds.  All must be strictly positive.
    """

    coupling: float
    cavity_linewidth: float
    duration: float

    def __post_init__(self):
        for name in ("coupling", "cavity_linewidth", "duration"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def adiabatic_rate(self) -> float:
        """2 G^2 / kappa, the conversion rate after cavity elimination."""
        return 2.0 * self.coupling**2 / self.cavity_linewidth

    @property
    def pulse_area(self) -> float:
        """adiabatic_rate * duration, the dimensionless pulse exponent."""
        return self.adiabatic_rate * self.duration

    @property
    def coupling_ratio(self) -> float:
        return self.coupling / self.cavity_linewidth

    @property
    def is_weak_coupling(self) -> bool:
        """Whether G/kappa is small enough for the adiabatic picture."""
        return self.coupling_ratio <= WEAK_COUPLING_BOUND


@dataclass(frozen=True)
class SwapResult:
    """Conversion efficiency of an anti-Stokes pulse.

    phase_convention documents the deterministic -i picked up per
    transferred excitation by the beamsplitter realization.
    """

    efficiency: float
    pulse_area: float
    phase_convention: str = "-i per transferred excitation"


@dataclass(frozen=True)
class SqueezeResult:
    """Two-mode squeezing parameter of a Stokes pulse."""

    squeezing: float
    pulse_area: float


def conversion_efficiency(pulse: PulseSpec) -> SwapResult:
    """eta = 1 - exp(-2 * gscript * tau) for an anti-Stokes pulse."""
    area = pulse.pulse_area
    return SwapResult(efficiency=float(-np.expm1(-2.0 * area)), pulse_area=area)


def squeezing_parameter(pulse: PulseSpec) -> SqueezeResult:
    """r with cosh(r) = exp(gscript * tau) for a Stokes pulse."""
    area = pulse.pulse_area
    return SqueezeResult(squeezing=float(np.arccosh(np.exp(area))), pulse_area=area)


def apply_antistokes_swap(state, source_mode: int, field_mode: int,
                          efficiency: float):
    """Beamsplitter-type partial state swap with sin(theta)^2 = efficiency.

    Works on FockKet or FockDensityMatrix.  efficiency must lie in [0, 1];
    at 1 the swap is complete (up to the -i-per-excitation phase).
    """
    eta = float(efficiency)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency {eta!r} outside [0, 1]")
    theta = float(np.arcsin(np.sqrt(eta)))
    return fock.apply_two_mode_exponential(
        state, source_mode, field_mode, "beamsplitter", theta)


def apply_stokes_squeeze(state, magnon_mode: int, field_mode: int,
                         squeezing: float, *,
                         leak_tol: float = fock.DEFAULT_LEAK_TOL):
    """Two-mode squeeze of magnon and field mode by parameter r >= 0.

    Raises :class:`magnomech.fock.TruncationLeakError` when the squeezed
    state reaches the top of the truncated basis beyond ``leak_tol``.
    """
    r = float(squeezing)
    if r < 0.0 or not np.isfinite(r):
        raise ValueError(f"squeezing must be finite and >= 0, got {r!r}")
    return fock.apply_two_mode_exponential(
        state, magnon_mode, field_mode, "two_mode_squeeze", r, leak_tol=leak_tol)
