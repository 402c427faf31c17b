"""Radiation reaction on moving mirrors and the inertia of Casimir energy.

The linear response of the vacuum (or thermal) radiation pressure to a mirror
displacement is written ``F[Omega] = chi[Omega] q[Omega]`` with the Fourier
convention ``q(t) = int q[Omega] exp(-i Omega t) dOmega / 2 pi``, so that a
time derivative is a factor ``-i Omega``. With that convention

    chi_bbr[Omega] = i (pi^2 hbar A / 15) (k_B T / hbar c)^4 Omega   <->  F = -b q'(t)
    chi_vac[Omega] = i hbar A Omega^5 / (60 pi^2 c^4)                <->  F = -a q'''''(t)

for a perfectly reflecting plane mirror of area ``A``.

Sampled trajectories are handled with an unwindowed discrete Fourier
transform, which is exact only for periodic records. Records with a secular
drift can pass ``detrend=d``: a degree-``d`` polynomial is fitted, its force
is taken from the analytic derivative, and only the residual goes through the
transform. The least-squares fit also absorbs the projection of any
oscillation onto the polynomial, so the result is exact only when the residual
is periodic on the record. Anything else that is not periodic must be windowed by the caller.
The vacuum response weights each bin by ``Omega^5``, so rounding noise in the
samples reaches the output at a relative level of about
``eps (omega_Nyquist / Omega)^5``; heavy oversampling costs accuracy.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .constants import C, HBAR, HBAR_C, K_B
from .errors import AliasingError, RegimeWarning
from .scattering import ideal_casimir_energy, ideal_casimir_force

# Regime inequalities count as satisfied with this margin.
REGIME_MARGIN = 10.0


@dataclass(frozen=True)
class MotionalSpec:
    A: float  # m^2
    Omega: float  # rad/s
    T: float = 0.0  # K

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError("area must be positive")
        if not (self.Omega >= 0 and self.T >= 0):
            raise ValueError("Omega and T must be non-negative")

    def regime_flags(self, regime):
        """Names of the asymptotic conditions of ``regime`` that fail by the margin."""
        flags = []
        if self.A * self.Omega**2 < REGIME_MARGIN * C**2:
            flags.append("area_small_vs_wavelength")
        thermal_energy, quantum = K_B * self.T, HBAR * self.Omega
        if regime == "thermal" and thermal_energy < REGIME_MARGIN * quantum:
            flags.append("not_high_temperature")
        elif regime == "vacuum" and quantum < REGIME_MARGIN * thermal_energy:
            flags.append("not_low_temperature")
        return tuple(flags)


def _check_regime(s, regime, check):
    flags = s.regime_flags(regime)
    if check and flags:
        warnings.warn(f"{regime} susceptibility outside its regime: {', '.join(flags)}",
                      RegimeWarning, stacklevel=3)
    return flags


def thermal_damping_coefficient(A, T):
    """Friction coefficient ``(pi^2 hbar A / 15) (k_B T / hbar c)^4`` in kg/s."""
    return math.pi**2 * HBAR * A / 15.0 * (K_B * T / HBAR_C) ** 4


def vacuum_reaction_coefficient(A):
    """Coefficient ``hbar A / (60 pi^2 c^4)`` of the fifth derivative, in kg s^3."""
    return HBAR * A / (60.0 * math.pi**2 * C**4)


def chi_thermal(Omega, A, T):
    """Thermal susceptibility at any (array of) frequency, in N/m."""
    return 1j * thermal_damping_coefficient(A, T) * np.asarray(Omega, dtype=float)


def chi_vacuum(Omega, A):
    """Vacuum susceptibility at any (array of) frequency, in N/m."""
    w = np.asarray(Omega, dtype=float)
    # w * (w^2)^2 is exactly odd in w, unlike pow(w, 5)
    return 1j * vacuum_reaction_coefficient(A) * (w * (w * w) ** 2)


def thermal_motional_susceptibility(s, check_regime=True):
    """``chi_bbr[Omega]`` for a perfect mirror in black-body radiation (high T)."""
    _check_regime(s, "thermal", check_regime)
    return complex(chi_thermal(s.Omega, s.A, s.T))


def vacuum_motional_susceptibility(s, check_regime=True):
    """``chi_vac[Omega]`` for a perfect mirror in vacuum (low T)."""
    _check_regime(s, "vacuum", check_regime)
    return complex(chi_vacuum(s.Omega, s.A))


@dataclass(frozen=True)
class Monochromatic:
    """``q(t) = q0 cos(Omega t)``."""

    q0: float  # m
    Omega: float  # rad/s


@dataclass(frozen=True)
class Sampled:
    """Positions on a uniform time grid."""

    times: np.ndarray  # s
    positions: np.ndarray  # m
    detrend: Optional[int] = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        q = np.asarray(self.positions, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "positions", q)
        if t.ndim != 1 or t.shape != q.shape:
            raise ValueError("times and positions must be 1-D arrays of equal length")
        if t.size < 8:
            raise ValueError("a sampled trajectory needs at least 8 points")
        steps = np.diff(t)
        if not np.all(steps > 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValueError("sample times must be uniformly spaced and increasing")
        if self.detrend is not None and not 0 <= self.detrend < t.size:
            raise ValueError("detrend degree out of range")

    @property
    def dt(self):
        return float(self.times[1] - self.times[0])


Trajectory = Union[Monochromatic, Sampled]


def _chi(regime, s):
    if regime == "vacuum":
        return lambda w: chi_vacuum(w, s.A)
    if regime == "thermal":
        return lambda w: chi_thermal(w, s.A, s.T)
    raise ValueError(f"unknown regime {regime!r}")


def _time_domain_poly_force(poly, regime, s, t):
    if regime == "vacuum":
        return -vacuum_reaction_coefficient(s.A) * poly.deriv(5)(t)
    return -thermal_damping_coefficient(s.A, s.T) * poly.deriv(1)(t)


def radiation_reaction_force(tr, s, regime="vacuum", times=None, check_regime=True):
    """Radiation-reaction force time series in newtons.

    Parameters
    ----------
    tr : Monochromatic or Sampled
    s : MotionalSpec
        Supplies the area, temperature and nominal frequency.
    regime : {"vacuum", "thermal"}
    times : array_like, optional
        Evaluation times for a monochromatic trajectory.

    Raises
    ------
    AliasingError
        If the motion frequency exceeds the Nyquist frequency of the samples.
    """
    chi = _chi(regime, s)
    _check_regime(s, regime, check_regime)
    if isinstance(tr, Monochromatic):
        if times is None:
            raise ValueError("a monochromatic trajectory needs evaluation times")
        t = np.asarray(times, dtype=float)
        if t.size > 1:
            dt = np.min(np.diff(np.sort(t.ravel())))
            if dt > 0 and tr.Omega > math.pi / dt:
                raise AliasingError(f"Omega = {tr.Omega:.3e} rad/s exceeds the "
                                    f"Nyquist limit {math.pi / dt:.3e} rad/s")
        return np.real(chi(tr.Omega) * tr.q0 * np.exp(-1j * tr.Omega * t))

    if not isinstance(tr, Sampled):
        raise TypeError("unknown trajectory type")
    dt = tr.dt
    if s.Omega > math.pi / dt:
        raise AliasingError(f"Omega = {s.Omega:.3e} rad/s exceeds the Nyquist limit "
                            f"{math.pi / dt:.3e} rad/s")
    t, q = tr.times, tr.positions
    force = np.zeros_like(q)
    if tr.detrend is not None:
        poly = np.polynomial.Polynomial.fit(t, q, tr.detrend)
        force += _time_domain_poly_force(poly, regime, s, t)
        q = q - poly(t)

    n = q.size
    spectrum = np.fft.rfft(q)
    omega = 2.0 * np.pi * np.fft.rfftfreq(n, dt)
    # numpy's forward transform uses exp(-i w t), i.e. the opposite sign of the
    # physics convention above, so its bin at +w carries q[-w].
    response = chi(-omega)
    if n % 2 == 0:
        # An odd response has no real-valued representation at Nyquist.
        response[-1] = 0.0
    force += np.fft.irfft(response * spectrum, n=n)
    return force


@dataclass(frozen=True)
class InertiaResult:
    mu: float  # kg
    e_cas: float  # J
    f_cas_L: float  # J


def casimir_inertia_correction(g):
    """Mass correction ``(E_Cas - F_Cas L) / c^2`` of a perfect-mirror cavity.

    ``E_Cas`` and ``F_Cas`` are the positive closed-form magnitudes, so the
    result is ``-hbar pi^2 A / (360 c L^3)``: negative, reported as is.
    """
    e_cas = ideal_casimir_energy(g)
    f_l = ideal_casimir_force(g) * g.L
    return InertiaResult(mu=(e_cas - f_l) / C**2, e_cas=e_cas, f_cas_L=f_l)
