"""Thermal and zero-point radiation per mode and per unit volume.

Scalar inputs raise :class:`~casimir.errors.DomainError` for the divergent
classical mode (``omega == 0`` with ``T > 0``). Array inputs are meant for bulk
sweeps and report that point as ``+inf`` instead.
"""

from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR, HBAR_C, K_B
from .errors import DomainError


@dataclass(frozen=True)
class ModePoint:
    omega: float  # rad/s
    T: float  # K

    def __post_init__(self):
        if self.omega < 0 or self.T < 0:
            raise ValueError("omega and T must be non-negative")


@dataclass(frozen=True)
class CutoffSpec:
    omega_max: float  # rad/s

    def __post_init__(self):
        if self.omega_max < 0:
            raise ValueError("omega_max must be non-negative")


def _unpack(omega, T):
    if isinstance(omega, ModePoint):
        return omega.omega, omega.T
    if T is None:
        raise TypeError("T is required unless a ModePoint is passed")
    return omega, T


def _occupancy(omega, T):
    omega = np.asarray(omega, dtype=float)
    T = np.asarray(T, dtype=float)
    if np.any(omega < 0) or np.any(T < 0):
        raise ValueError("omega and T must be non-negative")
    both_zero = (omega == 0) & (T == 0)
    if np.any(both_zero):
        raise DomainError("mode occupancy undefined for omega = 0 and T = 0")
    scalar = omega.ndim == 0 and T.ndim == 0
    if scalar and omega == 0:
        raise DomainError("classical mode occupancy diverges at omega = 0, T > 0")
    # Extended precision (where the platform has it) keeps the final result
    # within a fraction of an ulp; the high-temperature expansion of the mode
    # energy is checked at a level close to double rounding.
    omega = omega.astype(np.longdouble)
    T = T.astype(np.longdouble)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        x = np.longdouble(HBAR) * omega / (np.longdouble(K_B) * T)
        n = 1.0 / np.expm1(x)
    # T = 0 gives x = inf and n = 0 already; omega = 0 gives x = 0 and n = inf.
    return n


def mean_photon_number(omega, T=None):
    """Bose occupancy ``1 / (exp(hbar omega / k_B T) - 1)`` of one field mode.

    Returns 0 at ``T = 0``. ``omega = 0`` with ``T > 0`` raises
    :class:`DomainError` for scalars and yields ``inf`` inside arrays.
    """
    n = _occupancy(*_unpack(omega, T))
    return float(n) if np.ndim(n) == 0 else n.astype(float)


def mean_mode_energy(omega, T=None, include_zero_point=True):
    """Mean energy per mode in joules.

    Parameters
    ----------
    omega : float, array_like or ModePoint
        Angular frequency in rad/s, or a ModePoint carrying both inputs.
    T : float or array_like
        Temperature in K.
    include_zero_point : bool
        Add the vacuum contribution ``hbar omega / 2``.
    """
    omega, T = _unpack(omega, T)
    omega_arr = np.asarray(omega, dtype=float)
    n = _occupancy(omega_arr, T)
    hw = np.longdouble(HBAR) * omega_arr.astype(np.longdouble)
    with np.errstate(invalid="ignore"):
        energy = n * hw
    # Bulk sweeps keep the divergent sentinel rather than 0 * inf = nan.
    energy = np.where(np.isinf(n), np.inf, energy)
    if include_zero_point:
        energy = energy + 0.5 * hw
    energy = energy.astype(float)
    return float(energy) if energy.ndim == 0 else energy


def blackbody_energy_density(T):
    """Stefan-Boltzmann energy density ``pi^2 (k_B T)^4 / (15 (hbar c)^3)`` in J/m^3."""
    T = np.asarray(T, dtype=float)
    if np.any(T < 0):
        raise ValueError("temperature must be non-negative")
    rho = np.pi**2 * (K_B * T) ** 4 / (15.0 * HBAR_C**3)
    return float(rho) if rho.ndim == 0 else rho


def vacuum_energy_density(omega_max):
    """Zero-point energy density summed up to the cutoff ``omega_max``.

    The result is ``(hbar omega_max)^4 / (8 pi^2 (hbar c)^3)``. It grows as the
    fourth power of the cutoff and has no finite limit; it is returned only to
    contrast with the cutoff-independent Casimir pressure.
    """
    if isinstance(omega_max, CutoffSpec):
        omega_max = omega_max.omega_max
    w = np.asarray(omega_max, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega_max must be non-negative")
    rho = (HBAR * w) ** 4 / (8.0 * np.pi**2 * HBAR_C**3)
    return float(rho) if rho.ndim == 0 else rho


def spectral_mode_density(omega):
    """Number of modes per unit volume and unit angular frequency, both polarizations."""
    omega = np.asarray(omega, dtype=float)
    return omega**2 / (np.pi**2 * C**3)
