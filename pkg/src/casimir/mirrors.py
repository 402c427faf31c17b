"""Mirror reflection amplitudes at imaginary frequency.

Every model answers the same question: given an imaginary frequency ``xi``
(rad/s) and the evanescent wavevector ``kappa = sqrt(k^2 + xi^2/c^2)`` (1/m),
what are the TE and TM reflection amplitudes? All of them are real for real
``xi``.

Sign convention
---------------
A perfect mirror returns ``r_TE = -1`` and ``r_TM = +1``. This is the limit of
the plasma model as ``omega_p -> inf``, and for two identical mirrors it gives
``r1 * r2 = 1`` in both polarizations. Only the products ``r1 * r2`` enter the
force, so the choice of sign is otherwise unobservable.

A :class:`Scalar` mirror applies the same ``r0`` to both polarizations. Pairing
it with a :class:`Perfect` mirror therefore gives products of opposite sign in
TE and TM, which cancel.
"""

import csv
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .constants import C
from .errors import ExtrapolationError, LoadError


class Polarization(str, Enum):
    TE = "TE"
    TM = "TM"


POLARIZATIONS = (Polarization.TE, Polarization.TM)


@dataclass(frozen=True)
class Perfect:
    """Ideal mirror reflecting every frequency and incidence."""


@dataclass(frozen=True)
class Scalar:
    """Constant reflection amplitude, identical for both polarizations."""

    r0: float

    def __post_init__(self):
        if not abs(self.r0) <= 1.0:
            raise ValueError("scalar reflection amplitude must satisfy |r0| <= 1")


@dataclass(frozen=True)
class Plasma:
    """Lossless plasma model, ``eps(i xi) = 1 + omega_p^2 / xi^2``."""

    omega_p: float  # rad/s

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError("plasma frequency must be positive")

    @classmethod
    def from_wavelength(cls, lambda_p):
        return cls(plasma_frequency(lambda_p))

    @property
    def plasma_wavelength(self):
        return plasma_wavelength(self.omega_p)


@dataclass(frozen=True)
class Drude:
    """Drude model, ``eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma))``."""

    omega_p: float  # rad/s
    gamma: float  # rad/s

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError("plasma frequency must be positive")
        if not self.gamma >= 0:
            raise ValueError("relaxation rate must be non-negative")

    @property
    def plasma_wavelength(self):
        return plasma_wavelength(self.omega_p)


@dataclass(frozen=True)
class Tabulated:
    """Permittivity sampled on a grid of imaginary frequencies.

    Values between grid points are interpolated linearly in ``log eps`` versus
    ``log xi``. Queries outside the grid raise :class:`ExtrapolationError`
    unless ``extrapolate`` is set, in which case the end values are held.
    """

    xi: tuple
    epsilon: tuple
    extrapolate: bool = False

    def __post_init__(self):
        xi = tuple(float(v) for v in self.xi)
        eps = tuple(float(v) for v in self.epsilon)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "epsilon", eps)
        if len(xi) != len(eps):
            raise ValueError("xi and epsilon grids differ in length")
        if len(xi) < 2:
            raise ValueError("a permittivity table needs at least two rows")
        for i, (x, e) in enumerate(zip(xi, eps)):
            if not (math.isfinite(x) and x > 0):
                raise ValueError(f"grid point {i}: xi must be positive and finite")
            if not (math.isfinite(e) and e >= 1):
                raise ValueError(f"grid point {i}: epsilon must be >= 1")
            if i and not x > xi[i - 1]:
                raise ValueError(f"grid point {i}: xi must be strictly increasing")

    def with_extrapolation(self, flag=True):
        return Tabulated(self.xi, self.epsilon, flag)

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        lo, hi = self.xi[0], self.xi[-1]
        if not self.extrapolate and np.any((xi < lo) | (xi > hi)):
            raise ExtrapolationError(
                f"xi outside tabulated range [{lo:.3e}, {hi:.3e}] rad/s; "
                "set extrapolate=True to hold the end values")
        with np.errstate(divide="ignore"):
            log_xi = np.log(xi)
        log_eps = np.interp(log_xi, np.log(self.xi), np.log(self.epsilon))
        return np.exp(log_eps)


MirrorModel = Union[Perfect, Scalar, Plasma, Drude, Tabulated]


def plasma_wavelength(omega_p):
    """``2 pi c / omega_p`` in metres."""
    return 2.0 * math.pi * C / omega_p


def plasma_frequency(lambda_p):
    """Inverse of :func:`plasma_wavelength`."""
    return 2.0 * math.pi * C / lambda_p


GOLD_PLASMA_WAVELENGTH = 136e-9  # m
GOLD_DRUDE_GAMMA = 5.32e13  # rad/s, 0.035 eV

PRESETS = {
    "gold": Plasma.from_wavelength(GOLD_PLASMA_WAVELENGTH),
    "copper": Plasma.from_wavelength(GOLD_PLASMA_WAVELENGTH),
    "gold_drude": Drude(plasma_frequency(GOLD_PLASMA_WAVELENGTH), GOLD_DRUDE_GAMMA),
}


@dataclass(frozen=True)
class FieldModeIm:
    xi: float  # rad/s
    k: float  # 1/m
    p: Polarization

    def __post_init__(self):
        if not (self.xi >= 0 and self.k >= 0):
            raise ValueError("xi and k must be non-negative")
        object.__setattr__(self, "p", Polarization(self.p))

    @property
    def kappa(self):
        return math.hypot(self.k, self.xi / C)


def _response(model, xi):
    """Return ``(d, p, q)`` with ``d = (eps - 1) xi^2 / c^2``, ``p = 1 - 1/eps``
    and ``q = 1/eps``.

    All stay finite at ``xi = 0``, where ``1/eps`` may vanish. ``p`` and ``q``
    are computed separately so that neither suffers cancellation.
    """
    xi = np.asarray(xi, dtype=float)
    if isinstance(model, Plasma):
        wp2 = model.omega_p**2
        d = np.full_like(xi, wp2 / C**2)
        p = wp2 / (xi**2 + wp2)
        q = xi**2 / (xi**2 + wp2)
    elif isinstance(model, Drude):
        wp2 = model.omega_p**2
        g = model.gamma
        if g == 0:
            d = np.full_like(xi, wp2 / C**2)
        else:
            d = wp2 * xi / (xi + g) / C**2
        p = wp2 / (xi * (xi + g) + wp2)
        q = xi * (xi + g) / (xi * (xi + g) + wp2)
    elif isinstance(model, Tabulated):
        eps = model(xi)
        d = (eps - 1.0) * xi**2 / C**2
        p = (eps - 1.0) / eps
        q = 1.0 / eps
    else:
        raise TypeError(f"{type(model).__name__} has no permittivity")
    return d, p, q


def permittivity_im(model, xi):
    """Relative permittivity ``eps(i xi)`` on the imaginary frequency axis.

    Plasma and Drude models return ``inf`` at ``xi = 0``.
    """
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr < 0):
        raise ValueError("xi must be non-negative")
    if isinstance(model, Tabulated):
        eps = model(xi_arr)
    elif isinstance(model, Plasma):
        with np.errstate(divide="ignore"):
            eps = 1.0 + model.omega_p**2 / xi_arr**2
    elif isinstance(model, Drude):
        with np.errstate(divide="ignore"):
            eps = 1.0 + model.omega_p**2 / (xi_arr * (xi_arr + model.gamma))
    else:
        raise TypeError(f"{type(model).__name__} has no permittivity")
    return float(eps) if np.ndim(eps) == 0 else eps


def reflection_coefficients(model, xi, kappa):
    """Vectorized ``(r_TE, r_TM)`` for arrays of ``xi`` (rad/s) and ``kappa`` (1/m).

    The Fresnel amplitudes are written so that neither the high-frequency
    limit (``eps -> 1``) nor the static limit (``eps -> inf``) cancels or
    divides by zero.
    """
    xi, kappa = np.broadcast_arrays(np.asarray(xi, dtype=float),
                                    np.asarray(kappa, dtype=float))
    if isinstance(model, Perfect):
        return np.full(xi.shape, -1.0), np.full(xi.shape, 1.0)
    if isinstance(model, Scalar):
        return np.full(xi.shape, float(model.r0)), np.full(xi.shape, float(model.r0))

    d, p, inv_eps = _response(model, xi)
    kappa_m = np.sqrt(kappa**2 + d)
    s = kappa + kappa_m
    den_tm = kappa + inv_eps * kappa_m
    with np.errstate(divide="ignore", invalid="ignore"):
        # kappa - kappa_m = -d / (kappa + kappa_m)
        r_te = -d / s**2
        r_tm = (p * kappa - inv_eps * d / s) / den_tm
    # Degenerate corners (kappa = 0 with a vanishing medium response) take the
    # fixed-k limit as xi -> 0+.
    r_te = np.where(s == 0, 0.0, r_te)
    r_tm = np.where(den_tm == 0, 1.0, r_tm)
    return r_te, r_tm


def reflection_amplitude(model, mode):
    """Reflection amplitude of ``model`` for a single :class:`FieldModeIm`."""
    r_te, r_tm = reflection_coefficients(model, mode.xi, mode.kappa)
    r = r_te if mode.p is Polarization.TE else r_tm
    return float(r)


def load_tabulated_permittivity(path, extrapolate=False):
    """Read a ``xi_rad_per_s,epsilon`` CSV table into a :class:`Tabulated` model.

    Lines starting with ``#`` are comments. Errors name the offending line.
    """
    xi, eps = [], []
    header_seen = False
    prev = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not "".join(row).strip():
                continue
            if row[0].lstrip().startswith("#"):
                continue
            cells = [c.strip() for c in row]
            if not header_seen:
                if cells != ["xi_rad_per_s", "epsilon"]:
                    raise LoadError("expected header 'xi_rad_per_s,epsilon'", lineno)
                header_seen = True
                continue
            if len(cells) != 2:
                raise LoadError(f"expected 2 columns, found {len(cells)}", lineno)
            try:
                x, e = float(cells[0]), float(cells[1])
            except ValueError:
                raise LoadError(f"not a number: {row!r}", lineno) from None
            if not (math.isfinite(x) and x > 0):
                raise LoadError("xi must be positive and finite", lineno)
            if not (math.isfinite(e) and e >= 1):
                raise LoadError(f"epsilon {e} < 1", lineno)
            if prev is not None and not x > prev:
                raise LoadError("xi must be strictly increasing", lineno)
            prev = x
            xi.append(x)
            eps.append(e)
    if not header_seen:
        raise LoadError("empty permittivity file")
    if len(xi) < 2:
        raise LoadError("a permittivity table needs at least two rows")
    return Tabulated(tuple(xi), tuple(eps), extrapolate)
