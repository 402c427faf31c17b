"""Casimir force between plane mirrors at finite temperature.

Replacing the zero-point energy ``hbar omega / 2`` by the full mean energy per
mode turns the frequency integral into a sum over the Matsubara frequencies
``xi_n = 2 pi n k_B T / hbar``, with the ``n = 0`` term weighted by one half:

    F_T = 2 k_B T A sum'_n sum_p int d^2k / (4 pi^2)  kappa_n R / (e^{2 kappa_n L} - R)

For each ``n`` the wavevector integral is done in ``x = 2 kappa L`` from
``x_n = 2 xi_n L / c`` upwards:

    F_T = k_B T A / (8 pi L^3) sum'_n sum_p int_{x_n}^inf x^2 R e^-x / (1 - R e^-x) dx

All Matsubara terms go through one batched adaptive quadrature. The sum is
truncated once ``xi_n L / c`` exceeds 30 and the remainder is bounded by its
exponential decay. The static (``n = 0``) TE term follows whatever limit each
mirror model has at ``xi -> 0``; no prescription is imposed.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import quadrature
from .constants import C, HBAR, K_B
from .errors import ConvergenceError
from .mirrors import POLARIZATIONS, Polarization
from .scattering import (ForceResult, QuadratureSpec, _energy_kernel, _force_kernel,
                         casimir_energy_scattering, casimir_force_scattering,
                         ideal_casimir_force, round_trip_products)

# Truncate the sum once xi_n L / c exceeds this value.
XI_L_OVER_C_MAX = 30.0
# Hard cap on the number of Matsubara terms.
N_MAX_CAP = 2_000_000


@dataclass(frozen=True)
class ThermalSpec:
    T: float  # K
    n_max: Optional[int] = None  # None picks the smallest n with xi_n L / c > 30
    tail_tol: float = 1e-10  # relative

    def __post_init__(self):
        if not self.T >= 0:
            raise ValueError("temperature must be non-negative")
        if self.n_max is not None and self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")


def matsubara_frequency(n, T):
    """``xi_n = 2 pi n k_B T / hbar`` in rad/s."""
    return 2.0 * math.pi * n * K_B * T / HBAR


def default_n_max(T, L):
    """Smallest ``n`` with ``xi_n L / c`` above :data:`XI_L_OVER_C_MAX`."""
    step = matsubara_frequency(1, T) * L / C
    return int(math.floor(XI_L_OVER_C_MAX / step)) + 1


def _tail_bound(n_max, dx, power):
    """Bound on ``sum_{n > n_max}`` of one polarization's term, for |R| <= 1.

    Each term is at most ``int_{x_n}^inf x^power e^-x dx / (1 - e^-x_n)``.
    The terms decrease once ``x_n > power``, so the sum is bounded by the
    integral of the term from ``x_{n_max}`` divided by the spacing ``dx``.
    """
    X = n_max * dx
    if X <= power:
        return math.inf
    if power == 2:
        poly = X**2 + 4 * X + 6  # int_X^inf (x^2 + 2x + 2) e^-x dx
    else:
        poly = X + 2  # int_X^inf (x + 1) e^-x dx
    return poly * math.exp(-X) / (-math.expm1(-X)) / dx


def _terms(m1, m2, L, T, n_max, q, power, kernel, polarizations):
    """Per-n values of ``sum_p int_{x_n}^inf x^power kernel dx`` with errors."""
    pols = POLARIZATIONS if polarizations is None else tuple(
        Polarization(p) for p in polarizations)
    n = np.arange(n_max + 1)
    xi_n = matsubara_frequency(n, T)
    x_n = 2.0 * xi_n * L / C

    def integrand(s, own):
        x = x_n[own][:, None] + s
        kappa = x / (2.0 * L)
        xi = np.broadcast_to(xi_n[own][:, None], x.shape)
        total = np.zeros_like(x)
        for R in round_trip_products(m1, m2, xi, kappa, pols):
            total += kernel(R, x)
        return x**power * total

    res = quadrature.integrate_batch(integrand, np.zeros(n.size), np.full(n.size, np.inf),
                                     rel_tol=0.1 * q.rel_tol,
                                     max_subdivisions=q.max_subdivisions)
    weights = np.ones(n.size)
    weights[0] = 0.5
    return weights * res.value, weights * res.error, res.converged, x_n[1] - x_n[0]


def matsubara_force_terms(m1, m2, g, th, q=QuadratureSpec(), polarizations=None):
    """Force contribution of each Matsubara frequency, ``n = 0 .. n_max``, in newtons.

    The ``n = 0`` entry already carries its weight of one half.
    """
    n_max = th.n_max or default_n_max(th.T, g.L)
    vals, errs, _, _ = _terms(m1, m2, g.L, th.T, n_max, q, 2, _force_kernel,
                              polarizations)
    pref = K_B * th.T * g.A / (8.0 * math.pi * g.L**3)
    return pref * vals, pref * errs


def _thermal_sum(m1, m2, g, th, q, power, kernel, polarizations, what):
    n_pol = 2 if polarizations is None else len(tuple(polarizations))
    n_max = th.n_max or default_n_max(th.T, g.L)
    while True:
        if n_max > N_MAX_CAP:
            raise ConvergenceError(f"{what}: Matsubara sum needs more than "
                                   f"{N_MAX_CAP} terms")
        vals, errs, ok, dx = _terms(m1, m2, g.L, th.T, n_max, q, power, kernel,
                                    polarizations)
        total = math.fsum(vals)  # ascending n, order-independent rounding
        quad_err = math.fsum(errs)
        tail = n_pol * _tail_bound(n_max, dx, power)
        tail_rel = tail / abs(total) if total else tail
        if tail_rel <= th.tail_tol or th.n_max is not None:
            break
        n_max *= 2
    rel_err = (quad_err + tail) / abs(total) if total else quad_err + tail
    return total, rel_err, bool(np.all(ok)), tail_rel


def casimir_force_thermal(m1, m2, g, th, q=QuadratureSpec(), polarizations=None):
    """Force between two plane mirrors in equilibrium at temperature ``th.T``.

    ``T = 0`` delegates to :func:`casimir_force_scattering`. The returned
    ``eta`` is relative to the zero-temperature perfect-mirror force and
    ``err_est`` includes the truncation bound of the Matsubara sum.

    Raises
    ------
    ConvergenceError
        If the tail of the sum exceeds ``th.tail_tol`` at a user-fixed
        ``n_max``, or a term's quadrature does not converge. ``best`` holds
        the estimate.
    """
    if th.T == 0:
        return casimir_force_scattering(m1, m2, g, q, polarizations)
    total, rel_err, ok, tail_rel = _thermal_sum(
        m1, m2, g, th, q, 2, _force_kernel, polarizations, "force")
    force = K_B * th.T * g.A / (8.0 * math.pi * g.L**3) * total
    result = ForceResult(force=force, pressure=force / g.A,
                         eta=force / ideal_casimir_force(g), err_est=rel_err,
                         flags=g.flags)
    if tail_rel > th.tail_tol:
        raise ConvergenceError(
            f"Matsubara tail {tail_rel:.2e} exceeds tail_tol {th.tail_tol:.2e}",
            best=result, err_est=rel_err)
    if not ok:
        raise ConvergenceError("a Matsubara term did not converge", best=result,
                               err_est=rel_err)
    return result


def casimir_free_energy_thermal(m1, m2, g, th, q=QuadratureSpec(), polarizations=None,
                                full_output=False):
    """Binding free energy at temperature ``th.T``, in joules.

    The finite-temperature counterpart of
    :func:`~casimir.scattering.casimir_energy_scattering`:
    ``k_B T A / (8 pi L^2) sum'_n sum_p int_{x_n}^inf -x log(1 - R e^-x) dx``.
    """
    if th.T == 0:
        return casimir_energy_scattering(m1, m2, g, q, polarizations,
                                         full_output=full_output)
    total, rel_err, ok, tail_rel = _thermal_sum(
        m1, m2, g, th, q, 1, _energy_kernel, polarizations, "free energy")
    energy = K_B * th.T * g.A / (8.0 * math.pi * g.L**2) * total
    if tail_rel > th.tail_tol or not ok:
        raise ConvergenceError("free-energy Matsubara sum did not converge",
                               best=energy, err_est=rel_err)
    return (energy, rel_err) if full_output else energy


def thermal_correction_ratio(m1, m2, g, th, q=QuadratureSpec()):
    """Relative thermal correction ``(F_T - F_0) / F_0``."""
    f_t = casimir_force_thermal(m1, m2, g, th, q).force
    f_0 = casimir_force_scattering(m1, m2, g, q).force
    return (f_t - f_0) / f_0
