"""Zero-temperature Casimir force and energy between two plane mirrors.

The force per polarization is an integral over the imaginary frequency ``xi``
and the transverse wavevector ``k`` of ``kappa r1 r2 / (exp(2 kappa L) - r1 r2)``.
With isotropic mirrors, ``d^2k = 2 pi k dk``. The integral is taken in the
variables

    x = 2 kappa L            (round-trip attenuation exponent, 0..inf)
    t = xi / (c kappa)       (0..1, cosine of the imaginary-angle of incidence)

so that ``k dk dxi = c kappa^3 dkappa dt`` and the force becomes

    F = hbar c A / (32 pi^2 L^4) * sum_p  int_0^inf dx x^3 int_0^1 dt  R e^-x / (1 - R e^-x)

with ``R = r1 r2``. Perfect mirrors give ``2 pi^4 / 15`` for the double integral,
recovering ``hbar c pi^2 A / (240 L^4)``. The outer ``x`` integral and the inner
``t`` integrals are adaptive Gauss-Kronrod rules; the inner errors are folded
into the outer estimate.

Forces and energies are reported positive for attraction and binding, the
usual convention for this effect. :attr:`ForceResult.signed_pressure` gives the
thermodynamic (negative) pressure.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import quadrature
from .constants import C, HBAR_C
from .errors import ConvergenceError, PassivityError
from .mirrors import POLARIZATIONS, Drude, Polarization, reflection_coefficients

ZETA4 = math.pi**4 / 90.0
IDEAL_FORCE_INTEGRAL = 2.0 * math.pi**4 / 15.0  # sum over two polarizations
IDEAL_ENERGY_INTEGRAL = 2.0 * math.pi**4 / 45.0

# Round-trip products this far above 1 are rounding, not gain.
_PASSIVITY_SLACK = 1e-12


@dataclass(frozen=True)
class CavityGeometry:
    A: float  # m^2
    L: float  # m

    def __post_init__(self):
        if not (self.A > 0 and self.L > 0):
            raise ValueError("area and separation must be positive")

    @property
    def valid(self):
        """False when the plates are not much wider than their separation."""
        return self.A >= 100.0 * self.L**2

    @property
    def flags(self):
        return () if self.valid else ("area_small_vs_L2",)


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-8
    max_subdivisions: int = 200
    # Break the inner frequency integral at this scale (rad/s). ``None`` picks
    # the Drude relaxation rate when there is one.
    xi_scale: Optional[float] = None
    # Upper cutoff on xi (rad/s); ``None`` integrates to infinity.
    xi_max: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        if self.xi_max is not None and not self.xi_max > 0:
            raise ValueError("xi_max must be positive")


@dataclass(frozen=True)
class ForceResult:
    force: float  # N
    pressure: float  # Pa
    eta: float
    err_est: float
    flags: tuple = field(default=())

    @property
    def signed_pressure(self):
        """Pressure with the thermodynamic sign (negative for attraction)."""
        return -self.pressure


def ideal_casimir_force(g):
    """``hbar c pi^2 A / (240 L^4)`` for perfect mirrors, in newtons."""
    return HBAR_C * math.pi**2 * g.A / (240.0 * g.L**4)


def ideal_casimir_energy(g):
    """``hbar c pi^2 A / (720 L^3)`` for perfect mirrors, in joules."""
    return HBAR_C * math.pi**2 * g.A / (720.0 * g.L**3)


def _force_prefactor(g):
    return HBAR_C * g.A / (32.0 * math.pi**2 * g.L**4)


def _energy_prefactor(g):
    return HBAR_C * g.A / (32.0 * math.pi**2 * g.L**3)


def _polarizations(polarizations):
    if polarizations is None:
        return POLARIZATIONS
    return tuple(Polarization(p) for p in polarizations)


def round_trip_products(m1, m2, xi, kappa, polarizations=None):
    """``r1 r2`` for each requested polarization, checked for passivity."""
    te1, tm1 = reflection_coefficients(m1, xi, kappa)
    te2, tm2 = reflection_coefficients(m2, xi, kappa)
    out = []
    for p in _polarizations(polarizations):
        prod = te1 * te2 if p is Polarization.TE else tm1 * tm2
        if np.any(prod > 1.0 + _PASSIVITY_SLACK):
            raise PassivityError(f"r1 r2 = {float(np.max(prod)):.6g} > 1 ({p.value})")
        out.append(np.minimum(prod, 1.0))
    return out


def _force_kernel(R, x):
    """``R e^-x / (1 - R e^-x)`` written to stay accurate as x -> 0 and R -> 1."""
    e = np.exp(-x)
    return R * e / ((1.0 - R) - R * np.expm1(-x))


def _energy_kernel(R, x):
    """``-log(1 - R e^-x)``; positive for 0 < R <= 1."""
    return -np.log1p(-R * np.exp(-x))


def _inner_scale(m1, m2, q):
    if q.xi_scale is not None:
        return q.xi_scale
    gammas = [m.gamma for m in (m1, m2) if isinstance(m, Drude) and m.gamma > 0]
    return min(gammas) if gammas else None


def _plane_integral(m1, m2, L, q, weight, kernel, polarizations):
    """Nested quadrature of ``weight(x) * sum_p int dt kernel(R_p, x)``.

    Returns ``(value, abs_error, converged)``.
    """
    pols = _polarizations(polarizations)
    inner_tol = 0.1 * q.rel_tol
    scale = _inner_scale(m1, m2, q)

    def outer(x):
        xs = x.ravel()
        n = xs.size
        with np.errstate(divide="ignore"):
            t_hi = np.ones(n) if q.xi_max is None else np.minimum(
                1.0, 2.0 * L * q.xi_max / (C * xs))
        # Optional break point where the medium response changes fastest.
        if scale is not None:
            with np.errstate(divide="ignore"):
                t_b = np.clip(2.0 * L * scale / (C * xs), 0.0, t_hi)
            a = np.concatenate([np.zeros(n), t_b])
            b = np.concatenate([t_b, t_hi])
            row_x = np.concatenate([xs, xs])
        else:
            a, b, row_x = np.zeros(n), t_hi, xs

        def inner(t, own):
            xr = row_x[own][:, None]
            kappa = xr / (2.0 * L)
            xi = C * kappa * t
            total = np.zeros_like(t)
            for R in round_trip_products(m1, m2, xi, kappa, pols):
                total += kernel(R, xr)
            return total

        res = quadrature.integrate_batch(inner, a, b, rel_tol=inner_tol,
                                         abs_tol=0.0,
                                         max_subdivisions=q.max_subdivisions)
        val, err = res.value, res.error
        if scale is not None:
            val = val[:n] + val[n:]
            err = err[:n] + err[n:]
        w = weight(xs)
        return (w * val).reshape(x.shape), (w * err).reshape(x.shape)

    res = quadrature.integrate(outer, 0.0, np.inf, rel_tol=q.rel_tol,
                               max_subdivisions=q.max_subdivisions)
    return res.value, res.error, res.converged


def casimir_force_scattering(m1, m2, g, q=QuadratureSpec(), polarizations=None):
    """Force between two plane mirrors at zero temperature.

    Parameters
    ----------
    m1, m2 : MirrorModel
        Mirror models; the result is symmetric under exchange.
    g : CavityGeometry
    q : QuadratureSpec
    polarizations : iterable of {"TE", "TM"}, optional
        Restrict the sum to some polarizations. The default sums both.

    Returns
    -------
    ForceResult
        ``eta`` is the ratio to :func:`ideal_casimir_force`, ``err_est`` the
        relative error estimate.

    Raises
    ------
    ConvergenceError
        If the tolerance is not reached; ``best`` holds the estimate.
    PassivityError
        If a round-trip product exceeds unity.
    """
    value, err, ok = _plane_integral(m1, m2, g.L, q, lambda x: x**3,
                                     _force_kernel, polarizations)
    force = _force_prefactor(g) * value
    rel_err = err / abs(value) if value != 0 else err
    result = ForceResult(force=force, pressure=force / g.A,
                         eta=value / IDEAL_FORCE_INTEGRAL, err_est=rel_err,
                         flags=g.flags)
    if not ok:
        raise ConvergenceError(
            f"force quadrature stopped at relative error {rel_err:.2e}",
            best=result, err_est=rel_err)
    return result


def _energy_from_force(m1, m2, g, q, polarizations):
    """``E(L) = int_L^inf F(L') dL'`` with ``L' = L / u``."""
    def integrand(u):
        us = u.ravel()
        vals = np.empty_like(us)
        errs = np.empty_like(us)
        for i, ui in enumerate(us):
            gi = replace(g, L=g.L / ui)
            r = casimir_force_scattering(m1, m2, gi, q, polarizations)
            jac = g.L / ui**2
            vals[i] = r.force * jac
            errs[i] = abs(r.force) * r.err_est * jac
        return vals.reshape(u.shape), errs.reshape(u.shape)

    res = quadrature.integrate(integrand, 0.0, 1.0, rel_tol=q.rel_tol,
                               max_subdivisions=q.max_subdivisions)
    return res.value, res.error, res.converged


def casimir_energy_scattering(m1, m2, g, q=QuadratureSpec(), polarizations=None,
                              method="log", full_output=False):
    """Binding energy ``int_L^inf F(L') dL'`` between two plane mirrors, in joules.

    ``method="log"`` performs the ``L'`` integral analytically inside the
    integrand, which turns ``R e^-x / (1 - R e^-x)`` into ``-log(1 - R e^-x)``.
    ``method="force_integral"`` integrates :func:`casimir_force_scattering`
    over ``u = L / L'`` numerically; it is slower and serves as a cross-check.
    With ``full_output`` the relative error estimate is returned as well.
    """
    if method == "log":
        value, err, ok = _plane_integral(m1, m2, g.L, q, lambda x: x**2,
                                         _energy_kernel, polarizations)
        energy = _energy_prefactor(g) * value
        abs_err = _energy_prefactor(g) * err
    elif method == "force_integral":
        energy, abs_err, ok = _energy_from_force(m1, m2, g, q, polarizations)
    else:
        raise ValueError(f"unknown method {method!r}")
    rel = abs_err / abs(energy) if energy else abs_err
    if not ok:
        raise ConvergenceError(f"energy quadrature stopped at relative error {rel:.2e}",
                               best=energy, err_est=rel)
    return (energy, rel) if full_output else energy


def reduction_factor(m1, m2, g, q=QuadratureSpec()):
    """Ratio of the real-mirror force to the perfect-mirror force at the same ``L``."""
    return casimir_force_scattering(m1, m2, g, q).eta


def polylog4(z, tol=1e-17):
    """``Li_4(z) = sum_n z^n / n^4`` for real ``|z| <= 1``."""
    if not abs(z) <= 1:
        raise ValueError("|z| must not exceed 1")
    if z == 1:
        return ZETA4
    if z == -1:
        return -7.0 / 8.0 * ZETA4
    total, term, n = 0.0, 1.0, 0
    while True:
        n += 1
        term *= z
        contrib = term / n**4
        total += contrib
        if abs(contrib) < tol * max(abs(total), 1e-300):
            return total


def constant_reflection_force(g, products):
    """Closed-form force when every ``r1 r2`` is a constant.

    Expanding ``R e^-x / (1 - R e^-x)`` as a geometric series gives
    ``int x^3 ... dx = 6 Li_4(R)`` per polarization, so the force is the ideal
    one scaled by ``Li_4(R) / zeta(4)`` averaged over polarizations.
    ``products`` holds one ``R`` per polarization.
    """
    products = list(products)
    scale = sum(polylog4(R) for R in products) / (2.0 * ZETA4)
    return ideal_casimir_force(g) * scale
