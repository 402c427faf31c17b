"""Sphere-plane force in the proximity force approximation (PFA)."""

import math
from dataclasses import dataclass

from .constants import HBAR_C
from .scattering import CavityGeometry, QuadratureSpec, casimir_energy_scattering
from .thermal import ThermalSpec, casimir_free_energy_thermal

# The plane-plane energy per unit area does not depend on the area used to
# evaluate it; this one keeps the reference geometry in its validity range.
_UNIT_AREA = 1.0


@dataclass(frozen=True)
class SphereGeometry:
    R: float  # m, sphere radius
    L: float  # m, closest-approach gap

    def __post_init__(self):
        if not (self.R > 0 and self.L > 0):
            raise ValueError("radius and gap must be positive")

    @property
    def valid(self):
        """False when the sphere is not much larger than the gap."""
        return self.R >= 100.0 * self.L

    @property
    def flags(self):
        return () if self.valid else ("radius_small_vs_L",)


@dataclass(frozen=True)
class SphereForceResult:
    force: float  # N
    energy_per_area: float  # J/m^2, plane-plane at the closest gap
    err_est: float = 0.0  # relative
    flags: tuple = ()


def plane_plane_energy_per_area(m1, m2, L, th=None, q=QuadratureSpec(), method="log",
                                full_output=False):
    """Binding energy per unit area of two plates at separation ``L``, in J/m^2."""
    g = CavityGeometry(_UNIT_AREA, L)
    if th is None or th.T == 0:
        e, rel = casimir_energy_scattering(m1, m2, g, q, method=method,
                                           full_output=True)
    else:
        e, rel = casimir_free_energy_thermal(m1, m2, g, th, q, full_output=True)
    e /= _UNIT_AREA
    return (e, rel) if full_output else e


def plane_sphere_force_pfa(m1, m2, sg, th=None, q=QuadratureSpec()):
    """PFA force between a sphere and a plane, ``2 pi R e_pp(L)``.

    Parameters
    ----------
    m1, m2 : MirrorModel
        Plane and sphere materials.
    sg : SphereGeometry
    th : ThermalSpec, optional
        Temperature; ``None`` or ``T = 0`` uses the zero-temperature energy.
    q : QuadratureSpec

    Returns
    -------
    SphereForceResult
        The ``radius_small_vs_L`` flag is set when ``R < 100 L``.
    """
    if th is not None and not isinstance(th, ThermalSpec):
        raise TypeError("th must be a ThermalSpec or None")
    e_pp, rel = plane_plane_energy_per_area(m1, m2, sg.L, th, q, full_output=True)
    return SphereForceResult(2.0 * math.pi * sg.R * e_pp, e_pp, rel, sg.flags)


def ideal_plane_sphere_force(sg):
    """Perfect-mirror PFA force ``pi^3 hbar c R / (360 L^3)``."""
    return math.pi**3 * HBAR_C * sg.R / (360.0 * sg.L**3)
