import math

import pytest

from casimir.constants import HBAR_C
from casimir.geometry import (SphereGeometry, ideal_plane_sphere_force,
                              plane_plane_energy_per_area, plane_sphere_force_pfa)
from casimir.mirrors import PRESETS, Perfect
from casimir.scattering import CavityGeometry, casimir_force_scattering
from casimir.thermal import ThermalSpec

P = Perfect()
GOLD = PRESETS["gold"]


def test_perfect_closed_form():
    sg = SphereGeometry(100e-6, 1e-6)
    expect = 2 * math.pi * sg.R * HBAR_C * math.pi**2 / (720 * sg.L**3)
    assert ideal_plane_sphere_force(sg) == pytest.approx(expect, rel=1e-14)
    assert ideal_plane_sphere_force(sg) == pytest.approx(2.72297705031e-13, rel=1e-10)
    r = plane_sphere_force_pfa(P, P, sg)
    assert r.force == pytest.approx(expect, rel=1e-9)
    assert r.flags == ()


def test_linear_in_radius_and_cubic_in_gap():
    f1 = plane_sphere_force_pfa(GOLD, GOLD, SphereGeometry(50e-6, 5e-7)).force
    f2 = plane_sphere_force_pfa(GOLD, GOLD, SphereGeometry(100e-6, 5e-7)).force
    assert f2 == pytest.approx(2 * f1, rel=1e-14)
    p1 = plane_sphere_force_pfa(P, P, SphereGeometry(100e-6, 1e-6)).force
    p2 = plane_sphere_force_pfa(P, P, SphereGeometry(100e-6, 2e-6)).force
    assert p2 / p1 == pytest.approx(1 / 8, rel=1e-9)


def test_validity_flag():
    r = plane_sphere_force_pfa(P, P, SphereGeometry(50e-6, 1e-6))
    assert r.flags == ("radius_small_vs_L",)
    with pytest.raises(ValueError):
        SphereGeometry(-1.0, 1e-6)


@pytest.mark.parametrize("m", [P, GOLD])
def test_energy_derivative_is_pressure(m):
    L, h = 1e-6, 1e-9

    def e(x):
        return plane_plane_energy_per_area(m, m, x)

    # five-point stencil, truncation O(h^4)
    dedl = (e(L - 2 * h) - 8 * e(L - h) + 8 * e(L + h) - e(L + 2 * h)) / (12 * h)
    pressure = casimir_force_scattering(m, m, CavityGeometry(1.0, L)).force
    assert -dedl == pytest.approx(pressure, rel=1e-3)
    assert -dedl == pytest.approx(pressure, rel=1e-6)


def test_force_integration_form_agrees():
    m, L = GOLD, 5e-7
    e_log = plane_plane_energy_per_area(m, m, L)
    e_int = plane_plane_energy_per_area(m, m, L, method="force_integral")
    assert e_int == pytest.approx(e_log, rel=1e-6)


def test_reduction_factor_equals_energy_reduction():
    sg = SphereGeometry(100e-6, 5e-7)
    ratio = plane_sphere_force_pfa(GOLD, GOLD, sg).force / ideal_plane_sphere_force(sg)
    e_ratio = plane_plane_energy_per_area(GOLD, GOLD, sg.L) / plane_plane_energy_per_area(P, P, sg.L)
    assert ratio == pytest.approx(e_ratio, rel=1e-12)


def test_thermal_sphere():
    sg = SphereGeometry(100e-6, 2e-6)
    f0 = plane_sphere_force_pfa(P, P, sg).force
    ft = plane_sphere_force_pfa(P, P, sg, ThermalSpec(300.0)).force
    assert ft > f0
    assert plane_sphere_force_pfa(P, P, sg, ThermalSpec(0.0)).force == f0
    with pytest.raises(TypeError):
        plane_sphere_force_pfa(P, P, sg, 300.0)
