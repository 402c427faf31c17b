import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from casimir.constants import C, HBAR, K_B, PhysicalConstants
from casimir.errors import DomainError
from casimir.radiometry import (CutoffSpec, ModePoint, blackbody_energy_density,
                                mean_mode_energy, mean_photon_number,
                                spectral_mode_density, vacuum_energy_density)


def test_constants_are_codata_and_frozen():
    pc = PhysicalConstants()
    assert (pc.hbar, pc.c, pc.k_B) == (1.054571817e-34, 299792458.0, 1.380649e-23)
    with pytest.raises(Exception):
        pc.hbar = 1.0
    with pytest.raises(TypeError):
        PhysicalConstants(hbar=1.0)


def test_photon_number_at_unit_ratio():
    T = 300.0
    omega = K_B * T / HBAR
    assert mean_photon_number(omega, T) == pytest.approx(1 / (math.e - 1), rel=1e-14)
    assert mean_photon_number(ModePoint(omega, T)) == pytest.approx(0.581977, abs=5e-7)


def test_photon_number_zero_temperature():
    assert mean_photon_number(1e15, 0.0) == 0.0


def test_photon_number_classical_limit():
    T = 300.0
    omega = 0.01 * K_B * T / HBAR
    n = mean_photon_number(omega, T)
    approx = 100.0 - 0.5
    assert abs(n - approx) / approx < 0.01


def test_zero_frequency_scalar_raises_array_gives_sentinel():
    with pytest.raises(DomainError):
        mean_photon_number(0.0, 300.0)
    with pytest.raises(DomainError):
        mean_mode_energy(0.0, 300.0)
    n = mean_photon_number(np.array([0.0, 1e13]), 300.0)
    assert np.isinf(n[0]) and n[0] > 0 and np.isfinite(n[1])
    e = mean_mode_energy(np.array([0.0, 1e13]), 300.0)
    assert np.isinf(e[0])


def test_zero_frequency_zero_temperature_raises():
    with pytest.raises(DomainError):
        mean_photon_number(0.0, 0.0)


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        ModePoint(-1.0, 1.0)
    with pytest.raises(ValueError):
        mean_photon_number(-1.0, 1.0)


def test_mode_energy_limits():
    omega = 1e15
    assert mean_mode_energy(omega, 0.0) == pytest.approx(0.5 * HBAR * omega, rel=1e-15)
    assert mean_mode_energy(omega, 0.0, include_zero_point=False) == 0.0


def test_mode_energy_high_temperature():
    T = 300.0
    omega = 0.01 * K_B * T / HBAR
    kT, hw = K_B * T, HBAR * omega
    e = mean_mode_energy(omega, T)
    # With the zero point the -hw/2 term cancels; the remainder is hw^2/12kT.
    assert abs(e - kT - hw**2 / (12 * kT)) <= hw**4 / (720 * kT**3) * (1 + 1e-3) + 4 * np.spacing(kT)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e6, 1e17), st.floats(0.0, 1e4))
def test_zero_point_difference_is_half_quantum(omega, T):
    full = mean_mode_energy(omega, T)
    diff = full - mean_mode_energy(omega, T, include_zero_point=False)
    # The subtraction itself rounds at the scale of the larger operand.
    assert abs(diff - 0.5 * HBAR * omega) <= 4 * np.spacing(full)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 1e4))
def test_photon_number_positive_and_decreasing(T):
    w = np.geomspace(1e8, 1e16, 50)
    n = mean_photon_number(w, T)
    assert np.all(n >= 0)
    assert np.all(np.diff(n) <= 0)


def test_blackbody_room_temperature():
    assert blackbody_energy_density(300.0) == pytest.approx(6.13e-6, rel=1e-3)
    assert blackbody_energy_density(300.0) == pytest.approx(6.12824394399e-6, rel=1e-10)
    assert blackbody_energy_density(0.0) == 0.0


def test_blackbody_quartic():
    assert blackbody_energy_density(200.0) == pytest.approx(16 * blackbody_energy_density(100.0),
                                                            rel=1e-14)


@pytest.mark.parametrize("T", [3.0, 300.0, 5000.0])
def test_blackbody_equals_spectral_integral(T):
    scale = K_B * T / HBAR

    def spectral(y):
        w = y * scale
        return mean_mode_energy(w, T, include_zero_point=False) * spectral_mode_density(w) * scale

    val, _ = integrate.quad(spectral, 0, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    assert val == pytest.approx(blackbody_energy_density(T), rel=1e-6)


def test_vacuum_density_golden_and_scaling():
    w = 2 * math.pi * C / 1e-6
    assert vacuum_energy_density(w) == pytest.approx(0.624060370775, rel=1e-10)
    assert vacuum_energy_density(CutoffSpec(w)) == vacuum_energy_density(w)
    assert vacuum_energy_density(2 * w) == pytest.approx(16 * vacuum_energy_density(w), rel=1e-14)
    assert vacuum_energy_density(0.0) == 0.0


def test_vacuum_density_is_integral_of_half_quantum():
    wmax = 1e15
    val, _ = integrate.quad(lambda w: 0.5 * HBAR * w * spectral_mode_density(w), 0, wmax,
                            epsrel=1e-13)
    assert val == pytest.approx(vacuum_energy_density(wmax), rel=1e-10)
