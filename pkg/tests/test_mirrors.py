import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir.constants import C
from casimir.errors import ExtrapolationError, LoadError
from casimir.mirrors import (PRESETS, Drude, FieldModeIm, Perfect, Plasma, Polarization,
                             Scalar, Tabulated, load_tabulated_permittivity,
                             permittivity_im, plasma_frequency, plasma_wavelength,
                             reflection_amplitude, reflection_coefficients)

WP = PRESETS["gold"].omega_p


def fresnel_direct(eps, xi, kappa):
    """Textbook form, fine away from the eps -> 1 and eps -> inf corners."""
    km = np.sqrt(kappa**2 + (eps - 1) * xi**2 / C**2)
    return (kappa - km) / (kappa + km), (eps * kappa - km) / (eps * kappa + km)


def test_permittivity_examples():
    assert permittivity_im(Plasma(WP), WP) == pytest.approx(2.0, rel=1e-15)
    assert permittivity_im(Plasma(WP), 10 * WP) == pytest.approx(1.01, rel=1e-15)
    xi = np.geomspace(1e10, 1e18, 30)
    np.testing.assert_allclose(permittivity_im(Drude(WP, 0.0), xi),
                               permittivity_im(Plasma(WP), xi), rtol=1e-15)
    assert math.isinf(permittivity_im(Plasma(WP), 0.0))


def test_gold_preset_wavelength():
    assert PRESETS["gold"].plasma_wavelength == pytest.approx(136e-9, rel=1e-14)
    assert plasma_wavelength(plasma_frequency(2e-7)) == pytest.approx(2e-7, rel=1e-15)
    assert set(PRESETS) >= {"gold", "copper"}


def test_perfect_and_scalar():
    mode = FieldModeIm(1e15, 1e6, "TE")
    assert reflection_amplitude(Perfect(), mode) == -1.0
    assert reflection_amplitude(Perfect(), FieldModeIm(1e15, 1e6, Polarization.TM)) == 1.0
    for p in Polarization:
        r = reflection_amplitude(Perfect(), FieldModeIm(3e14, 2e6, p))
        assert r * r == 1.0
    assert reflection_amplitude(Scalar(0.3), mode) == 0.3
    with pytest.raises(ValueError):
        Scalar(1.5)


def test_plasma_transparent_at_high_frequency():
    mode_k0 = FieldModeIm(100 * WP, 0.0, "TE")
    for p in Polarization:
        r = reflection_amplitude(Plasma(WP), FieldModeIm(100 * WP, 0.0, p))
        assert abs(r) <= 2.6e-5
    assert abs(reflection_amplitude(Plasma(WP), mode_k0)) == pytest.approx(2.5e-5, rel=1e-3)


_GRID = np.geomspace(1e12, 1e20, 40)


@pytest.mark.parametrize("model", [Plasma(WP), Drude(WP, 5e13),
                                   Tabulated(tuple(_GRID), tuple(1 + WP**2 / _GRID**2))])
def test_transparency_invariant(model):
    for p in Polarization:
        r = reflection_amplitude(model, FieldModeIm(1e3 * WP, 0.0, p))
        assert abs(r) < 1e-3


def test_te_vanishes_at_large_k():
    xi = 1e14
    r_te, _ = reflection_coefficients(Plasma(WP), xi, np.array([1e9, 1e11, 1e13]))
    assert abs(r_te[-1]) < 1e-6
    assert np.all(np.diff(np.abs(r_te)) < 0)


def test_stable_form_matches_textbook():
    xi = np.geomspace(1e12, 1e17, 40)[:, None]
    kappa = np.geomspace(1e4, 1e9, 30)[None, :] + xi / C
    for model in (Plasma(WP), Drude(WP, 5e13)):
        eps = permittivity_im(model, xi)
        te, tm = reflection_coefficients(model, xi, kappa)
        te0, tm0 = fresnel_direct(eps, xi, kappa)
        np.testing.assert_allclose(te, te0, rtol=1e-9, atol=1e-14)
        np.testing.assert_allclose(tm, tm0, rtol=1e-9, atol=1e-14)


def test_static_limits():
    k = np.array([1e5, 1e6, 1e7])
    te, tm = reflection_coefficients(Plasma(WP), 0.0, k)
    np.testing.assert_array_equal(tm, 1.0)
    # TE limit at xi -> 0+ for fixed k
    km = np.sqrt(k**2 + WP**2 / C**2)
    np.testing.assert_allclose(te, (k - km) / (k + km), rtol=1e-12)
    te_d, tm_d = reflection_coefficients(Drude(WP, 5e13), 0.0, k)
    np.testing.assert_array_equal(te_d, 0.0)
    np.testing.assert_array_equal(tm_d, 1.0)
    # degenerate corner xi = 0, kappa = 0
    te0, tm0 = reflection_coefficients(Drude(WP, 5e13), 0.0, 0.0)
    assert float(te0) == 0.0 and float(tm0) == 1.0


mirror_models = st.one_of(
    st.builds(Plasma, st.floats(1e13, 1e18)),
    st.builds(Drude, st.floats(1e13, 1e18), st.floats(0.0, 1e15)),
    st.builds(Scalar, st.floats(-1.0, 1.0)),
    st.just(Perfect()),
)


@settings(max_examples=300, deadline=None)
@given(mirror_models, st.floats(0.0, 1e19), st.floats(0.0, 1e10),
       st.sampled_from(list(Polarization)))
def test_passivity(model, xi, k, p):
    r = reflection_amplitude(model, FieldModeIm(xi, k, p))
    assert abs(r) <= 1.0 + 1e-15


@settings(max_examples=200, deadline=None)
@given(st.one_of(st.builds(Plasma, st.floats(1e13, 1e18)),
                 st.builds(Drude, st.floats(1e13, 1e18), st.floats(0.0, 1e15))),
       st.floats(1e8, 1e19))
def test_normal_incidence_te_tm_agree(model, xi):
    te, tm = reflection_coefficients(model, xi, xi / C)
    assert abs(te) == pytest.approx(abs(tm), rel=1e-12, abs=1e-300)


def test_drude_to_plasma():
    # gamma / xi sets the size of the difference; sample the band that
    # dominates micron-scale forces and above
    xi = np.geomspace(1e-2 * WP, 1e2 * WP, 25)[:, None]
    kappa = xi / C + np.geomspace(1e4, 1e8, 20)[None, :]
    te_p, tm_p = reflection_coefficients(Plasma(WP), xi, kappa)
    te_d, tm_d = reflection_coefficients(Drude(WP, 1e-8 * WP), xi, kappa)
    np.testing.assert_allclose(te_d, te_p, rtol=1e-6)
    np.testing.assert_allclose(tm_d, tm_p, rtol=1e-6)


def test_tabulated_interpolation_and_extrapolation():
    tab = Tabulated((1e14, 1e16), (100.0, 1.5))
    xi = np.geomspace(1e14, 1e16, 50)
    eps = tab(xi)
    assert eps[0] == pytest.approx(100.0) and eps[-1] == pytest.approx(1.5)
    assert np.all(np.diff(eps) < 0)
    # log-log linear: midpoint in log xi is the geometric mean
    assert tab(1e15) == pytest.approx(math.sqrt(150.0), rel=1e-12)
    with pytest.raises(ExtrapolationError):
        tab(1e17)
    assert tab.with_extrapolation()(1e17) == pytest.approx(1.5)
    assert tab.with_extrapolation()(1e12) == pytest.approx(100.0)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        Tabulated((1e14,), (2.0,))
    with pytest.raises(ValueError):
        Tabulated((1e16, 1e14), (2.0, 3.0))
    with pytest.raises(ValueError):
        Tabulated((1e14, 1e16), (0.5, 3.0))


def test_load_table(tmp_path):
    p = tmp_path / "eps.csv"
    p.write_text("# gold-like\nxi_rad_per_s,epsilon\n1e14,100\n1e16,1.5\n")
    tab = load_tabulated_permittivity(p)
    assert tab.xi == (1e14, 1e16)
    assert tab(1e15) == pytest.approx(math.sqrt(150.0))
    assert not tab.extrapolate
    assert load_tabulated_permittivity(p, extrapolate=True).extrapolate


@pytest.mark.parametrize("text, row", [
    ("", None),
    ("xi_rad_per_s,epsilon\n1e16,2\n1e14,3\n", 3),
    ("xi_rad_per_s,epsilon\n1e14,abc\n", 2),
    ("xi_rad_per_s,epsilon\n1e14,0.5\n1e15,2\n", 2),
    ("xi,eps\n1e14,2\n", 1),
    ("xi_rad_per_s,epsilon\n1e14,2\n", None),
])
def test_load_errors(tmp_path, text, row):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(LoadError) as info:
        load_tabulated_permittivity(p)
    assert info.value.row == row
