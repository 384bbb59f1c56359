import math

import numpy as np
import pytest

from wellcascade.quantities import (
    CODATA2018,
    ev_to_joule,
    joule_to_ev,
    make_constants,
    photon_wavelength_nm,
    wavenumber,
)

# Independent recomputation from CODATA-2018 literals (the test-side oracle).
M_E = 9.1093837015e-31
HBAR = 1.054571817e-34
EV = 1.602176634e-19
H_PLANCK = 6.62607015e-34
C_LIGHT = 299_792_458.0


def test_wavenumber_zero_energy():
    assert wavenumber(0.0) == 0.0


def test_wavenumber_one_ev_matches_codata():
    expected = math.sqrt(2.0 * M_E * EV) / HBAR * 1e-10
    got = wavenumber(1.0)
    assert got == pytest.approx(expected, rel=1e-12)
    assert got == pytest.approx(0.51231, abs=1e-4)


def test_wavenumber_sqrt_scaling():
    assert wavenumber(4.0) == pytest.approx(2.0 * wavenumber(1.0), rel=1e-15)


def test_wavenumber_rejects_negative():
    with pytest.raises(ValueError):
        wavenumber(-1e-9)


def test_ev_joule_reference_points():
    assert ev_to_joule(1.445) == pytest.approx(2.3149e-19, rel=1e-4)
    assert ev_to_joule(1.460) == pytest.approx(2.3389e-19, rel=1e-4)
    assert ev_to_joule(0.0) == 0.0


def test_ev_joule_round_trip():
    for x in np.logspace(-6, 3, 40):
        assert joule_to_ev(ev_to_joule(x)) == pytest.approx(x, rel=1e-14)


def test_wavenumber_energy_recovery():
    rng = np.random.default_rng(7)
    for e in rng.uniform(1e-4, 100.0, 30):
        k = wavenumber(float(e))
        assert k * k * CODATA2018.kinetic_coefficient() == pytest.approx(e, rel=1e-12)


def test_photon_wavelength_reference():
    lam = photon_wavelength_nm(1.426676)
    # the published model quotes 869.7 nm; CODATA constants land 0.08% below
    assert lam == pytest.approx(869.7, rel=2e-3)
    assert lam == pytest.approx(869.0, abs=0.2)


def test_photon_wavelength_definition_point():
    assert photon_wavelength_nm(CODATA2018.hc_eV_nm) == pytest.approx(1.0, rel=1e-15)


def test_photon_wavelength_independent_hc():
    hc = H_PLANCK * C_LIGHT / EV * 1e9
    assert photon_wavelength_nm(1.42) == pytest.approx(hc / 1.42, rel=1e-12)


def test_photon_wavelength_rejects_nonpositive():
    with pytest.raises(ValueError):
        photon_wavelength_nm(0.0)
    with pytest.raises(ValueError):
        photon_wavelength_nm(-1.0)


def test_constants_all_positive():
    for name in (
        "hbar_eV_s",
        "hbar_J_s",
        "electron_mass_kg",
        "eV_in_J",
        "hc_eV_nm",
        "wavenumber_factor",
    ):
        assert getattr(CODATA2018, name) > 0.0


def test_constants_consistency_10_digits():
    derived = math.sqrt(2.0 * CODATA2018.electron_mass_kg * CODATA2018.eV_in_J)
    derived /= CODATA2018.hbar_J_s
    derived *= 1e-10
    assert CODATA2018.wavenumber_factor == pytest.approx(derived, rel=5e-10)
    assert CODATA2018.hbar_eV_s == pytest.approx(
        CODATA2018.hbar_J_s / CODATA2018.eV_in_J, rel=5e-10
    )


def test_make_constants_recomputes_derived_fields():
    tweaked = make_constants(electron_mass_kg=2.0 * M_E)
    assert tweaked.wavenumber_factor == pytest.approx(
        math.sqrt(2.0) * CODATA2018.wavenumber_factor, rel=1e-12
    )
    assert tweaked.hc_eV_nm == CODATA2018.hc_eV_nm


def test_make_constants_rejects_unknown_and_inconsistent():
    with pytest.raises(ValueError):
        make_constants(planck_length=1.0)
    with pytest.raises(ValueError):
        make_constants(wavenumber_factor=2.0 * CODATA2018.wavenumber_factor)


def test_non_finite_inputs_rejected():
    with pytest.raises(ValueError):
        ev_to_joule(math.inf)
    with pytest.raises(ValueError):
        joule_to_ev(math.nan)
