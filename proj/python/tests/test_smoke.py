import math

import numpy as np
import pytest

import gravidec


def test_constants_and_planck_scales():
    assert gravidec.c == 299792458.0
    assert gravidec.planck_mass() == pytest.approx(
        math.sqrt(gravidec.hbar * gravidec.c / gravidec.G), rel=1e-15
    )
    assert gravidec.planck_length() == pytest.approx(1.616255e-35, rel=1e-6)


def test_moon_rates():
    r = gravidec.rates("moon")
    assert r["Gamma_gr"] == pytest.approx(9.5446540e-35, rel=1e-7)
    assert r["Lambda_gr"] == pytest.approx(7.0615014e74, rel=1e-7)
    assert r["ratio_direct"] == pytest.approx(r["ratio_dimensionless"], rel=1e-10)
    assert r["t_dec"]["planck_length"][0] == pytest.approx(5.4210e-6, rel=1e-4)


def test_overrides_and_inertial_null():
    r = gravidec.rates("moon", {"a": 0.0})
    assert r["Lambda_gr"] == 0.0
    assert math.isinf(r["t_dec"]["planck_length"][0])


def test_errors_map_to_python_exceptions():
    with pytest.raises(KeyError):
        gravidec.rates("jupiter")
    with pytest.raises(ValueError):
        gravidec.graviton_number(1e-90, 1.0)
    with pytest.raises(ValueError):
        gravidec.compton_length(-1.0)


def test_synthesized_noise_has_target_psd():
    n, dt, level = 1 << 14, 0.5, 3.0
    h = gravidec.synthesize_flat(level, 0.2, 2.0, n, dt, 7)
    assert h.dtype == np.complex128 and h.shape == (n,)
    omega, psd = gravidec.estimate_psd(h, dt, 16)
    band = (np.abs(omega) > 0.3) & (np.abs(omega) < 1.9)
    assert psd[band].mean() == pytest.approx(level, rel=0.05)
    assert np.allclose(gravidec.synthesize_flat(level, 0.2, 2.0, n, dt, 7), h)


def test_small_ensemble_runs():
    s = gravidec.simulate("moon", seed=3, ensemble=64, samples=4096)
    assert len(s["times"]) == len(s["p_var"]) > 10
    assert 0.5 < s["D_fit"] / s["D_analytic"] < 1.5


def test_cli_in_process():
    code, out, err = gravidec.run_cli(["rates", "--format", "csv"])
    assert code == 0 and out.startswith("scenario,m,")
    code, _, err = gravidec.run_cli(["rates", "--set", "bogus=1"])
    assert code == 2 and "bogus" in err


def test_crossover_root():
    m, ratio = gravidec.crossover_mass()
    assert ratio == pytest.approx(1.0, rel=1e-6)
    assert m == pytest.approx(36.6016941, rel=1e-6)
