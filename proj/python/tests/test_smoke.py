import math

import numpy as np
import pytest

import bifbm


def test_bifbm_kernel_values():
    k = bifbm.Kernel.bifbm(2.0, 0.25)
    assert k(1.0, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert k(1.0, 2.0) == pytest.approx(2 ** -0.25 * (17 ** 0.25 - 1), rel=1e-14)
    assert k(1.0, 2.0) == k(2.0, 1.0)
    assert "bifbm" in repr(k)


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError):
        bifbm.Kernel.bifbm(-1.0, 0.5)
    with pytest.raises(bifbm.GridError):
        bifbm.TimeGrid([2.0, 1.0])


def test_gram_and_psd_check():
    grid = bifbm.TimeGrid.geometric(2 ** -6, 2 ** 6, 24)
    g = bifbm.gram(bifbm.Kernel.bifbm(2.0, 0.25), grid)
    assert g.shape == (24, 24)
    assert np.array_equal(g, g.T)
    report = bifbm.psd_check(bifbm.Kernel.bifbm(2.0, 0.25), grid)
    assert report["verdict"] == "PSD"
    bad = bifbm.psd_check(bifbm.Kernel.q_gamma(1.5), [1.0, 2.0])
    assert bad["verdict"] == "NotPSD"
    assert bad["min_eigenvalue"] == pytest.approx(-0.13003, abs=1e-5)


def test_cholesky_not_psd_carries_eigenvalue():
    g = bifbm.gram(bifbm.Kernel.q_gamma(1.5), [1.0, 2.0])
    with pytest.raises(bifbm.NotPsdError) as info:
        bifbm.cholesky(g)
    assert info.value.min_eigenvalue == pytest.approx(-0.13003, abs=1e-5)
    lower, jitter = bifbm.cholesky(bifbm.gram(bifbm.Kernel.min(), [1.0, 2.0, 3.0]))
    assert jitter == 0.0
    assert np.allclose(lower, np.tril(np.ones((3, 3))))


def test_sampling_is_deterministic_and_matches_covariance():
    grid = bifbm.TimeGrid.geometric(0.25, 4.0, 8)
    a = bifbm.sample("bifbm-sum", grid, 20000, seed=7, H=2.0, K=0.25, threads=1)
    b = bifbm.sample("bifbm-sum", grid, 20000, seed=7, H=2.0, K=0.25, threads=4)
    assert np.array_equal(a, b)
    cov, se = bifbm.empirical_covariance(a)
    target = bifbm.gram(bifbm.Kernel.bifbm(2.0, 0.25), grid)
    assert np.all(np.abs(cov - target) <= 5 * se + 1e-15)


def test_analyses():
    assert bifbm.find_negative_a(1.5) == 0.5
    assert bifbm.f_counterexample(1.5, 0.01) == pytest.approx(-0.0130374, abs=1e-7)
    q = bifbm.quasihelix_report(2.0, 0.25, bifbm.TimeGrid.parse("geom:0.015625:64:24"))
    assert q["pass"]
    assert bifbm.oracle_report(0.5, bifbm.TimeGrid.geometric(0.25, 4.0, 8))["pass"]
    assert bifbm.classify_params(2.0, 0.25)[0] == "TheoremRegion"
    est = bifbm.critical_k(1.5, resolution=0.01)
    assert est["status"] == "bracketed"
    assert math.isclose(bifbm.lamperti_cov(2.0, 0.25, 0.0, 0.0), 1.0, abs_tol=1e-15)
