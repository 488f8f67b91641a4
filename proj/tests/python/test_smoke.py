import math

import numpy as np
import pytest

import tfid


def test_density_of_lifted_identity():
    gen = np.array([[0, 0], [0, 0], [1, 0], [0, 1]], dtype=float)
    assert tfid.two_beurling_density(gen) == pytest.approx(1.0)
    assert tfid.necessary_condition_holds(gen)
    assert tfid.count_points_in_ball(gen, 1.5) == 9


def test_rank_deficient_generator_raises():
    gen = np.array([[1, 2], [2, 4], [3, 6], [4, 8]], dtype=float)
    with pytest.raises(tfid.DegenerateLattice):
        tfid.two_beurling_density(gen)
    assert issubclass(tfid.DegenerateLattice, ValueError)


def test_transforms_are_unitary():
    rng = np.random.default_rng(0)
    f = rng.normal(size=64) + 1j * rng.normal(size=64)
    g = rng.normal(size=64) + 1j * rng.normal(size=64)
    assert np.linalg.norm(tfid.dft(f)) == pytest.approx(np.linalg.norm(f), rel=1e-12)
    assert np.allclose(tfid.idft(tfid.dft(f)), f)
    assert np.allclose(tfid.dft(f), np.fft.fft(f) / 8.0)
    assert np.linalg.norm(tfid.zak(f, 8)) == pytest.approx(np.linalg.norm(f), rel=1e-12)
    energy = np.sum(np.abs(tfid.stft(f, g)) ** 2)
    assert energy == pytest.approx(64 * np.linalg.norm(f) ** 2 * np.linalg.norm(g) ** 2, rel=1e-12)
    with pytest.raises(tfid.NotADivisor):
        tfid.zak(f, 5)


def test_operator_representations():
    rng = np.random.default_rng(1)
    k = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    for rep in ("impulse", "spreading", "kn_symbol"):
        t = tfid.convert(k, rep)
        assert np.linalg.norm(t) == pytest.approx(np.linalg.norm(k), rel=1e-12)
        assert np.allclose(tfid.to_kernel(t, rep), k)
    lam = (3, -2, 5, 7)
    assert np.allclose(tfid.family_member(k, lam), tfid.family_member_factored(k, lam))
    f = rng.normal(size=16) + 0j
    assert np.allclose(tfid.apply(k, f), k @ f)


def test_riesz_and_recovery():
    q, _ = np.linalg.qr(np.random.default_rng(2).normal(size=(8, 3)) + 0j)
    lo, hi = tfid.riesz_bounds(q)
    assert lo == pytest.approx(1.0) and hi == pytest.approx(1.0)
    c = np.array([1.0, -2.0, 0.5j])
    assert np.allclose(tfid.recover_coefficients(q, q @ c), c)
    with pytest.raises(tfid.NotIdentifiable):
        tfid.recover_coefficients(np.zeros((4, 2), dtype=complex), np.ones(4, dtype=complex))


def test_box_class_is_identity():
    out = tfid.run_thm51(64, 8)
    assert out["identity_deviation"] < 1e-10
    assert out["recovery_error"] < 1e-10
    assert out["matrix"].shape == (64, 64)


def test_notident_small():
    out = tfid.run_notident(2.0, 0.25, L=64)
    assert not out["identifiable"]
    assert out["density_2"] == pytest.approx(1 / (0.25 * math.hypot(2.0, 0.25)), rel=1e-12)


def test_sweep_writes_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    out = tfid.run_density_sweep(samples=3, L=32, seed=1, out=str(path))
    assert len(out["records"]) == 3
    assert out["violations"] == 0
    lines = path.read_text().splitlines()
    assert lines[0] == tfid.CSV_HEADER
    assert len(lines) == 4
