import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qframes import frames as fr
from qframes import qlinalg as ql
from qframes.errors import InvalidNoiseSpec
from qframes.simulation import NoiseSpec, simulate, standard_normals, transmit


def test_sigma_zero_is_exact(rng):
    frame = fr.Frame(rng.normal(size=(6, 3, 4)))
    f = rng.normal(size=(3, 4))
    rep = simulate(frame, f, NoiseSpec(sigma=0.0, seed=3, trials=4))
    assert rep.max_error <= 1e-9 * (1 + ql.vnorm(f))
    assert rep.mean_noise_l2sq == 0.0


def test_baseline_error_is_noise_norm(rng):
    frame = fr.Frame(rng.normal(size=(5, 3, 4)))
    rep = simulate(frame, rng.normal(size=(3, 4)), NoiseSpec(sigma=0.3, seed=11, trials=20))
    for t in rep.trials:
        assert t.baseline_error ** 2 == pytest.approx(t.baseline_noise_l2sq, rel=1e-9)


def test_null_space_noise_cancels():
    frame = fr.Frame.from_rows([[1, 0], [0, 1], [1, 0]])
    f = ql.basis_vector(2, 0)
    coeffs, _ = fr.frame_decomposition(frame, f)
    t = np.array([0.3, -1.2, 0.5, 2.0])
    noise = np.stack([t, np.zeros(4), -t])
    f_hat, c = transmit(frame, coeffs, noise)
    assert ql.vnorm(f_hat - f) == 0.0
    assert ql.vnorm(c) > 1


def test_projected_noise_frame_vs_onb(rng):
    frame = fr.Frame(rng.normal(size=(7, 3, 4)))
    onb = fr.Frame(ql.gram_schmidt(frame.vectors))
    f = rng.normal(size=(3, 4))
    coeffs, _ = fr.frame_decomposition(frame, f)
    noise = fr.project_to_null_space(frame, rng.normal(size=(7, 4)))
    f_hat, _ = transmit(frame, coeffs, noise)
    assert ql.vnorm(f_hat - f) <= 1e-9
    g_hat, cb = transmit(onb, fr.analysis(onb, f), noise[:3])
    assert ql.vnorm(g_hat - f) == pytest.approx(ql.vnorm(cb), rel=1e-9)


def test_reconstruction_identity(rng):
    frame = fr.Frame(rng.normal(size=(5, 2, 4)))
    f = rng.normal(size=(2, 4))
    coeffs, _ = fr.frame_decomposition(frame, f)
    noise = rng.normal(size=(5, 4))
    f_hat, c = transmit(frame, coeffs, noise, erasures=(1, 3))
    np.testing.assert_allclose(f_hat, f + fr.synthesis(frame, c), atol=1e-9)
    np.testing.assert_array_equal(c[[1, 3]], -coeffs[[1, 3]])


def test_erasure_error_grows(rng):
    frame = fr.Frame(rng.normal(size=(6, 2, 4)))
    f = rng.normal(size=(2, 4))
    rep = simulate(frame, f, NoiseSpec(sigma=0.0, seed=0, trials=1, erasures=(0,)))
    assert rep.max_error > 0


def test_determinism_across_workers(rng):
    frame = fr.Frame(rng.normal(size=(6, 3, 4)))
    f = rng.normal(size=(3, 4))
    spec = NoiseSpec(sigma=0.5, seed=2 ** 64 - 1, trials=16, erasures=(4, 2))
    a = simulate(frame, f, spec)
    assert a == simulate(frame, f, spec)
    assert a == simulate(frame, f, spec, workers=4)
    assert a.erasures == (2, 4)


def test_standard_normals_keying():
    a = standard_normals(5, 3, 10)
    np.testing.assert_array_equal(standard_normals(5, 3, 4), a[:4])
    assert not np.array_equal(standard_normals(5, 4, 10), a)
    assert not np.array_equal(standard_normals(6, 3, 10), a)


def test_standard_normals_distribution():
    z = np.concatenate([standard_normals(42, t, 500).ravel() for t in range(20)])
    assert abs(z.mean()) < 0.03
    assert z.std() == pytest.approx(1.0, abs=0.03)


@given(st.integers(0, 2 ** 64 - 1), st.integers(0, 1000))
def test_standard_normals_finite(seed, trial):
    assert np.all(np.isfinite(standard_normals(seed, trial, 3)))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sigma": -0.1, "seed": 0, "trials": 1},
        {"sigma": float("nan"), "seed": 0, "trials": 1},
        {"sigma": 0.1, "seed": -1, "trials": 1},
        {"sigma": 0.1, "seed": 2 ** 64, "trials": 1},
        {"sigma": 0.1, "seed": 0, "trials": 0},
        {"sigma": 0.1, "seed": 0, "trials": 1, "erasures": (1, 1)},
        {"sigma": 0.1, "seed": 0, "trials": 1, "erasures": (-1,)},
    ],
)
def test_invalid_noise_spec(kwargs):
    with pytest.raises(InvalidNoiseSpec):
        NoiseSpec(**kwargs)


def test_erasure_out_of_range():
    frame = fr.standard_basis(2)
    with pytest.raises(InvalidNoiseSpec):
        simulate(frame, ql.basis_vector(2, 0), NoiseSpec(0.1, 0, 1, erasures=(2,)))
