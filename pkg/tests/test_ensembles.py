"""Seeded matrix ensembles: validation, determinism, construction properties."""

import numpy as np
import pytest

from aluthgelab import (
    EnsembleSpec,
    InvalidSpecError,
    RNG_IDENTIFIER,
    aluthge_transform,
    eigenvalues,
    normality_defect,
    operator_norm,
    sample_matrix,
    spectrum_report,
    trial_seed,
)


def test_rng_identifier():
    assert RNG_IDENTIFIER == "philox4x64"


def test_trial_seed_counter():
    assert trial_seed(100, 0) == 100
    assert trial_seed(100, 7) == 107


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="sparse", dim=4, seed=0)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="normal", dim=0, seed=0)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="hyperbolic", dim=4, seed=0)  # gap required
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="hyperbolic", dim=4, seed=0, gap=-0.1)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="shift", dim=4, seed=0)  # weights required
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="shift", dim=4, seed=0, weights=(1.0, 2.0))  # needs dim-1
    with pytest.raises(InvalidSpecError):
        EnsembleSpec(kind="invertible", dim=4, seed=0, cond_cap=0.5)


def test_spec_json_embeds_parameters():
    spec = EnsembleSpec(kind="hyperbolic", dim=3, seed=42, gap=0.2, cond_cap=1e4)
    obj = spec.to_json()
    assert obj["kind"] == "hyperbolic"
    assert obj["dim"] == 3
    assert obj["seed"] == 42
    assert obj["gap"] == 0.2


@pytest.mark.parametrize(
    "spec",
    [
        EnsembleSpec(kind="invertible", dim=5, seed=3),
        EnsembleSpec(kind="normal", dim=4, seed=3),
        EnsembleSpec(kind="unitary", dim=6, seed=3),
        EnsembleSpec(kind="hyperbolic", dim=4, seed=3, gap=0.2),
        EnsembleSpec(kind="shift", dim=5, seed=3, weights=(1.0, 0.5, 2.0, 1.5)),
    ],
)
def test_sampling_deterministic(spec):
    A = sample_matrix(spec)
    B = sample_matrix(spec)
    np.testing.assert_array_equal(A, B)


def test_normal_samples_are_normal():
    for seed in range(5):
        T = sample_matrix(EnsembleSpec(kind="normal", dim=4, seed=seed))
        assert normality_defect(T) <= 1e-10


def test_unitary_samples_are_unitary():
    for seed in range(5):
        U = sample_matrix(EnsembleSpec(kind="unitary", dim=5, seed=seed))
        assert operator_norm(U.conj().T @ U - np.eye(5)) <= 1e-12
        assert not spectrum_report(U).hyperbolic


def test_hyperbolic_samples_respect_gap():
    for seed in range(8):
        spec = EnsembleSpec(kind="hyperbolic", dim=5, seed=seed, gap=0.2, cond_cap=1e4)
        T = sample_matrix(spec)
        moduli = np.abs(eigenvalues(T))
        assert np.all((moduli <= 0.8 + 1e-9) | (moduli >= 1.2 - 1e-9))
        assert spectrum_report(T).hyperbolic


def test_invertible_samples_clear_condition_cap():
    for seed in range(5):
        spec = EnsembleSpec(kind="invertible", dim=6, seed=seed, cond_cap=1e4)
        T = sample_matrix(spec)
        s = np.linalg.svd(T, compute_uv=False)
        assert s[-1] > 6 * np.finfo(float).eps * s[0]
        assert s[0] / s[-1] <= 1e4


def test_shift_sample_structure():
    weights = (1.0, 1.0, 1.0, 1.0)
    T = sample_matrix(EnsembleSpec(kind="shift", dim=5, seed=0, weights=weights))
    np.testing.assert_allclose(np.diag(T, -1), weights, atol=0.0)
    assert np.count_nonzero(T) == 4
    # strictly lower triangular: nilpotent with spectrum {0}
    assert np.max(np.abs(eigenvalues(T))) <= 1e-10
    assert np.max(np.abs(np.linalg.matrix_power(T, 5))) == 0.0


@pytest.mark.parametrize("lam", [0.25, 0.5, 0.9])
def test_shift_transform_keeps_zero_spectrum(lam):
    # non-invertible, non-diagonalizable edge case of spectral invariance
    T = sample_matrix(
        EnsembleSpec(kind="shift", dim=5, seed=1, weights=(0.5, 2.0, 1.0, 1.5))
    )
    D = aluthge_transform(T, lam)
    assert np.max(np.abs(eigenvalues(D))) <= 1e-8
