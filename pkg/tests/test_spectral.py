"""Spectrum reports, multiset matching, and both quasi-hyperbolicity routes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aluthgelab import (
    EnsembleSpec,
    SearchBudget,
    SizeMismatchError,
    aluthge_transform,
    is_quasi_hyperbolic_spectral,
    multiset_match,
    quasi_hyperbolic_definitional,
    sample_matrix,
    spectrum_report,
)

ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])

# margins of the displayed inequality on diag(2, 1/2), minimized over the
# unit sphere by hand: the minimizer concentrates weight on the slow
# direction, giving 1 - 2 sqrt(8/17) at n = 1 and 1 - 2 sqrt(32/257) at n = 2
MARGIN_N1 = 1.0 - 2.0 * np.sqrt(8.0 / 17.0)
MARGIN_N2 = 1.0 - 2.0 * np.sqrt(32.0 / 257.0)


def test_report_diagonal_oracle():
    rep = spectrum_report(np.diag([2.0, 0.5]))
    assert rep.spectral_radius == pytest.approx(2.0, abs=1e-12)
    assert rep.circle_distance == pytest.approx(0.5, abs=1e-12)
    assert rep.hyperbolic


def test_report_rotation_on_circle():
    rep = spectrum_report(ROTATION)
    assert rep.circle_distance == pytest.approx(0.0, abs=1e-12)
    assert not rep.hyperbolic
    assert multiset_match(rep.eigenvalues, [1j, -1j], 1e-12).matched


@pytest.mark.parametrize("seed,lam", [(0, 0.1), (1, 0.25), (2, 0.5), (3, 0.75), (4, 0.9)])
def test_report_matches_transform_report(seed, lam):
    rng = np.random.default_rng(seed)
    T = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    rep_t = spectrum_report(T)
    rep_d = spectrum_report(aluthge_transform(T, lam))
    tol = 1e-7 * (1 + rep_t.spectral_radius)
    assert multiset_match(rep_t.eigenvalues, rep_d.eigenvalues, tol).matched
    assert abs(rep_t.circle_distance - rep_d.circle_distance) <= tol


def test_report_json_fields():
    obj = spectrum_report(np.diag([2.0, 0.5])).to_json()
    assert set(obj) == {"eigenvalues", "spectral_radius", "circle_distance", "hyperbolic"}
    assert obj["hyperbolic"] is True
    assert sorted(pair[0] for pair in obj["eigenvalues"]) == [0.5, 2.0]


def test_multiset_permutation():
    result = multiset_match([2.0, 0.5], [0.5, 2.0], 1e-9)
    assert result.matched
    assert result.max_distance == 0.0


def test_multiset_within_tolerance():
    assert multiset_match([2.0], [2.0 + 1e-12], 1e-9).matched


def test_multiset_conjugate_mismatch():
    result = multiset_match([1.0, 1j], [1.0, -1j], 1e-3)
    assert not result.matched
    assert result.max_distance == pytest.approx(2.0, abs=1e-12)


def test_multiset_size_mismatch():
    with pytest.raises(SizeMismatchError):
        multiset_match([1.0], [1.0, 2.0], 1e-9)


def test_multiset_prefers_optimal_pairing():
    # sorted-by-modulus pairing would cross these; assignment must not
    a = [1.0, 1.0 + 1e-12j]
    b = [1.0 + 1e-12j, 1.0]
    result = multiset_match(a, b, 1e-9)
    assert result.matched


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    size=st.integers(min_value=1, max_value=8),
)
def test_multiset_symmetric_and_reflexive(seed, size):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    b = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    ab = multiset_match(a, b, 0.5)
    ba = multiset_match(b, a, 0.5)
    assert ab.matched == ba.matched
    assert ab.max_distance == pytest.approx(ba.max_distance, abs=1e-12)
    assert multiset_match(a, a, 0.0).matched


def test_spectral_verdict_diagonal():
    v = is_quasi_hyperbolic_spectral(np.diag([2.0, 0.5]))
    assert v.verdict and v.method == "spectral"
    assert v.margin == pytest.approx(0.5, abs=1e-12)


def test_spectral_verdict_unitary_false():
    v = is_quasi_hyperbolic_spectral(ROTATION)
    assert not v.verdict


@pytest.mark.parametrize("lam", [0.1, 0.25, 0.5, 0.75, 0.9])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_spectral_verdict_preserved_by_transform(seed, lam):
    spec = EnsembleSpec(kind="hyperbolic", dim=4, seed=seed, gap=0.2, cond_cap=1e4)
    T = sample_matrix(spec)
    v_t = is_quasi_hyperbolic_spectral(T)
    v_d = is_quasi_hyperbolic_spectral(aluthge_transform(T, lam))
    assert v_t.verdict == v_d.verdict


def test_definitional_diagonal_falsified_at_one():
    T = np.diag([2.0, 0.5])
    verdict = quasi_hyperbolic_definitional(T, n_max=1, seed=0)
    assert not verdict.verdict
    # the found margin cannot beat the global minimum and must be a clear
    # violation; the search may stop early once the verdict is settled
    assert MARGIN_N1 - 1e-6 <= verdict.margin <= -0.35
    x = verdict.witness
    # recompute the inequality at the witness: it must be violated
    value = max(np.linalg.norm(T @ T @ x), np.linalg.norm(x)) - 2 * np.linalg.norm(T @ x)
    assert value == pytest.approx(verdict.margin, abs=1e-9)
    assert value < 0


def test_definitional_diagonal_holds_at_two():
    verdict = quasi_hyperbolic_definitional(np.diag([2.0, 0.5]), n_max=2, seed=0)
    assert verdict.verdict
    assert verdict.exponent == 2
    assert verdict.margin == pytest.approx(MARGIN_N2, abs=1e-6)
    assert not verdict.budget_exhausted


def test_definitional_unitary_false_every_n():
    # any unit vector witnesses max(1, 1) = 1 < 2
    verdict = quasi_hyperbolic_definitional(ROTATION, n_max=6, seed=1)
    assert not verdict.verdict
    assert verdict.margin == pytest.approx(-1.0, abs=1e-9)
    assert verdict.witness is not None
    assert np.linalg.norm(verdict.witness) == pytest.approx(1.0, abs=1e-9)


def test_definitional_budget_exhausted_flag():
    # a huge shear overflows the power monitor at every exponent, so the
    # verdict degrades to "not falsified under budget" with the flag set
    T = np.array([[1.0, 1e150], [0.0, 1.0]])
    verdict = quasi_hyperbolic_definitional(T, n_max=4, seed=0)
    assert verdict.verdict
    assert verdict.budget_exhausted
    assert verdict.exponent == 1
    assert verdict.margin == 0.0


def test_definitional_agrees_with_spectral_on_gapped_samples():
    for seed in range(8):
        spec = EnsembleSpec(kind="hyperbolic", dim=3, seed=seed, gap=0.3, cond_cap=1e4)
        T = sample_matrix(spec)
        spectral = is_quasi_hyperbolic_spectral(T).verdict
        definitional = quasi_hyperbolic_definitional(T, n_max=20, seed=seed).verdict
        assert spectral and definitional


def test_search_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(starts=0)
    with pytest.raises(ValueError):
        SearchBudget(iters=0)


def test_verdict_json_round_trip_fields():
    verdict = quasi_hyperbolic_definitional(np.diag([2.0, 0.5]), n_max=2, seed=0)
    obj = verdict.to_json()
    assert obj["method"] == "definitional"
    assert obj["verdict"] is True
    assert obj["exponent"] == 2
    verdict_false = quasi_hyperbolic_definitional(ROTATION, n_max=2, seed=0)
    obj_false = verdict_false.to_json()
    assert obj_false["verdict"] is False
    assert isinstance(obj_false["witness"], list)
    assert len(obj_false["witness"][0]) == 2
