"""Ensemble property suites behind the ``verify`` command.

Each suite runs seeded trials of one preservation property and returns an
:class:`ExperimentReport` that embeds every parameter needed to rerun it:
the ensemble sweep, the base seed (per-trial seeds are base + trial
index), the generator identifier, and the numeric tolerances.  A trial
that throws a package error is recorded as a failure with the exception
text, never as a crash of the runner.

Suites
------
spectral
    Eigenvalue multisets of T and D_lam(T) match across invertible,
    normal, and shift samples.
fixedpoint
    Normal operators are fixed points of every transform.
iterates
    Iterate norms decrease monotonically; norms approach the spectral
    radius and defects the roundoff floor for a calibrated fraction of
    trials.
shadowing
    Ball-mode pseudo-orbits of hyperbolic samples are shadowed within
    C * delta, the shadow is a true orbit, and epsilon responds linearly
    to delta.
transfer
    Shadowing transfers across the conjugacy in both directions within
    the Lipschitz-inflated bound.
quasihyp
    Spectral quasi-hyperbolicity verdicts of T and D_lam(T) agree, and
    the definitional falsifier agrees with the spectral route away from
    the unit circle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .aluthge import aluthge_iterates, aluthge_transform
from .ensembles import RNG_IDENTIFIER, EnsembleSpec, sample_matrix, trial_seed
from .errors import AluthgeLabError
from .linalg_core import eigenvalues, operator_norm
from .shadowing import generate_pseudo_orbit, hyperbolic_splitting, shadow_orbit, transfer_shadowing, verify_shadowing
from .spectral import SearchBudget, is_quasi_hyperbolic_spectral, multiset_match, quasi_hyperbolic_definitional

__all__ = ["ExperimentReport", "SUITE_NAMES", "LAMBDA_GRID", "run_suite", "run_all"]

SUITE_NAMES = ("spectral", "fixedpoint", "iterates", "shadowing", "transfer", "quasihyp")

LAMBDA_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)

# calibrated against a brute-force run and frozen; see the iterates suite
ITERATE_BUDGET = 500
NORM_LIMIT_FACTOR = 1e-2
DEFECT_FACTOR = 1e-6
CONVERGENCE_RATE_MIN = 0.95


@dataclass(frozen=True)
class ExperimentReport:
    """Self-contained record of one suite run."""

    suite: str
    spec: dict
    trials: int
    passes: int
    failures: list
    tolerances: dict
    wall_time: float
    rng: str = RNG_IDENTIFIER

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "spec": self.spec,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures,
            "tolerances": self.tolerances,
            "wall_time": self.wall_time,
            "rng": self.rng,
        }


def _cycle(values, index):
    return values[index % len(values)]


def _suite_spectral(trials, base_seed):
    spec = {
        "kinds": ["invertible", "normal", "shift"],
        "dims": [2, 12],
        "lambdas": list(LAMBDA_GRID),
        "cond_cap": 1e4,
        "seed": base_seed,
    }
    tolerances = {"eigenvalue_match_factor": 1e-7}
    diagnostics = []
    for i in range(trials):
        seed = trial_seed(base_seed, i)
        kind = _cycle(spec["kinds"], i)
        dim = 2 + i % 11
        lam = _cycle(LAMBDA_GRID, i)
        problems = []
        try:
            if kind == "shift":
                rng = np.random.Generator(np.random.Philox(seed))
                weights = tuple(rng.uniform(0.25, 2.25, dim - 1))
                sample = EnsembleSpec(kind=kind, dim=dim, seed=seed, weights=weights)
            else:
                sample = EnsembleSpec(kind=kind, dim=dim, seed=seed)
            T = sample_matrix(sample)
            tol = 1e-7 * (1.0 + operator_norm(T))
            matched, distance = multiset_match(
                eigenvalues(T), eigenvalues(aluthge_transform(T, lam)), tol
            )
            if not matched:
                problems.append(
                    f"{kind} dim {dim} lambda {lam}: spectra differ by {distance:.3e} > {tol:.3e}"
                )
        except AluthgeLabError as exc:
            problems.append(f"{kind} dim {dim} lambda {lam}: error: {exc}")
        diagnostics.append((seed, problems))
    return spec, tolerances, diagnostics


def _suite_fixedpoint(trials, base_seed):
    spec = {
        "kinds": ["normal"],
        "dims": [2, 10],
        "lambdas": list(LAMBDA_GRID),
        "seed": base_seed,
    }
    tolerances = {"fixed_point_factor": 1e-9}
    diagnostics = []
    for i in range(trials):
        seed = trial_seed(base_seed, i)
        dim = 2 + i % 9
        problems = []
        try:
            T = sample_matrix(EnsembleSpec(kind="normal", dim=dim, seed=seed))
            scale = 1e-9 * operator_norm(T)
            for lam in LAMBDA_GRID:
                drift = operator_norm(aluthge_transform(T, lam) - T)
                if drift > scale:
                    problems.append(
                        f"normal dim {dim} lambda {lam}: moved by {drift:.3e} > {scale:.3e}"
                    )
        except AluthgeLabError as exc:
            problems.append(f"normal dim {dim}: error: {exc}")
        diagnostics.append((seed, problems))
    return spec, tolerances, diagnostics


def _suite_iterates(trials, base_seed):
    spec = {
        "kinds": ["invertible"],
        "dims": [2, 6],
        "lambdas": [0.5],
        "cond_cap": 1e4,
        "seed": base_seed,
    }
    tolerances = {
        "monotonicity_slack": 1e-10,
        "norm_limit_factor": NORM_LIMIT_FACTOR,
        "defect_factor": DEFECT_FACTOR,
        "convergence_rate_min": CONVERGENCE_RATE_MIN,
        "iteration_budget": ITERATE_BUDGET,
    }
    diagnostics = []
    converged = []
    for i in range(trials):
        seed = trial_seed(base_seed, i)
        dim = 2 + i % 5
        problems = []
        trial_converged = False
        try:
            T = sample_matrix(EnsembleSpec(kind="invertible", dim=dim, seed=seed))
            trace = aluthge_iterates(T, 0.5, ITERATE_BUDGET)
            steps = np.diff(trace.operator_norms)
            if steps.size and steps.max() > 1e-10:
                problems.append(
                    f"invertible dim {dim}: norm increased by {steps.max():.3e}"
                )
            radius = trace.spectral_radius
            norm_ok = abs(trace.operator_norms[-1] - radius) <= NORM_LIMIT_FACTOR * (1.0 + radius)
            defect_ok = trace.normality_defects[-1] <= DEFECT_FACTOR * operator_norm(T) ** 2
            trial_converged = bool(norm_ok and defect_ok)
        except AluthgeLabError as exc:
            problems.append(f"invertible dim {dim}: error: {exc}")
        converged.append(trial_converged)
        diagnostics.append((seed, problems))
    rate = sum(converged) / trials if trials else 1.0
    if rate < CONVERGENCE_RATE_MIN:
        for (seed, problems), ok in zip(diagnostics, converged):
            if not ok:
                problems.append(
                    f"non-converged trial (population rate {rate:.2f} below {CONVERGENCE_RATE_MIN})"
                )
    return spec, tolerances, diagnostics


def _suite_shadowing(trials, base_seed):
    spec = {
        "kinds": ["hyperbolic"],
        "dims": [2, 8],
        "gap": 0.2,
        "cond_cap": 1e4,
        "seed": base_seed,
    }
    tolerances = {
        "residual_factor": 1e-9,
        "epsilon_slack": 1e-9,
        "linear_response_rel": 0.1,
        "deltas": [1e-2, 1e-3],
        "orbit_length": 200,
    }
    diagnostics = []
    for i in range(trials):
        seed = trial_seed(base_seed, i)
        dim = 2 + i % 7
        problems = []
        try:
            T = sample_matrix(
                EnsembleSpec(kind="hyperbolic", dim=dim, seed=seed, gap=0.2)
            )
            splitting = hyperbolic_splitting(T)
            epsilons = {}
            for delta in (1e-2, 1e-3, 5e-3):
                orbit = generate_pseudo_orbit(T, delta, 200, seed)
                result = shadow_orbit(T, splitting, orbit)
                epsilons[delta] = result.epsilon
                claim = result.constant_bound * delta + 1e-9
                if not verify_shadowing(T, orbit, result, claim):
                    problems.append(
                        f"hyperbolic dim {dim} delta {delta}: epsilon {result.epsilon:.3e} "
                        f"or residual {result.orbit_residual:.3e} outside claim {claim:.3e}"
                    )
            ratio = epsilons[1e-2] / epsilons[5e-3] if epsilons[5e-3] else np.inf
            if abs(ratio - 2.0) > 0.2:
                problems.append(
                    f"hyperbolic dim {dim}: halving delta scaled epsilon by {ratio:.4f}"
                )
        except AluthgeLabError as exc:
            problems.append(f"hyperbolic dim {dim}: error: {exc}")
        diagnostics.append((seed, problems))
    return spec, tolerances, diagnostics


def _suite_transfer(trials, base_seed):
    spec = {
        "kinds": ["hyperbolic"],
        "dims": [2, 8],
        "gap": 0.2,
        "cond_cap": 1e4,
        "lambdas": list(LAMBDA_GRID),
        "seed": base_seed,
    }
    tolerances = {
        "residual_factor": 1e-9,
        "epsilon_slack": 1e-9,
        "delta": 1e-2,
        "orbit_length": 200,
    }
    delta = 1e-2
    diagnostics = []
    for i in range(trials):
        seed = trial_seed(base_seed, i)
        dim = 2 + i % 7
        lam = _cycle(LAMBDA_GRID, i)
        problems = []
        try:
            T = sample_matrix(
                EnsembleSpec(kind="hyperbolic", dim=dim, seed=seed, gap=0.2)
            )
            transform = aluthge_transform(T, lam)
            forward_orbit = generate_pseudo_orbit(transform, delta, 200, seed)
            forward = transfer_shadowing(T, lam, forward_orbit)
            claim = forward.constant_bound * delta + 1e-9
            if not verify_shadowing(transform, forward_orbit, forward, claim):
                problems.append(
                    f"forward dim {dim} lambda {lam}: epsilon {forward.epsilon:.3e} "
                    f"outside claim {claim:.3e}"
                )
            reverse_orbit = generate_pseudo_orbit(T, delta, 200, seed + 1)
            reverse = transfer_shadowing(T, lam, reverse_orbit, reverse=True)
            claim = reverse.constant_bound * delta + 1e-9
            if not verify_shadowing(T, reverse_orbit, reverse, claim):
                problems.append(
                    f"reverse dim {dim} lambda {lam}: epsilon {reverse.epsilon:.3e} "
                    f"outside claim {claim:.3e}"
                )
        except AluthgeLabError as exc:
            problems.append(f"hyperbolic dim {dim} lambda {lam}: error: {exc}")
        diagnostics.append((seed, problems))
    return spec, tolerances, diagnostics


def _suite_quasihyp(trials, base_seed):
    spec = {
        "kinds": ["hyperbolic", "unitary"],
        "dims": [2, 8],
        "preservation_gap": 0.2,
        "definitional_gap": 0.3,
        "cond_cap": 1e4,
        "lambdas": list(LAMBDA_GRID),
        "seed": base_seed,
    }
    budget = SearchBudget()
    tolerances = {
        "n_max": 20,
        "falsifier_starts": budget.starts,
        "falsifier_iters": budget.iters,
    }
    diagnostics = []
    for i in range(trials):
        seed = trial_seed(base_seed, i)
        dim = 2 + i % 7
        lam = _cycle(LAMBDA_GRID, i)
        problems = []
        try:
            if i % 2 == 0:
                T = sample_matrix(
                    EnsembleSpec(kind="hyperbolic", dim=dim, seed=seed, gap=0.2)
                )
                before = is_quasi_hyperbolic_spectral(T).verdict
                after = is_quasi_hyperbolic_spectral(aluthge_transform(T, lam)).verdict
                if before != after:
                    problems.append(
                        f"hyperbolic dim {dim} lambda {lam}: spectral verdict flipped "
                        f"{before} -> {after}"
                    )
                Tdef = sample_matrix(
                    EnsembleSpec(kind="hyperbolic", dim=dim, seed=seed, gap=0.3)
                )
                spectral = is_quasi_hyperbolic_spectral(Tdef).verdict
                definitional = quasi_hyperbolic_definitional(
                    Tdef, n_max=20, budget=budget, seed=seed
                ).verdict
                if spectral != definitional:
                    problems.append(
                        f"hyperbolic dim {dim}: definitional {definitional} disagrees "
                        f"with spectral {spectral}"
                    )
            else:
                T = sample_matrix(EnsembleSpec(kind="unitary", dim=dim, seed=seed))
                before = is_quasi_hyperbolic_spectral(T).verdict
                after = is_quasi_hyperbolic_spectral(aluthge_transform(T, lam)).verdict
                if before or after:
                    problems.append(
                        f"unitary dim {dim} lambda {lam}: spectral verdicts "
                        f"{before}/{after}, expected false/false"
                    )
                definitional = quasi_hyperbolic_definitional(
                    T, n_max=20, budget=budget, seed=seed
                )
                if definitional.verdict:
                    problems.append(f"unitary dim {dim}: definitional verdict true")
        except AluthgeLabError as exc:
            problems.append(f"dim {dim} lambda {lam}: error: {exc}")
        diagnostics.append((seed, problems))
    return spec, tolerances, diagnostics


_SUITES = {
    "spectral": _suite_spectral,
    "fixedpoint": _suite_fixedpoint,
    "iterates": _suite_iterates,
    "shadowing": _suite_shadowing,
    "transfer": _suite_transfer,
    "quasihyp": _suite_quasihyp,
}


def run_suite(name: str, trials: int, base_seed: int) -> ExperimentReport:
    """Run one named suite and assemble its report."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    started = time.perf_counter()
    spec, tolerances, diagnostics = _SUITES[name](trials, base_seed)
    failures = [
        {"seed": seed, "diagnostic": "; ".join(problems)}
        for seed, problems in diagnostics
        if problems
    ]
    return ExperimentReport(
        suite=name,
        spec=spec,
        trials=trials,
        passes=trials - len(failures),
        failures=failures,
        tolerances=tolerances,
        wall_time=time.perf_counter() - started,
    )


def run_all(trials: int, base_seed: int) -> list[ExperimentReport]:
    """Run every suite in declaration order."""
    return [run_suite(name, trials, base_seed) for name in SUITE_NAMES]
