"""Lambda-Aluthge transforms, iterates, normality diagnostics, and the
similarity conjugator for invertible operators.

For T = U|T| (polar decomposition) and lambda in (0, 1), the transform is

    D_lam(T) = |T|^lam U |T|^(1-lam).

Iterating the transform drives a finite-dimensional operator toward a
normal one while the operator norm decreases to the spectral radius; the
iterate trace records both diagnostics per step.  For invertible T the
transform is a similarity: with H = |T|^lam,

    D_lam(T) = H T H^(-1),

and H together with its inverse provides the bi-Lipschitz conjugacy used
by the shadowing transfer in :mod:`aluthgelab.shadowing`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import NotInvertibleError
from .linalg_core import (
    as_matrix,
    eigenvalues,
    operator_norm,
    polar_decompose,
    psd_power,
    rank_tolerance,
    svd,
)

__all__ = [
    "IterateTrace",
    "Conjugator",
    "check_lambda",
    "aluthge_transform",
    "scale_homogeneity_check",
    "normality_defect",
    "aluthge_iterates",
    "write_trace_csv",
    "conjugator",
]

#: Iterate early-stop: a normality defect below this multiple of the input's
#: squared norm is roundoff floor, so further iterates are noise.
EARLY_STOP_FACTOR = 1e-12


def check_lambda(lam: float) -> float:
    """Validate a transform exponent; must lie strictly in (0, 1)."""
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie strictly in (0, 1), got {lam}")
    return lam


def aluthge_transform(T, lam: float = 0.5) -> np.ndarray:
    """Lambda-Aluthge transform |T|^lam U |T|^(1-lam)."""
    lam = check_lambda(lam)
    T = as_matrix(T)
    parts = polar_decompose(T)
    left = psd_power(parts.modulus, lam)
    right = psd_power(parts.modulus, 1.0 - lam)
    return left @ parts.isometry_part @ right


def normality_defect(T) -> float:
    """Operator norm of the self-commutator, ||T*T - TT*||.

    Zero exactly for normal matrices; the scale is ||T||^2.
    """
    T = as_matrix(T)
    return operator_norm(T.conj().T @ T - T @ T.conj().T)


def scale_homogeneity_check(T, alpha: complex, lam: float = 0.5) -> float:
    """Discrepancy ||D_lam(alpha T) - alpha D_lam(T)||.

    The transform is homogeneous of degree one: scaling T by any complex
    alpha scales the transform by the same alpha, since |alpha T| =
    |alpha| |T| while the phase of alpha travels with the isometry factor
    of the polar decomposition.  (For alpha >= 0 this is the familiar
    |alpha| form; stating it with |alpha| for general complex alpha drops
    the phase and is off by exactly that phase.)  The returned value is
    roundoff only: at most 1e-10 * (1 + |alpha| ||T||).
    """
    T = as_matrix(T)
    alpha = complex(alpha)
    scaled = aluthge_transform(alpha * T, lam)
    reference = alpha * aluthge_transform(T, lam)
    return operator_norm(scaled - reference)


@dataclass(frozen=True)
class IterateTrace:
    """Trace of Aluthge iterates D_lam^(0)(T) .. D_lam^(N)(T).

    ``operator_norms`` is nonincreasing within 1e-10 slack;
    ``normality_defects`` records ||S*S - SS*|| per iterate;
    ``spectral_radius`` is r(T) of the starting operator, the limit of the
    norm sequence.  All sequences share one length, which may be shorter
    than requested when the defect reaches the early-stop floor.
    """

    iterates: list[np.ndarray]
    operator_norms: np.ndarray
    normality_defects: np.ndarray
    spectral_radius: float

    def __len__(self) -> int:
        return len(self.iterates)


def aluthge_iterates(T, lam: float = 0.5, n_max: int = 500) -> IterateTrace:
    """Iterate the lambda-Aluthge transform up to ``n_max`` times.

    Stops early once an iterate's normality defect falls below
    ``EARLY_STOP_FACTOR * ||T||^2``; one further iterate is appended past
    that point so a trace always exhibits the fixed point it reached.
    """
    lam = check_lambda(lam)
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    T = as_matrix(T)
    threshold = EARLY_STOP_FACTOR * operator_norm(T) ** 2
    iterates = [T]
    norms = [operator_norm(T)]
    defects = [normality_defect(T)]
    at_floor = defects[0] < threshold
    for _ in range(n_max):
        S = aluthge_transform(iterates[-1], lam)
        iterates.append(S)
        norms.append(operator_norm(S))
        defects.append(normality_defect(S))
        if at_floor:
            break  # this iterate confirms the fixed point
        at_floor = defects[-1] < threshold
    radius = float(np.abs(eigenvalues(T)).max()) if T.shape[0] else 0.0
    return IterateTrace(
        iterates=iterates,
        operator_norms=np.array(norms),
        normality_defects=np.array(defects),
        spectral_radius=radius,
    )


def write_trace_csv(trace: IterateTrace, path_or_file) -> None:
    """Write an iterate trace as CSV with columns step, operator_norm,
    normality_defect (header row included).  Accepts a path or an open
    text stream."""

    def _write(fh):
        writer = csv.writer(fh)
        writer.writerow(["step", "operator_norm", "normality_defect"])
        for k in range(len(trace)):
            writer.writerow(
                [k, repr(float(trace.operator_norms[k])), repr(float(trace.normality_defects[k]))]
            )

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
        return
    with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
        _write(fh)


@dataclass(frozen=True)
class Conjugator:
    """Similarity H = |T|^lam with D_lam(T) = H T H^(-1).

    ``norm`` and ``inverse_norm`` are the Lipschitz constants of the
    conjugation and its inverse (computed exactly from the singular values
    of T: sigma_max^lam and sigma_min^(-lam)).
    """

    matrix: np.ndarray
    norm: float
    inverse_norm: float


def conjugator(T, lam: float = 0.5) -> Conjugator:
    """Conjugating similarity H = |T|^lam for invertible T.

    Raises
    ------
    NotInvertibleError
        If the smallest singular value of T is within the rank tolerance.
    """
    lam = check_lambda(lam)
    T = as_matrix(T)
    parts = svd(T)
    s = parts.singular_values
    if s.size == 0 or s[-1] <= rank_tolerance(s, T.shape[0]):
        raise NotInvertibleError(
            f"operator is numerically singular (min singular value {s[-1] if s.size else 0.0:.3e})"
        )
    H = psd_power((parts.right * s) @ parts.right.conj().T, lam)
    return Conjugator(
        matrix=H,
        norm=float(s[0] ** lam),
        inverse_norm=float(s[-1] ** (-lam)),
    )
