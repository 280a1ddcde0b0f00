#!/usr/bin/env python3
"""First contact with the lambda-Aluthge transform.

D_lam(T) = |T|^lam U |T|^(1-lam) where T = U|T| is the polar decomposition.
"""
import numpy as np

from aluthgelab import (
    aluthge_transform,
    normality_defect,
    operator_norm,
    scale_homogeneity_check,
)

# the classic weighted shift: norm 4, spectral radius 2
T = np.array([[0.0, 4.0], [1.0, 0.0]])

print("T =")
print(T)
print("||T|| =", operator_norm(T), " normality defect =", normality_defect(T))
print()

for lam in (0.25, 0.5, 0.75):
    D = aluthge_transform(T, lam)
    print(f"lam = {lam}")
    print(np.round(D, 6))
    print("  ||D|| =", round(operator_norm(D), 6), " defect =", round(normality_defect(D), 6))
print()

# at lam = 1/2 the shift becomes the symmetric matrix [[0,2],[2,0]]:
# already normal, so one step kills the whole defect here.

# normal matrices are fixed points at every lambda
N = np.array([[1.0, -2.0], [2.0, 1.0]])  # normal: commutes with its adjoint
for lam in (0.1, 0.5, 0.9):
    drift = operator_norm(aluthge_transform(N, lam) - N)
    print(f"normal input, lam={lam}: ||D(N) - N|| = {drift:.3e}")
print()

# the transform is homogeneous of degree one in T, phase included:
# D(alpha T) = alpha D(T) for every complex alpha
for alpha in (2.0, -3.0, 1.0 + 2.0j, 0.7j):
    gap = scale_homogeneity_check(T, alpha)
    print(f"alpha = {alpha!s:>10}: ||D(alpha T) - alpha D(T)|| = {gap:.3e}")
