#!/usr/bin/env python3
"""Constructive shadowing for hyperbolic operators.

Every delta-pseudo-orbit of a hyperbolic T lies within C * delta of a true
orbit, with C computed from the stable/unstable splitting.  The shadow is
built by summing the errors along stable directions forward and unstable
directions backward, which is numerically stable in both directions.
"""
import numpy as np

from aluthgelab import (
    PseudoOrbit,
    generate_pseudo_orbit,
    hyperbolic_splitting,
    orbit_defects,
    shadow_orbit,
    verify_shadowing,
)

T = np.diag([2.0, 0.5])
split = hyperbolic_splitting(T)
print("splitting of diag(2, 1/2)")
print("  stable rate   :", split.stable_rate, " stable bound  :", split.stable_bound)
print("  unstable rate :", split.unstable_rate, " unstable bound:", split.unstable_bound)
print("  shadowing constant C =", split.constant_bound)
print()

delta = 1e-2
orbit = generate_pseudo_orbit(T, delta=delta, length=200, seed=42)
print(f"pseudo-orbit: {len(orbit.points)} points, delta = {orbit.delta}, bound = {orbit.bound:.3e}")
print("  worst defect ||x_{k+1} - T x_k|| =", f"{orbit_defects(T, orbit).max():.3e}")

res = shadow_orbit(T, split, orbit)
print("shadow:")
print(f"  epsilon (max distance to orbit) = {res.epsilon:.6e}")
print(f"  C * delta                       = {split.constant_bound * delta:.6e}")
print(f"  true-orbit residual             = {res.orbit_residual:.3e}")
print("  independently verified:", verify_shadowing(T, orbit, res, eps_claim=res.epsilon + 1e-12))
print()

# linear response: halving delta halves epsilon (the draws are scale-free)
half = shadow_orbit(T, split, generate_pseudo_orbit(T, delta=delta / 2, length=200, seed=42))
print("epsilon ratio at delta vs delta/2:", res.epsilon / half.epsilon)
print()

# scalar case, where the answer is known in closed form:
# for |a| < 1 the worst constant pseudo-orbit sits at distance delta/(1-|a|)
a = 0.5
c = 0.01
pts = np.full((81, 1), c, dtype=complex)
const_orbit = PseudoOrbit(points=pts, delta=c * (1 - a), bound=c)
scalar_res = shadow_orbit(
    np.array([[a]]), hyperbolic_splitting(np.array([[a]])), const_orbit
)
print("scalar a = 1/2, constant pseudo-orbit at c = 0.01")
print("  epsilon           =", f"{scalar_res.epsilon:.12f}")
print("  delta / (1 - |a|) =", f"{c * (1 - a) / (1 - a):.12f}")
