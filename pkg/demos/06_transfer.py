#!/usr/bin/env python3
"""Shadowing transfers across the Aluthge conjugacy.

For invertible T, D_lam(T) = H T H^(-1) with H = |T|^lam.  A pseudo-orbit
of the transform can be pulled back through H, shadowed under T, and pushed
forward again; the shadowing constant inflates by at most ||H|| ||H^(-1)||.
The reverse direction works the same way, so T has the bounded shadowing
property exactly when its transform does.
"""
import numpy as np

from aluthgelab import (
    aluthge_transform,
    conjugator,
    generate_pseudo_orbit,
    hyperbolic_splitting,
    transfer_shadowing,
    verify_shadowing,
)

T = np.array([[0.0, 4.0], [1.0, 0.0]])  # hyperbolic: eigenvalues +-2
D = aluthge_transform(T, 0.5)  # [[0,2],[2,0]]
conj = conjugator(T, 0.5)
print("T = [[0,4],[1,0]],  D_1/2(T) = [[0,2],[2,0]]")
print("||H|| * ||H^(-1)|| =", conj.norm * conj.inverse_norm)
print("shadowing constant of T itself:", hyperbolic_splitting(T).constant_bound)
print()

# forward: the orbit lives in the transform's phase space
delta = 1e-3
orbit = generate_pseudo_orbit(D, delta=delta, length=150, seed=5)
res = transfer_shadowing(T, 0.5, orbit)
print("forward transfer (orbit of D, shadowed through T):")
print(f"  epsilon          = {res.epsilon:.6e}")
print(f"  constant bound   = {res.constant_bound}")
print(f"  bound * delta    = {res.constant_bound * delta:.6e}")
print("  shadow is a true D-orbit within", f"{res.orbit_residual:.3e}")
print("  verified:", verify_shadowing(D, orbit, res, eps_claim=res.constant_bound * delta))
print()

# reverse: hand an orbit of T itself to the transform's shadowing
orbit_T = generate_pseudo_orbit(T, delta=delta, length=150, seed=6)
back = transfer_shadowing(T, 0.5, orbit_T, reverse=True)
print("reverse transfer (orbit of T, shadowed through D):")
print(f"  epsilon        = {back.epsilon:.6e}")
print(f"  constant bound = {back.constant_bound}")
print("  verified:", verify_shadowing(T, orbit_T, back, eps_claim=back.constant_bound * delta))
