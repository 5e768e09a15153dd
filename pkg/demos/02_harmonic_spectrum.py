"""Harmonic oscillator on the lattice: where the continuum ladder survives.

For small a c^(1/4) the spectrum is the familiar sqrt(c) (n + 1/2); above
the quantum number 3/(a^2 sqrt(c)) the eigenfunctions oscillate faster than
the lattice can represent, the zone-edge overlap S_n switches on, and the
levels collapse into near-degenerate even/odd pairs.
"""

import numpy as np

from latticeccr import (
    Hopping,
    LatticeSpec,
    Potential,
    build_hamiltonian,
    degenerate_pairs,
    diagnose_states,
    eigensolve,
    harmonic_sweep,
    threshold_estimate,
)

spec = LatticeSpec(100, 1.0)
curvature = 0.01
sr = eigensolve(build_hamiltonian(spec, Hopping.quadratic(), Potential.harmonic(curvature)))
root = np.sqrt(curvature)

print("== normalized spectrum, a = 1, c = 0.01 ==")
print(f"validity threshold 3/(a^2 sqrt(c)) = {threshold_estimate(1.0, curvature):g}")
print(" n   E_n/sqrt(c)   n + 1/2")
for n in (0, 5, 10, 25, 40, 60):
    print(f"{n:2d}   {sr.eigenvalues[n] / root:10.5f}   {n + 0.5:7.1f}")

print()
print("== zone-edge overlap of the even states ==")
diags = diagnose_states(sr, spec)
print(" n    |S_n|")
for d in diags:
    if d.parity == "even" and d.index in (0, 10, 20, 30, 40, 50, 60):
        print(f"{d.index:2d}   {d.overlap:.3e}")

print()
print("== strong-lattice regime: a = 3, c = 1 ==")
spec3 = LatticeSpec(100, 3.0)
sr3 = eigensolve(build_hamiltonian(spec3, Hopping.quadratic(), Potential.harmonic(1.0)))
pairs = degenerate_pairs(sr3, spec3, gap_tol=0.1)
print("pair (n, n+1)   gap          well separation")
for p in pairs[:8]:
    print(f"({p.lower:3d},{p.upper:3d})     {p.gap:.3e}    {p.center_separation:6.1f}")

print()
print("== sweep across a c^(1/4) (5 lowest states shown as E/sqrt(c)) ==")
sweep = harmonic_sweep(0.01, [0.5, 1.0, 2.0, 3.0], states_per_point=5, half_width=100)
for i in range(0, len(sweep.index), 5):
    x = sweep.ac_quarter[i]
    vals = " ".join(f"{v:7.3f}" for v in sweep.e_over_sqrt_c[i : i + 5])
    print(f"a c^1/4 = {x:5.3f} (boundary {sweep.reference[i]:8.2f}):  {vals}")
