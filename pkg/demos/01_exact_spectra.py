"""Exact spectral bookkeeping for a linear part D.

We build a 3x3 companion matrix for z^3 - z - 1, compute its characteristic
polynomial exactly, decide hyperbolicity without floating point, and bound
the spectral radius of the exterior algebra of D.
"""
from infranil.exactalg import RationalMatrix, char_poly, unit_circle_root_test
from infranil.spectra import asymptotic_nielsen, classify

D = RationalMatrix([[0, 0, 1], [1, 0, 1], [0, 1, 0]])
p = char_poly(D)
print("char poly:", p)
print("root on the unit circle?", unit_circle_root_test(p))

prof = classify(D)
print("hyperbolic:", prof.is_hyperbolic, " nilpotent:", prof.is_nilpotent)
print("eigenvalues outside the disk (p) / negative real (n):", prof.p, prof.n)
w = prof.wedge_spectral_radius
print(f"Sp(wedge D) in [{float(w.lo):.15f}, {float(w.hi):.15f}], width {float(w.width):.1e}")
ninf = asymptotic_nielsen(D, prof)
print("N_inf equals Sp(wedge D):", ninf == w)

# a rotation by a quarter turn is caught by the exact test
R = RationalMatrix([[0, -1], [1, 0]])
print("rotation hyperbolic?", classify(R).is_hyperbolic)
