"""Cohomology of a nilpotent Lie algebra and the Lefschetz numbers it yields.

The Heisenberg algebra with [x0, x1] = x2 carries the diagonal map
diag(2, 2, 4). The induced action on H^*(h3) gives L(f^k), which on a
nilmanifold must agree with det(I - D^k).
"""
from infranil.cohomology import LieAlgebraData, cohomology_action, lefschetz_numbers, lefschetz_zeta
from infranil.exactalg import RationalMatrix, det

h3 = LieAlgebraData.heisenberg()
D = RationalMatrix.diag(2, 2, 4)
spec = cohomology_action(h3, D)
print("betti numbers:", spec.betti)
for q, cp in enumerate(spec.char_polys):
    print(f"  H^{q}: char poly {cp}")

L = [int(x) for x in lefschetz_numbers(spec, 6)]
dets = [int(det(RationalMatrix.identity(3) - D ** k)) for k in range(1, 7)]
print("L(f^k)        :", L)
print("det(I - D^k)  :", dets)
print("Lefschetz zeta:", lefschetz_zeta(spec))
