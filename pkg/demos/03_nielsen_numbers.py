"""Nielsen numbers on an infra-nilmanifold and their exponential-sum form.

The Klein-bottle-like example: D = diag(2, 3) with holonomy {I, diag(1, -1)}.
The averaging formula gives N(f^k) = 6^k - 3^k. We recover that closed form
from the sequence alone and turn it into the Nielsen zeta function.
"""
from infranil.exactalg import RationalMatrix
from infranil.nielsen import (MapData, exponential_sum_form, nielsen_sequence, nielsen_zeta_from_sum,
                              reidemeister_status)
from infranil.spectra import classify

fmap = MapData.simple(RationalMatrix.diag(2, 3), [RationalMatrix.diag(1, -1)])
print("N(f^k), k=1..8:", nielsen_sequence(fmap, 8))

prof = classify(fmap.linear_part)
s = exponential_sum_form(fmap, profile=prof)
for t in s.terms:
    print(f"  term {t.coefficient:+d} * ({t.base.center.re})^k")
print("check k=25:", s.evaluate(25) == 6 ** 25 - 3 ** 25)
print("Nielsen zeta:", nielsen_zeta_from_sum(s))
print("Reidemeister:", reidemeister_status(fmap).to_dict())
