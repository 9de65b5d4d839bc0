"""Homotopy minimal periods: which k are forced to be minimal periods?

For the cat map [[2,1],[1,1]] we compute the explicit bound m0 beyond which
every period is certified, print the derivation, and compare it with the
direct prime-divisor test on a window of N(f^k).
"""
from infranil.exactalg import RationalMatrix
from infranil.hper import ablss_certify, hper_bound, hper_report
from infranil.nielsen import MapData, exponential_sum_form, nielsen_sequence
from infranil.spectra import classify

fmap = MapData.simple(RationalMatrix([[2, 1], [1, 1]]))
prof = classify(fmap.linear_part)
trace = hper_bound(fmap, exponential_sum_form(fmap, profile=prof), prof)
for line in trace.derivation:
    print("  " + line)

rep = hper_report(fmap, 30, prof)
print("certified periods up to 30:", rep.certified_periods)
print("not decided below m0:", rep.unknown_periods)

seq = nielsen_sequence(fmap, trace.m0 + 20)
window = range(trace.m0, trace.m0 + 21)
print(f"every k in [{window.start}, {window.stop - 1}] passes:", all(ablss_certify(seq, k) for k in window))

# nilpotent linear parts force HPer = {1}
nil = MapData.simple(RationalMatrix([[0, 1], [0, 0]]))
print("nilpotent example:", hper_report(nil, 20).certified_periods)
