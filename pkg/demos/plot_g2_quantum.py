"""
Quantum F-polynomials of the G2-type seed
=========================================

The quantum product is only available as a truncated series, so each
F-polynomial comes with a stabilization certificate. The exact exchange
relations are then checked without any truncation.
"""

from gencluster import QuantumEngine, example

seed = example("g2")
eng = QuantumEngine(seed.pair(), seed.md)
path = (1, 2, 1, 2, 1, 2, 1, 2)

fpolys = eng.fpolys_along(path)
for t, F in enumerate(fpolys, 1):
    print(f"t{t}  levels {F.certificate.levels}  degree {F.degree()}")
    print("   ", F)

# the sequence is periodic: after eight steps the g-vectors return
print(eng.path_data(path).g)

###############################################################################
# No truncation here: both sides are multiplied out in the initial torus.

print(eng.separation_check_quantum(path, fpolys))

###############################################################################
# Setting q = 1 recovers the classical F-polynomials.

for j, F in enumerate(fpolys, 1):
    eng.specialize_q1(path[:j], F)
print("q = 1 bridge holds at all", len(fpolys), "steps")
