"""
A rank 2 generalized cluster algebra, step by step
==================================================

Mutate the bundled rank 2 seed along 1, 2, 1, 2 and watch the c-, g-vectors
and F-polynomials appear. The F's are computed three ways and compared.
"""

from gencluster import ClassicalEngine, example

seed = example("rank2")
print(seed.B)
print("r =", seed.md.r, " z =", seed.md.z)

eng = ClassicalEngine(seed.B, seed.md)
path = (1, 2, 1, 2)

# tropical data along the path
pd = eng.path_data(path)
for t, (c, g) in enumerate(zip(pd.c, pd.g), 1):
    print(f"t{t}: c = {c}, g = {g}")

# the L-sequence behind the product formula
for i, L in enumerate(eng.format_L(path), 1):
    print(f"L{i} = {L}")

###############################################################################
# Direct mutation, the product of L's and its multinomial expansion agree.

for j in range(1, len(path) + 1):
    p = path[:j]
    direct = eng.f_poly_direct(p)
    assert direct == eng.gupta_product(p) == eng.gupta_expansion(p)
    print(f"F_{p[-1]};t{j} = {direct}")
