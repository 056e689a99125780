"""
Beatty sequences, continued fractions and sawtooth sums
=======================================================

"""

# %%
# alpha is given as a spec string; surds are handled exactly
from beatty_partitions.alpha import parse_alpha, continued_fraction, convergents, floor_multiple
from beatty_partitions.beatty import beatty_prefix, discrepancy_sums, j_partial_sums

a = parse_alpha("sqrt:2")
print(beatty_prefix(a, 12))

# %%
# floors stay exact far beyond float range
print(floor_multiple(a, 10 ** 30))

# %%
# partial quotients and the bound that drives the discrepancy estimate
print(continued_fraction(a, 8), a.quotient_bound)
print(continued_fraction(parse_alpha("e"), 12))
print(convergents(continued_fraction(parse_alpha("pi"), 4)))

# %%
# S(x) = sum of ({alpha l} - 1/2) stays within (3/2) A log x
for r in discrepancy_sums(a, [10 ** k for k in range(2, 7)]):
    print(f"{r.x:>8}  {float(r.s_value):+.6f}  bound {r.ostrowski_bound:.2f}")

# %%
# the weighted series sum saw(alpha l)/l settles slowly
for L, v in zip((10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6),
                j_partial_sums(a, 1.0, [10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6])):
    print(L, f"{v:+.7f}")
