"""
Counting partitions into Beatty parts
=====================================

"""

# %%
import math

from beatty_partitions.alpha import parse_alpha
from beatty_partitions.asympt import REFERENCE_P_NS, REFERENCE_Q_NS, reproduce_table
from beatty_partitions.counting import brute_force_count, count_distinct, enumerate_partitions

a = parse_alpha("sqrt:2")

# %%
# every partition of 10 into distinct parts from 1, 2, 4, 5, 7, 8, ...
for lam in enumerate_partitions(a, 10, "Distinct"):
    print(" + ".join(map(str, lam)))
print(brute_force_count(a, 10, "Distinct"), count_distinct(a, 10)[10])

# %%
# exact counts against the constant-free estimates
for kind, ns in (("q", REFERENCE_Q_NS), ("p", REFERENCE_P_NS)):
    for row in reproduce_table(a, kind, ns):
        print(kind, row.n, row.exact, f"{float(row.hat):.6g}", f"{float(row.ratio):.6g}")

# %%
# log q(n) against its leading term pi sqrt(n / (3 alpha))
q = count_distinct(a, 1600)
for n in (100, 400, 1600):
    print(n, math.log(q[n]) / (math.pi * math.sqrt(n / (3 * a.value))))
