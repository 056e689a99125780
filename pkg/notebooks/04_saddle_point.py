"""
Saddle-point estimates against exact counts
===========================================

"""

# %%
import math

from beatty_partitions.alpha import parse_alpha
from beatty_partitions.counting import count_distinct, count_unrestricted
from beatty_partitions.saddle import estimate_p_saddle, estimate_q_saddle

a = parse_alpha("sqrt:2")
p, q = count_unrestricted(a, 800), count_distinct(a, 800)

# %%
# the saddle t* sits near pi / sqrt(6 alpha n)
for n in (100, 200, 400, 800):
    ep, eq = estimate_p_saddle(a, n), estimate_q_saddle(a, n)
    print(n, f"t*={ep.saddle.t_star:.6f}",
          f"p ratio {math.exp(ep.log_value - math.log(p[n])):.5f}",
          f"q ratio {math.exp(eq.log_value - math.log(q[n])):.5f}")

# %%
# estimates stay finite in log space far past float range
big = estimate_p_saddle(a, 10 ** 6)
print(big.log_value, big.value)
