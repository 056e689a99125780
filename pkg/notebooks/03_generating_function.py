"""
The log generating function and its splitting
=============================================

"""

# %%
import math

from beatty_partitions.alpha import parse_alpha
from beatty_partitions.asympt import c_alpha_constant
from beatty_partitions.genfun import L_alpha, check_decomposition

a = parse_alpha("sqrt:2")
al = a.value

# %%
# L = L_1(alpha t) + (t/2) D(alpha t) + R + E, reassembled to rounding level
for t in (0.5, 0.1, 0.01):
    d = check_decomposition(a, t)
    print(t, d.L_alpha.value, d.L_one.value, d.half_tD.value, d.R_alpha.value, d.E_alpha.value,
          f"residual {d.residual:.1e}")

# %%
# small t: leading pole, log term and constant
c = c_alpha_constant(a, 10 ** 6)
for t in (1e-2, 1e-3, 1e-4):
    rest = L_alpha(a, t).value - math.pi ** 2 / (6 * al * t) - 0.5 * (1 - 1 / al) * math.log(t)
    print(t, rest, rest - c)
