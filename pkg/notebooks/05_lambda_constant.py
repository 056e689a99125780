"""
A certified enclosure of Lambda for alpha = sqrt 2
==================================================

"""

# %%
from beatty_partitions.alpha import parse_alpha
from beatty_partitions.asympt import error_bound, lambda_constant, sigma_m

a = parse_alpha("sqrt:2")

# %%
# truncated log-product and the bound on what is left out
for N in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
    print(N, f"{sigma_m(a, N):+.8f}", f"+- {error_bound(a, N):.2e}")

# %%
# the constant-free p estimates over-count by roughly this factor
lam = lambda_constant(a, 10 ** 6)
print(lam.lambda_lo, lam.lambda_hi, lam.central)

# %%
# ten times more factors: a narrower interval inside the first
lam7 = lambda_constant(a, 10 ** 7)
print(lam7.lambda_lo, lam7.lambda_hi)
