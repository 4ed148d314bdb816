"""
Shrinking polyannuli, filtered towers and the log/exp isometry
==============================================================

"""

from padic_arrangements.limits import (
    MonomialBox,
    check_filtered_condition,
    check_restriction_inclusion,
    exp_trunc,
    log1p_trunc,
    power_system,
    restriction_scaling,
    verify_log_exp,
)
from padic_arrangements.local_algebra import vp

# A disk coordinate and an annulus coordinate, exponents truncated at 2.
box = MonomialBox.uniform(["disk", "annulus"], 2, r=1, s=1)
scaling = restriction_scaling(box)
for nu in [(0, 0), (2, 0), (1, -1), (0, -2)]:
    print("monomial", nu, "picks up p^%d" % scaling[nu])

for steps in (1, 2, 3):
    cert = check_restriction_inclusion(box, 4, steps)
    print(f"{steps} shrink steps: holds={cert['holds']} min exponent={cert['min_exponent']}")

# Filtered towers: p^(i+n) Z/p^N satisfies the inclusion with c = 1.
good = check_filtered_condition(power_system(2, 10, 3, 5), 1)
print("shrinking powers:", good["holds"], "cocycles split:", good["cobord_ok"])

bad = power_system(2, 10, 3, 5, lambda i, n: i + n + (1 if i >= 1 and n >= 1 else 0))
out = check_filtered_condition(bad, 1)
print("perturbed tower:", out["holds"], "witness:", out["witness"])

# exp and log on p^2 Z/p^m keep valuations and invert each other.
p, m = 3, 5
x = 9
e = exp_trunc(x, p, m)
print(f"exp({x}) = {e} mod {p**m}, valuation of exp - 1 = {vp((e - 1) % p**m, p)}")
print("log(exp(x)) - x =", (log1p_trunc(e - 1, p, m) - x) % p**m)
for q in (2, 3, 5):
    print(q, verify_log_exp(q, 6))
