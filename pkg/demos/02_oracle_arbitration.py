# Brute force against closed form. The LP oracle knows nothing about the
# bounds; it enumerates one price per label and solves an exact LP for each.

from fractions import Fraction as F

from segguard import best_case_cs, compute_bounds, validate_database, validate_market, worst_case_cs
from segguard.oracle import upper_threshold

x = validate_market([1, 2, 3], ["2/5", "1/2", "1/10"])
b = compute_bounds(x)

print("  t     worst-case cs   best-case cs (witness)")
for t in (F(1, 4), F(3, 10), F(31, 100), F(2, 5), F(1, 2)):
    d = validate_database([t, 1 - t])
    lo, hi = worst_case_cs(x, d), best_case_cs(x, d)
    note = "" if hi.attained else "  sup not attained"
    print(f"{str(t):>6}  {str(lo.value):>12}   {str(hi.value):>6} ({hi.witness_value}){note}")

# every split with t in (3/10, 1/2] keeps the worst case at 1/10 and can beat it
# the largest segment in which price 1 is optimal has mass 4/5; that is lambda_upper
print()
print("lambda_upper formula:", b.lambda_upper, " LP threshold:", upper_threshold(x))

# a market where lambda_upper is below 1/2, so two-label databases can sit on it
y = validate_market([1, 2, 3, 4], [0, "1/7", "5/7", "1/7"])
by = compute_bounds(y)
print()
print("second market: lambda_lower", by.lambda_lower, " lambda_upper", by.lambda_upper)
for t in (by.lambda_upper - F(1, 1000), by.lambda_upper):
    r = best_case_cs(y, validate_database([t, 1 - t]))
    better = r.achieved and r.witness_value > by.u_star
    print(f"  t={t}: best case {r.value}, strictly better than uniform: {better}")
