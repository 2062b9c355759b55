# A three-valuation market, start to finish: bounds, decomposition, and the two
# witnesses. Run with `python demos/01_worked_market.py`.

from fractions import Fraction as F

from segguard import (
    classify,
    compute_bounds,
    construct_cs_improving,
    construct_cs_reducing,
    evaluate,
    greedy_decompose,
    validate_database,
    validate_market,
)
from segguard.formats import decomposition_table

x = validate_market([1, 2, 3], ["2/5", "1/2", "1/10"])
b = compute_bounds(x)

# uniform pricing: price 2, consumers keep 1/10, the seller earns 6/5
print("uniform price:", x.grid[b.i_star], " consumer surplus:", b.u_star, " profit:", b.pi_star)
print("lambda_lower:", b.lambda_lower, " lambda_upper:", b.lambda_upper)
print()

# the greedy decomposition; the top valuation 3 only appears in the first
# extreme market, and that market's weight is exactly lambda_lower
print(decomposition_table(greedy_decompose(x)))

for masses in (["1/2", "1/2"], ["3/10", "7/10"], ["2/5", "3/5"], [1]):
    d = validate_database(masses)
    c = classify(x, d, b)
    print(f"database {[str(m) for m in d.masses]}: worst-case optimal={c.in_wc} can improve={c.in_f2}")
print()

# a label holding 3/10 of consumers is exactly at the bound, so it is unsafe:
# nature can give it the first extreme market and push its price to 3
seg = construct_cs_reducing(x, validate_database(["3/10", "7/10"]), 0, b)
out = evaluate(x, seg)
print("reducing witness prices:", [str(x.grid[p]) for p in out.prices], " cs:", out.cs, " ps:", out.ps)

# with labels 2/5 and 3/5 the database is safe, and mostly-low segments let
# the seller charge 1 to some consumers, raising both surpluses
seg = construct_cs_improving(x, validate_database(["2/5", "3/5"]), 0, b, epsilon=F(1, 5))
out = evaluate(x, seg)
print("improving witness prices:", [str(x.grid[p]) for p in out.prices], " cs:", out.cs, " ps:", out.ps)
