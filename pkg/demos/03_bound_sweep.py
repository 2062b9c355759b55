# How the lower bound moves as high-value consumers become rarer.
# Family: x = (2/5, 3/5 - x3, x3) on valuations {1, 2, 3}.

from segguard.cli import sweep_rows

rows = sweep_rows(20)
for x3, _, lam, lam_dec, v_star in rows:
    bar = "#" * round(lam_dec * 100)
    print(f"x3={str(x3):>6}  lambda_lower={str(lam):>7}  price={v_star}  {bar}")

# the bound is 3 * x3 along the whole family: fewer consumers at 3 means even
# small labels are safe
assert all(lam == 3 * x3 for x3, _, lam, _, _ in rows)
