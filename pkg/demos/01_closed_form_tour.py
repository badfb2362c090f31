#!/usr/bin/env python3
"""A first tour of the degenerate gamma function.

The function deforms the classical gamma function with a parameter
lambda in (0, 1): on the strip 0 < Re(s) < 1/lambda it is the integral of
(1 + lambda*t)**(-1/lambda) * t**(s-1), and the closed form continues it to
the whole plane.  This script prints a small table over s and lambda and
demonstrates the two functional equations that pin the function down.
"""

from degamma import DegenerateParameter, degenerate_gamma, difference_step, gamma

print(__doc__)

print("Values across the strip (rows: s, columns: lambda):")
lams = [0.1, 0.3, 0.5, 0.7]
print(f"{'s':>6} " + " ".join(f"lam={lam:<10}" for lam in lams) + "  classical")
for s in [0.5, 1.0, 1.5, 2.0, 2.5]:
    row = []
    for lam in lams:
        res = degenerate_gamma(s, DegenerateParameter(lam))
        row.append("   pole   " if res.status.value == "pole" else f"{res.value.real:10.6f}")
    print(f"{s:6.2f} " + "  ".join(row) + f"  {gamma(s).real:10.6f}")

print()
print("Note the column drift: as lambda shrinks the values approach the")
print("classical gamma column, and lam=0.5 already has a pole at s = 2 = 1/lambda.")

print()
print("The difference equation replaces Gamma(s+1) = s Gamma(s):")
p = DegenerateParameter(0.25)
for s in [0.5, 1.0, 2.0]:
    factor = difference_step(s, p)
    lhs = degenerate_gamma(s + 1, p).value
    rhs = factor * degenerate_gamma(s, p).value
    print(f"  s={s:4}: step factor s/(1-lam*(s+1)) = {factor.real:10.6f}, "
          f"residual = {abs(lhs - rhs)/abs(lhs):.2e}")

print()
print("And the symmetry identity ties s to 1/lambda - s:")
p = DegenerateParameter(0.5)
for s in [0.3, 0.75, 1.0]:
    partner = p.inv_lambda - s
    lhs = p.lam**s * degenerate_gamma(s, p).value
    rhs = p.lam**partner * degenerate_gamma(partner, p).value
    print(f"  s={s:5}: lam^s G(s) = {lhs.real:12.8f}, "
          f"lam^(1/lam-s) G(1/lam-s) = {rhs.real:12.8f}")

print()
print("At positive integers the function is an exact rational in lambda:")
p = DegenerateParameter(0.25)
print(f"  G_0.25(3) = {degenerate_gamma(3, p).value.real:.12f}  (exactly 64/3 = {64/3:.12f})")
print(f"  G_0.25(2) = {degenerate_gamma(2, p).value.real:.12f}  (exactly  8/3 = {8/3:.12f})")

print()
print(f"Finally, G_lam(1) = 1/(1-lam): at lam=0.5 -> "
      f"{degenerate_gamma(1, DegenerateParameter(0.5)).value.real:.12f}")
