#!/usr/bin/env python3
"""The degenerate beta function and its three faces.

B_lam(a, b) is the ratio G_lam(a) G_lam(b) / G_lam(a+b).  It can also be
written through the classical kernel (a mixed grouping of gamma factors) and
as an infinite product; at positive integers it reduces to exact falling-
factorial arithmetic.  This script shows all three paths agreeing and the
lambda -> 0 recovery of the classical beta function.
"""

from fractions import Fraction

from degamma import (
    DegenerateParameter,
    ProductSpec,
    beta,
    degenerate_beta,
    degenerate_beta_classical,
    degenerate_beta_product,
    falling_factorial_exact,
)

print(__doc__)

p = DegenerateParameter(0.25)
a, b = 0.5, 0.5
ratio = degenerate_beta(a, b, p).value
mixed = degenerate_beta_classical(a, b, p).value
product = degenerate_beta_product(a, b, p, ProductSpec(n_terms=10**6)).value
print(f"B_0.25(0.5, 0.5) three ways:")
print(f"  ratio path         : {ratio.real:.15f}")
print(f"  classical grouping : {mixed.real:.15f}")
print(f"  infinite product   : {product.real:.15f}   (truncated at N = 1e6)")

print()
print("Integer arguments reduce to exact rational arithmetic:")
lam = 0.1
exact = (
    falling_factorial_exact(1, 4, lam)
    / (falling_factorial_exact(1, 3, lam) * falling_factorial_exact(1, 2, lam))
    * Fraction(1, 2)
)
got = degenerate_beta(2, 1, DegenerateParameter(lam)).value
print(f"  B_0.1(2, 1) = {got.real:.15f}")
print(f"  exact       = {float(exact):.15f}  (= 7/18 at lambda exactly 1/10)")

print()
print("As lambda -> 0 the classical beta function reappears:")
print(f"{'lambda':>10} {'B_lam(2,3)':>14} {'classical':>12}")
for lam in (0.2, 0.05, 0.01, 0.001):
    v = degenerate_beta(2, 3, DegenerateParameter(lam)).value
    print(f"{lam:10g} {v.real:14.8f} {beta(2, 3).real:12.8f}")

print()
print("A sum landing on a pole sends the ratio to zero (with a note):")
res = degenerate_beta(1, 1, DegenerateParameter(0.5))  # a+b = 2 = 1/lambda
print(f"  B_0.5(1, 1) = {res.value}  note: {res.note}")
