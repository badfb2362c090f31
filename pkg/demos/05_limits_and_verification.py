#!/usr/bin/env python3
"""The two degeneration limits, and the self-verification harness.

As lambda -> 0 the deformation dissolves and the classical gamma function
returns; as lambda -> 1 the function collapses to pi/sin(pi z).  The library
ships a harness that re-derives every identity it implements on random
samples; this script runs a small pass of it.
"""

import math

from degamma import (
    DegenerateParameter,
    degenerate_gamma,
    gamma,
    run_identity_suite,
    run_limit_checks,
    sin_pi,
)

print(__doc__)

print("lambda -> 0 (entries are relative deviations from the gamma function):")
print(f"{'s':>8} " + " ".join(f"lam=1e-{k:<2d}" for k in (2, 4, 6)))
for s in (0.5, 1.5, 2.5, 1 + 1j):
    devs = []
    for k in (2, 4, 6):
        p = DegenerateParameter(10.0**-k)
        v = degenerate_gamma(s, p).value
        devs.append(abs(v - gamma(s)) / abs(gamma(s)))
    print(f"{str(s):>8} " + " ".join(f"{d:9.2e}" for d in devs))

print()
print("lambda -> 1 (deviations from pi/sin(pi z)):")
for z in (0.3, 0.5 + 0.5j):
    devs = []
    for k in (2, 4, 6):
        p = DegenerateParameter(1.0 - 10.0**-k)
        v = degenerate_gamma(z, p).value
        target = math.pi / sin_pi(z)
        devs.append(abs(v - target) / abs(target))
    print(f"{str(z):>10} " + " ".join(f"{d:9.2e}" for d in devs))

print()
print("Limit checks as shipped in the harness:")
for rep in run_limit_checks():
    print(f"  {'PASS' if rep.passed else 'FAIL'} {rep.check_name} "
          f"(max rel err {rep.max_rel_err:.2e})")

print()
print("A quick pass of the full identity suite (10 samples per check):")
for rep in run_identity_suite(seed=0, samples=10):
    print(f"  {'PASS' if rep.passed else 'FAIL'} {rep.check_name:34s} "
          f"max rel err {rep.max_rel_err:.2e}")
print()
print("The CLI equivalent is:  degamma verify --seed 0 --samples 100")
