"""Tour of the utility zoo: evaluation, exact inverses, and admissibility audits.

Every utility is strictly increasing on its domain and normalized so that
(where 0 is in the domain) u(0) = 0.  Run:  python3 demos/01_utility_zoo.py
"""

import numpy as np

from desirables import (
    Composed,
    Linear,
    LogShift,
    PhiPoly,
    PhiScale,
    PowerDiscounted,
    Sqrt,
    audit_admissibility,
)

print("=== evaluation ===")
zoo = [Linear(), LogShift(), Sqrt(), PowerDiscounted(0.5)]
xs = [0.5, 1.0, 10.0, 100.0]
header = "x".rjust(8) + "".join(u.kind.rjust(18) for u in zoo)
print(header)
for x in xs:
    row = f"{x:8.2f}"
    for u in zoo:
        row += f"{u.eval(x):18.5f}"
    print(row)

print()
print("=== the power family interpolates between linear and logarithmic ===")
# alpha = 0 is the identity; as alpha -> 1 values approach log(x) + 1.
for alpha in (0.0, 0.5, 0.9, 0.999):
    u = PowerDiscounted(alpha)
    print(f"alpha={alpha:<6} u(7) = {u.eval(7.0):.5f}   (log(7)+1 = {np.log(7) + 1:.5f})")

print()
print("=== inverses are exact where closed forms exist ===")
for u in zoo:
    x = 7.5
    v = u.eval(x)
    print(f"{u.kind:>18}: u({x}) = {v:.6f}, inverse -> {u.inverse(v):.12f}")

print()
print("=== admissibility audit on a grid ===")
good = Composed(LogShift(), PhiScale(2.0))
bad = Composed(Linear(), PhiPoly((0.0, -1.0, 0.0, 1.0)))  # w^3 - w is not monotone
for u in (good, bad):
    report = audit_admissibility(u, grid_n=201, lo=-0.9, hi=5.0)
    print(
        f"{u.kind} with {u.phi.form}: strictly_increasing={report.strictly_increasing}"
        f" zero_normalized={report.zero_normalized}"
        f" violations={len(report.violations)}"
    )
