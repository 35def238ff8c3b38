"""The discount regimes side by side: curve data behind the usual plots.

Prints D(t) tables for each regime (the same data `desirables curves` emits
as CSV).  Run:  python3 demos/02_discount_regimes.py
"""

import numpy as np

from desirables import (
    Exponential,
    GeneralizedHyperbolic,
    Hybrid,
    Hyperbolic,
    InverseLog,
    QuasiHyperbolic,
    ScaleDependent,
    StateDependent,
)

ts = np.arange(0.0, 11.0)

print("=== present bias: varying beta at delta = 0.95 ===")
print("t".rjust(4) + "".join(f"beta={b}".rjust(12) for b in (0.6, 0.7, 0.8, 0.9)))
for t in ts[:6]:
    row = f"{t:4.0f}"
    for b in (0.6, 0.7, 0.8, 0.9):
        row += f"{QuasiHyperbolic(b, 0.95).factor(float(t)):12.4f}"
    print(row)
print("note the discontinuity between t = 0 and any positive delay")

print()
print("=== hyperbolic vs generalized hyperbolic ===")
curves = {
    "exp r=.3": Exponential(0.3),
    "hyp k=.5": Hyperbolic(0.5),
    "gh p=.5": GeneralizedHyperbolic(0.5, 0.5),
    "gh p=2": GeneralizedHyperbolic(0.5, 2.0),
    "gh p=1": GeneralizedHyperbolic(0.5, 1.0),  # identical to hyp k=.5
}
print("t".rjust(4) + "".join(name.rjust(12) for name in curves))
for t in ts:
    print(f"{t:4.0f}" + "".join(f"{d.factor(float(t)):12.4f}" for d in curves.values()))

print()
print("=== a hybrid mixture sits between its components ===")
d1, d2 = Exponential(0.5), Hyperbolic(1.0)
print("t".rjust(4) + "exp".rjust(12) + "hyp".rjust(12) + "".join(f"lam={l}".rjust(12) for l in (0.25, 0.5, 0.75)))
for t in ts[:8]:
    row = f"{t:4.0f}{d1.factor(float(t)):12.4f}{d2.factor(float(t)):12.4f}"
    for lam in (0.25, 0.5, 0.75):
        row += f"{Hybrid(lam, d1, d2).factor(float(t)):12.4f}"
    print(row)

print()
print("=== scale-dependent: larger rewards decay more slowly ===")
scale = ScaleDependent(Exponential(1.0), InverseLog(10.0))
print("t".rjust(4) + "".join(f"x={x}".rjust(12) for x in (10, 100, 1000)))
for t in ts[:5]:
    print(f"{t:4.0f}" + "".join(f"{scale.factor(float(t), x=float(x)):12.4f}" for x in (10, 100, 1000)))

print()
print("=== state-dependent: one curve per economic state ===")
state = StateDependent({"expansion": 0.05, "recession": 0.15})
print("t".rjust(4) + "expansion".rjust(12) + "recession".rjust(12))
for t in ts[:6]:
    print(
        f"{t:4.0f}"
        + f"{state.factor(float(t), s='expansion'):12.4f}"
        + f"{state.factor(float(t), s='recession'):12.4f}"
    )
