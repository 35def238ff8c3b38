"""Acceptance inference in the utility-transformed cone.

Starting from a few gambles an agent calls acceptable, the natural
extension accepts anything whose transformed rewards dominate some conic
combination of the transformed generators.  A fitted weight vector then
gives the equivalent one-number test rho = weights . u(gamble) >= 0.
Run:  python3 demos/05_coherence_inference.py
"""

import numpy as np

from desirables import (
    AssessmentSet,
    Functional,
    Gamble,
    Infeasible,
    LogShift,
    StateSpace,
    accept_decision,
    audit,
    avoids_partial_loss,
    check_partial_loss,
    fit_functional,
    rho,
)

space = StateSpace(("up", "down"))
u = LogShift()

print("=== an agent's stated assessments (log utility) ===")
accepted = (
    Gamble(space, [2.0, -0.5]),   # likes upside exposure
    Gamble(space, [-0.5, 1.0]),   # and a hedge the other way
)
aset = AssessmentSet(space, u, accepted)
for i, g in enumerate(accepted):
    print(f"  accepted[{i}] = {g}")
print(f"  avoids partial loss: {avoids_partial_loss(aset)}")

print()
print("=== natural-extension queries ===")
queries = [
    Gamble(space, [4.0, -0.8]),    # roughly a scaled-up first generator
    Gamble(space, [0.5, 0.25]),    # no losses anywhere: free acceptance
    Gamble(space, [-0.9, 0.3]),    # too much downside
]
for g in queries:
    decision = accept_decision(aset, g)
    verdict = "accept" if decision.accepted else "reject"
    extra = ""
    if decision.accepted:
        lam = ", ".join(f"{v:.3f}" for v in decision.witness)
        extra = f" (witness lambda = [{lam}])"
    print(f"  {g} -> {verdict}{extra}")

print()
print("=== representation: weights with acceptance iff rho >= 0 ===")
rejected = (Gamble(space, [-0.9, 0.3]),)
result = fit_functional(AssessmentSet(space, u, accepted, rejected), strict_margin=1e-6)
assert isinstance(result, Functional)
w = ", ".join(f"{v:.4f}" for v in result.weights)
print(f"  fitted weights = [{w}]")
for g in queries:
    print(f"  rho({g}) = {rho(result, u, g):+.4f}")

print()
print("=== incoherent assessments are caught with witnesses ===")
space2 = StateSpace(("s1", "s2"))
bad = AssessmentSet(space2, LogShift(), (Gamble(space2, [0.6, -0.5]), Gamble(space2, [-0.5, 0.6])))
report = check_partial_loss(bad)
print(f"  avoids partial loss: {report.avoids}")
for finding in audit(bad):
    print(f"  {finding}")

print()
print("=== contradictory assessments yield an irreducible conflict set ===")
g = Gamble(space2, [1.0, -0.5])
conflict = fit_functional(AssessmentSet(space2, LogShift(), (g,), (g,)))
assert isinstance(conflict, Infeasible)
print(f"  conflict: {conflict.conflict}")
