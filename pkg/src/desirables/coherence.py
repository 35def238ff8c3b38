"""Acceptance sets over a utility-transformed cone, decided by linear programming.

Two acceptance semantics are exposed and cross-checked rather than collapsed:

* :func:`accepts` decides the natural extension of finitely many accepted
  generators: g is accepted iff u(g) componentwise dominates some conic
  combination of the transformed generators (decided by an LP with a
  margin-maximizing objective, tolerance 1e-9).
* :func:`rho` evaluates the representation semantics: a nonnegative weight
  vector ell with acceptance iff rho = ell . u(g) >= 0.

:func:`fit_functional` searches for a representation compatible with stated
accepted and rejected gambles; strict rejection is encoded with a
user-chosen margin epsilon because an LP cannot express strict inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import SpaceMismatch
from .gamble import Gamble, StateSpace, dominates, transform
from .utility import Utility

__all__ = [
    "AssessmentSet",
    "Functional",
    "AcceptanceDecision",
    "accept_decision",
    "accepts",
    "PartialLossReport",
    "check_partial_loss",
    "avoids_partial_loss",
    "Infeasible",
    "fit_constraints",
    "fit_functional",
    "rho",
    "check_ordering_invariance",
    "check_transform_invariance",
    "Finding",
    "audit",
    "cross_check_functional",
]

_TOL = 1e-9


@dataclass(frozen=True)
class AssessmentSet:
    """Generator gambles marked accepted (and optionally rejected) under one utility."""

    space: StateSpace
    utility: Utility
    accepted: tuple[Gamble, ...]
    rejected: tuple[Gamble, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "accepted", tuple(self.accepted))
        object.__setattr__(self, "rejected", tuple(self.rejected))
        for g in self.accepted + self.rejected:
            if g.space != self.space:
                raise SpaceMismatch(
                    f"gamble on {g.space.labels} does not live on {self.space.labels}"
                )
        # Fast necessary check: a sure loss can never be accepted.
        for i, g in enumerate(self.accepted):
            if g.rewards.max() < 0:
                raise ValueError(
                    f"accepted[{i}] is everywhere strictly negative: {g!r}"
                )

    def transformed_generators(self) -> np.ndarray:
        """m x n matrix whose columns are the utility transforms of the accepted gambles."""
        m, n = self.space.m, len(self.accepted)
        U = np.zeros((m, n))
        for i, g in enumerate(self.accepted):
            U[:, i] = transform(self.utility, g)
        return U


@dataclass(frozen=True)
class Functional:
    """A nonnegative, not-all-zero weight vector, stored normalized to unit l1 norm."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).copy()
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty vector")
        if w.min() < 0:
            raise ValueError(f"weights must be nonnegative, got {w!r}")
        total = w.sum()
        if total <= 0:
            raise ValueError("weights must not all be zero")
        w /= total
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functional):
            return NotImplemented
        return bool(np.array_equal(self.weights, other.weights))


@dataclass(frozen=True)
class AcceptanceDecision:
    """Outcome of a natural-extension query.

    ``witness`` holds the conic coefficients when accepted; ``certificate``
    holds a Farkas vector y >= 0 with U^T y >= 0 and y . u(g) < 0 proving
    rejection.  ``margin`` is the maximized minimum slack, capped at 1.
    """

    accepted: bool
    margin: float
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None


def _check_query(a: AssessmentSet, g: Gamble) -> None:
    if g.space != a.space:
        raise SpaceMismatch(
            f"gamble on {g.space.labels} does not live on {a.space.labels}"
        )


def accept_decision(a: AssessmentSet, g: Gamble) -> AcceptanceDecision:
    """Decide acceptance of ``g`` by LP over the transformed cone, with evidence."""
    _check_query(a, g)
    U = a.transformed_generators()
    c = transform(a.utility, g)
    m, n = U.shape

    # maximize s subject to U lam + s <= c, lam >= 0, s <= 1 (cap keeps it bounded).
    objective = tuple([0.0] * n + [1.0])
    rows = [lp.Constraint(tuple(U[j]) + (1.0,), lp.LE, float(c[j])) for j in range(m)]
    rows.append(lp.Constraint((0.0,) * n + (1.0,), lp.LE, 1.0))
    bounds = tuple([0.0] * n + [-math.inf])
    sol = lp.solve(lp.LpProblem(objective, tuple(rows), bounds))
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise AssertionError(f"margin LP cannot be {sol.status}")
    margin = float(sol.value)
    if margin >= -_TOL:
        witness = np.array(sol.x[:n])
        witness.flags.writeable = False
        return AcceptanceDecision(True, margin, witness=witness)

    # Rejected: extract a Farkas certificate.  With no generators the most
    # negative state certifies by itself; otherwise use the feasibility LP.
    if n == 0:
        y = np.zeros(m)
        y[int(np.argmin(c))] = 1.0
        y.flags.writeable = False
        return AcceptanceDecision(False, margin, certificate=y)
    feas_rows = [lp.Constraint(tuple(U[j]), lp.LE, float(c[j])) for j in range(m)]
    feas = lp.solve(lp.LpProblem((0.0,) * n, tuple(feas_rows), (0.0,) * n))
    certificate = None
    if feas.status is lp.LpStatus.INFEASIBLE and feas.certificate is not None:
        y = -np.asarray(feas.certificate)
        total = float(np.abs(y).sum())
        if total > 0:
            y = y / total
        y.flags.writeable = False
        certificate = y
    return AcceptanceDecision(False, margin, certificate=certificate)


def accepts(a: AssessmentSet, g: Gamble) -> bool:
    """True iff u(g) dominates a conic combination of the transformed generators."""
    return accept_decision(a, g).accepted


@dataclass(frozen=True)
class PartialLossReport:
    """Result of the sure-loss search; ``witness`` combines generators into a loss."""

    avoids: bool
    margin: float
    witness: np.ndarray | None = None
    combination: np.ndarray | None = None


def check_partial_loss(a: AssessmentSet) -> PartialLossReport:
    """Search the transformed cone for an everywhere strictly negative element.

    Decided by the LP  max eps : U lam <= -eps, sum lam <= 1, lam >= 0,
    eps >= 0.  A positive optimum exhibits the violating combination.
    """
    U = a.transformed_generators()
    m, n = U.shape
    objective = tuple([0.0] * n + [1.0])
    rows = [lp.Constraint(tuple(U[j]) + (1.0,), lp.LE, 0.0) for j in range(m)]
    rows.append(lp.Constraint((1.0,) * n + (0.0,), lp.LE, 1.0))
    sol = lp.solve(lp.LpProblem(objective, tuple(rows), (0.0,) * (n + 1)))
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise AssertionError(f"partial-loss LP cannot be {sol.status}")
    margin = float(sol.value)
    if margin <= _TOL:
        return PartialLossReport(True, margin)
    witness = np.array(sol.x[:n])
    witness.flags.writeable = False
    combo = U @ witness
    combo.flags.writeable = False
    return PartialLossReport(False, margin, witness=witness, combination=combo)


def avoids_partial_loss(a: AssessmentSet) -> bool:
    """True iff no everywhere strictly negative gamble is accepted by extension."""
    return check_partial_loss(a).avoids


@dataclass(frozen=True)
class Infeasible:
    """No compatible functional exists; ``conflict`` is an irreducible conflicting subset.

    Entries are ("accepted", i) or ("rejected", j) indices into the assessment
    set, found by greedy single-constraint deletion in input order.
    """

    conflict: tuple[tuple[str, int], ...]


def fit_functional(a: AssessmentSet, strict_margin: float = 1e-6) -> Functional | Infeasible:
    """Fit representation weights to the assessments by margin-maximizing LP.

    Searches w >= 0, sum w = 1 with w . u(f_i) >= 0 on every accepted f_i and
    w . u(g_j) <= -strict_margin on every rejected g_j, maximizing the minimum
    accepted margin.  With finitely many assessments the compatible weights
    form a polytope; the returned element is the margin maximizer, with no
    uniqueness claim.
    """
    if not 0 < strict_margin <= 1e-2:
        raise ValueError(f"strict margin must lie in (0, 1e-2], got {strict_margin!r}")
    UA = a.transformed_generators()
    UR = np.zeros((a.space.m, len(a.rejected)))
    for j, g in enumerate(a.rejected):
        UR[:, j] = transform(a.utility, g)

    labels = [("accepted", i) for i in range(UA.shape[1])]
    labels += [("rejected", j) for j in range(UR.shape[1])]

    def attempt(active: list[tuple[str, int]]):
        return _fit_lp(a.space.m, UA, UR, active, strict_margin)

    active = list(labels)
    result = attempt(active)
    if result is not None:
        return result

    for constraint in labels:
        trial = [c for c in active if c != constraint]
        if attempt(trial) is None:
            active = trial
    return Infeasible(conflict=tuple(active))


def fit_constraints(
    a: AssessmentSet, strict_margin: float = 1e-6
) -> tuple[tuple[np.ndarray, str, float], ...]:
    """The weight-space constraint list cutting out all compatible functionals.

    Rows are (coefficients, relation, rhs) over w in R^m: one ">= 0" row per
    accepted generator, one "<= -eps" row per rejected gamble, the simplex
    normalization, and nonnegativity.  With finitely many assessments the
    compatible weights form a polytope; :func:`fit_functional` returns its
    margin-maximizing element, and callers needing the whole face can work
    from this list.
    """
    rows: list[tuple[np.ndarray, str, float]] = []
    UA = a.transformed_generators()
    for i in range(UA.shape[1]):
        rows.append((UA[:, i].copy(), ">=", 0.0))
    for g in a.rejected:
        rows.append((transform(a.utility, g), "<=", -float(strict_margin)))
    rows.append((np.ones(a.space.m), "=", 1.0))
    for j in range(a.space.m):
        e = np.zeros(a.space.m)
        e[j] = 1.0
        rows.append((e, ">=", 0.0))
    return tuple(rows)


def _fit_lp(m, UA, UR, active, eps) -> Functional | None:
    """Margin LP over a constraint subset; None when unsatisfiable."""
    acc = [i for kind, i in active if kind == "accepted"]
    rej = [j for kind, j in active if kind == "rejected"]
    # Variables: w_1..w_m, margin (free).
    objective = tuple([0.0] * m + [1.0])
    rows = [lp.Constraint(tuple(UA[:, i]) + (-1.0,), lp.GE, 0.0) for i in acc]
    rows += [lp.Constraint(tuple(UR[:, j]) + (0.0,), lp.LE, -eps) for j in rej]
    rows.append(lp.Constraint((1.0,) * m + (0.0,), lp.EQ, 1.0))
    if not acc:  # margin otherwise unbounded
        rows.append(lp.Constraint((0.0,) * m + (1.0,), lp.LE, 1.0))
    bounds = tuple([0.0] * m + [-math.inf])
    sol = lp.solve(lp.LpProblem(objective, tuple(rows), bounds))
    if sol.status is not lp.LpStatus.OPTIMAL or sol.value < -_TOL:
        return None
    return Functional(np.maximum(sol.x[:m], 0.0))


def rho(ell: Functional, u: Utility, f: Gamble) -> float:
    """Risk functional: belief weights applied to the utility transform of ``f``."""
    return float(np.dot(ell.weights, transform(u, f)))


def check_ordering_invariance(ell: Functional, c: float, u: Utility, fs) -> bool:
    """True iff scaling the weights by c > 0 preserves acceptance signs and ranking."""
    if not c > 0:
        raise ValueError(f"scale must be positive, got {c!r}")
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one gamble")
    w = np.asarray(ell.weights)
    base = np.array([float(np.dot(w, transform(u, f))) for f in fs])
    scaled = np.array([float(np.dot(c * w, transform(u, f))) for f in fs])
    if not np.array_equal(np.sign(base), np.sign(scaled)):
        return False
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if np.sign(base[i] - base[j]) != np.sign(scaled[i] - scaled[j]):
                return False
    return True


def check_transform_invariance(u: Utility, phi, fs) -> bool:
    """True iff acceptance signs under pointwise thresholds agree for u and phi(u).

    ``phi`` must be strictly increasing with phi(0) = 0 on the evaluated
    range; violations of the precondition raise ValueError.
    """
    if abs(phi(0.0)) > 1e-12:
        raise ValueError(f"phi(0) must be 0, got {phi(0.0)!r}")
    fs = list(fs)
    values = sorted({float(v) for f in fs for v in transform(u, f)} | {0.0})
    for a, b in zip(values, values[1:]):
        if not phi(b) > phi(a):
            raise ValueError(f"phi is not strictly increasing between {a!r} and {b!r}")
    for f in fs:
        uf = transform(u, f)
        acc_u = bool(np.all(uf >= 0))
        acc_phi = all(phi(float(v)) >= 0 for v in uf)
        if acc_u != acc_phi:
            return False
    return True


@dataclass(frozen=True)
class Finding:
    """One coherence violation, renderable as an audit report line."""

    axiom: str
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom} VIOLATION: {self.detail}"


def _fmt_vec(v) -> str:
    return "[" + ", ".join(f"{x:.6g}" for x in np.asarray(v)) + "]"


def audit(a: AssessmentSet) -> tuple[Finding, ...]:
    """Run the executable F1-F3 checks and collect findings (empty when coherent)."""
    findings: list[Finding] = []
    loss = check_partial_loss(a)
    if not loss.avoids:
        findings.append(
            Finding(
                "F1",
                f"witness lambda={_fmt_vec(loss.witness)} "
                f"combination={_fmt_vec(loss.combination)}",
            )
        )
    flagged: set[int] = set()
    for j, g in enumerate(a.rejected):
        for i, f in enumerate(a.accepted):
            if dominates(g, f):
                flagged.add(j)
                findings.append(
                    Finding("F2", f"rejected[{j}] dominates accepted[{i}]")
                )
    for j, g in enumerate(a.rejected):
        if j in flagged:
            continue
        decision = accept_decision(a, g)
        if decision.accepted:
            findings.append(
                Finding(
                    "F3",
                    f"rejected[{j}] lies in the accepted cone, "
                    f"witness lambda={_fmt_vec(decision.witness)}",
                )
            )
    return tuple(findings)


def cross_check_functional(
    a: AssessmentSet, ell: Functional, candidates=(), tol: float = _TOL
) -> bool:
    """Audit that generator-accepted gambles score rho >= 0 under ``ell``.

    Checks every accepted generator, plus any candidate gambles that the
    natural extension accepts.
    """
    for f in a.accepted:
        if rho(ell, a.utility, f) < -tol:
            return False
    for g in candidates:
        if accepts(a, g) and rho(ell, a.utility, g) < -tol:
            return False
    return True
