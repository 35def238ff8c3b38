"""Discount regimes D(t[, x][, s]) in (0, 1], all normalized to 1 at t = 0.

Kinds
-----
Exponential            D(t) = exp(-r t)
Hyperbolic             D(t) = 1 / (1 + k t)
QuasiHyperbolic        D(0) = 1, D(t) = beta * delta^t for t > 0
GeneralizedHyperbolic  D(t) = (1 + k t)^(-p)
ScaleDependent         D(t, x) = base(t)^eta(x)
StateDependent         D(t, s) = exp(-r(s) t)
Hybrid                 D(t) = lambda d1(t) + (1 - lambda) d2(t)

Time units are abstract; rates and k are per unit time.  ``round_factors``
replays published two-decimal factor rounding: primitive regimes round their
factor to two decimals and a hybrid combines the rounded components without
re-rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MissingArgument, UnknownState

__all__ = [
    "DiscountSpec",
    "Exponential",
    "Hyperbolic",
    "QuasiHyperbolic",
    "GeneralizedHyperbolic",
    "ScaleDependent",
    "StateDependent",
    "Hybrid",
    "EtaSpec",
    "InverseLog",
    "TabulatedEta",
    "factor",
    "uses_states",
    "ConstraintReport",
    "check_scale_monotonicity",
]

# Nested ScaleDependent/Hybrid composition is allowed to this depth.
_MAX_DEPTH = 8


class DiscountSpec:
    """Base class for discount regimes."""

    kind: str = "abstract"

    def factor(
        self,
        t: float,
        x: float | None = None,
        s: str | None = None,
        *,
        round_factors: bool = False,
    ) -> float:
        """Discount factor at delay ``t`` (reward ``x`` / state ``s`` where required)."""
        if t < 0:
            raise DomainError(f"delay must be nonnegative, got {t!r}")
        return self._factor(float(t), x, s, round_factors)

    def _factor(self, t, x, s, rounded) -> float:
        raise NotImplementedError

    def _depth(self) -> int:
        return 1


def _rounded(value: float, rounded: bool) -> float:
    return round(value, 2) if rounded else value


def _check_depth(spec: DiscountSpec) -> None:
    if spec._depth() > _MAX_DEPTH:
        raise ValueError(f"discount nesting deeper than {_MAX_DEPTH} levels")


@dataclass(frozen=True)
class Exponential(DiscountSpec):
    """Constant-rate decay exp(-r t); the unique time-translation-invariant regime."""

    r: float

    kind = "exponential"

    def __post_init__(self):
        if not self.r >= 0:
            raise ValueError(f"rate must be nonnegative, got {self.r!r}")

    def _factor(self, t, x, s, rounded):
        return _rounded(math.exp(-self.r * t), rounded)


@dataclass(frozen=True)
class Hyperbolic(DiscountSpec):
    """1 / (1 + k t): declining discount rate k / (1 + k t), k > 0."""

    k: float

    kind = "hyperbolic"

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k!r}")

    def _factor(self, t, x, s, rounded):
        return _rounded(1.0 / (1.0 + self.k * t), rounded)


@dataclass(frozen=True)
class QuasiHyperbolic(DiscountSpec):
    """Present bias beta in (0, 1] at any positive delay, then exponential decay delta^t.

    The indicator on t > 0 is an exact comparison: delay values are inputs,
    never computed, so no epsilon applies.
    """

    beta: float
    delta: float

    kind = "quasi_hyperbolic"

    def __post_init__(self):
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta!r}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta!r}")

    def _factor(self, t, x, s, rounded):
        if t == 0:
            return 1.0
        return _rounded(self.beta * self.delta**t, rounded)


@dataclass(frozen=True)
class GeneralizedHyperbolic(DiscountSpec):
    """(1 + k t)^(-p): p = 1 recovers the hyperbolic regime, larger p steepens decay."""

    k: float
    p: float

    kind = "generalized_hyperbolic"

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k!r}")
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p!r}")

    def _factor(self, t, x, s, rounded):
        return _rounded((1.0 + self.k * t) ** (-self.p), rounded)


class EtaSpec:
    """Reward-dependent exponent eta(x) > 0 modulating a base discount curve."""

    form: str = "abstract"
    #: Exclusive lower bound on admissible rewards; None when unrestricted.
    domain_min: float | None = None

    def value(self, x: float) -> float:
        raise NotImplementedError

    def derivative(self, x: float) -> float:
        raise NotImplementedError

    def _check(self, x: float) -> None:
        if self.domain_min is not None and not x > self.domain_min:
            raise DomainError(
                f"{self.form}: reward {x!r} outside eta domain x > {self.domain_min!r}"
            )


@dataclass(frozen=True)
class InverseLog(EtaSpec):
    """eta(x) = 1 / log_b(x) on x > 1; larger rewards get smaller effective rates."""

    log_base: float = 10.0

    form = "inverse_log"
    domain_min = 1.0

    def __post_init__(self):
        if not self.log_base > 1:
            raise ValueError(f"log base must exceed 1, got {self.log_base!r}")

    def value(self, x: float) -> float:
        self._check(x)
        return 1.0 / math.log(x, self.log_base)

    def derivative(self, x: float) -> float:
        # d/dx [1 / log_b x] = -1 / (x ln(b) log_b(x)^2), analytic.
        self._check(x)
        lb = math.log(self.log_base)
        return -1.0 / (x * lb * math.log(x, self.log_base) ** 2)


@dataclass(frozen=True)
class TabulatedEta(EtaSpec):
    """Tabulated eta: linear interpolation inside the table, constant beyond its ends."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    form = "tabulated"
    domain_min = None

    def __post_init__(self):
        xs = tuple(float(v) for v in self.xs)
        ys = tuple(float(v) for v in self.ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if len(xs) != len(ys) or len(xs) < 1:
            raise ValueError("table needs matching nonempty x/y sequences")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("table x values must be strictly increasing")
        if any(y <= 0 for y in ys):
            raise ValueError("eta values must be positive")

    def value(self, x: float) -> float:
        return float(np.interp(x, self.xs, self.ys))

    def derivative(self, x: float) -> float:
        # Central differences at relative step 1e-5 * x.
        h = 1e-5 * abs(x) if x != 0 else 1e-5
        return (self.value(x + h) - self.value(x - h)) / (2 * h)


@dataclass(frozen=True)
class ScaleDependent(DiscountSpec):
    """Magnitude effect base(t)^eta(x): reward-dependent patience."""

    base: DiscountSpec
    eta: EtaSpec

    kind = "scale_dependent"

    def __post_init__(self):
        _check_depth(self)

    def _depth(self) -> int:
        return 1 + self.base._depth()

    def _factor(self, t, x, s, rounded):
        if x is None:
            raise MissingArgument("scale-dependent discounting needs the reward x")
        exponent = self.eta.value(float(x))
        base = self.base._factor(t, x, s, False)
        return _rounded(base**exponent, rounded)


@dataclass(frozen=True)
class StateDependent(DiscountSpec):
    """Per-state exponential decay exp(-r(s) t) from a label -> rate map."""

    rates: tuple[tuple[str, float], ...]

    kind = "state_dependent"

    def __init__(self, rates):
        items = tuple(sorted((str(k), float(v)) for k, v in dict(rates).items()))
        object.__setattr__(self, "rates", items)
        if not items:
            raise ValueError("rate map must not be empty")
        if any(r <= 0 for _, r in items):
            raise ValueError("every state rate must be positive")

    def rate(self, s: str) -> float:
        for label, r in self.rates:
            if label == s:
                return r
        raise UnknownState(f"state {s!r} not in rate map {[l for l, _ in self.rates]!r}")

    def _factor(self, t, x, s, rounded):
        if s is None:
            raise MissingArgument("state-dependent discounting needs a state label")
        return _rounded(math.exp(-self.rate(s) * t), rounded)


@dataclass(frozen=True)
class Hybrid(DiscountSpec):
    """Convex mixture lambda d1(t) + (1 - lambda) d2(t), lambda in [0, 1]."""

    lam: float
    d1: DiscountSpec
    d2: DiscountSpec

    kind = "hybrid"

    def __post_init__(self):
        if not 0 <= self.lam <= 1:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam!r}")
        _check_depth(self)

    def _depth(self) -> int:
        return 1 + max(self.d1._depth(), self.d2._depth())

    def _factor(self, t, x, s, rounded):
        return self.lam * self.d1._factor(t, x, s, rounded) + (1.0 - self.lam) * self.d2._factor(
            t, x, s, rounded
        )


def factor(
    d: DiscountSpec,
    t: float,
    x: float | None = None,
    s: str | None = None,
    *,
    round_factors: bool = False,
) -> float:
    """Discount factor of ``d`` at delay ``t``; see :meth:`DiscountSpec.factor`."""
    return d.factor(t, x, s, round_factors=round_factors)


def uses_states(d: DiscountSpec) -> bool:
    """True when the regime (or any nested component) reads state labels."""
    if isinstance(d, StateDependent):
        return True
    if isinstance(d, Hybrid):
        return uses_states(d.d1) or uses_states(d.d2)
    if isinstance(d, ScaleDependent):
        return uses_states(d.base)
    return False


@dataclass(frozen=True)
class ConstraintReport:
    """Grid audit of the scale-dependent monotonicity constraint.

    Records every (t, x) grid point where 1 + eta'(x) * x * ln(base(t)) fails
    to stay positive; ``passed`` is True when no violations were found.
    """

    passed: bool
    violations: tuple[tuple[float, float, float], ...]
    t_grid: tuple[float, ...]
    x_grid: tuple[float, ...]


def check_scale_monotonicity(d: ScaleDependent, t_grid, x_grid) -> ConstraintReport:
    """Audit that x -> base(t)^eta(x) * x stays strictly increasing on a grid.

    The criterion at each grid point is 1 + eta'(x) * x * ln(base(t)) > 0,
    with eta' analytic for inverse-log and central-differenced for tables.
    """
    ts = tuple(float(t) for t in t_grid)
    xs = tuple(float(x) for x in x_grid)
    if not ts or not xs:
        raise ValueError("grids must be nonempty")
    for x in xs:
        d.eta._check(x)
    violations = []
    for t in ts:
        log_base_factor = math.log(d.base.factor(t))
        for x in xs:
            value = 1.0 + d.eta.derivative(x) * x * log_base_factor
            if value <= 0:
                violations.append((t, x, value))
    return ConstraintReport(
        passed=not violations,
        violations=tuple(violations),
        t_grid=ts,
        x_grid=xs,
    )
