"""Effective utility of dated payments and preference-reversal scans.

The valuation of a reward x delayed by t is v(x, t) = u(D(t) x); schedules
sum per-payment effective utilities.  A reversal scan shifts every payment
of two schedules by a common delay and reports where the pairwise preference
flips relative to the unshifted baseline.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

from .discount import DiscountSpec, uses_states
from .utility import Utility

__all__ = [
    "DatedPayment",
    "PaymentSchedule",
    "Preference",
    "effective_utility",
    "schedule_value",
    "compare",
    "shift_schedule",
    "ScanResult",
    "reversal_scan",
]


@dataclass(frozen=True)
class DatedPayment:
    """A reward paid at a nonnegative delay, optionally tagged with a state label."""

    amount: float
    time: float
    state: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "amount", float(self.amount))
        object.__setattr__(self, "time", float(self.time))
        if self.time < 0:
            raise ValueError(f"payment time must be nonnegative, got {self.time!r}")


@dataclass(frozen=True)
class PaymentSchedule:
    """A nonempty list of dated payments; evaluation order does not matter."""

    payments: tuple[DatedPayment, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "payments", tuple(self.payments))
        if not self.payments:
            raise ValueError("schedule needs at least one payment")


class Preference(enum.Enum):
    A = "A"
    B = "B"
    INDIFFERENT = "indifferent"


def effective_utility(
    u: Utility,
    d: DiscountSpec,
    x: float,
    t: float,
    s: str | None = None,
    *,
    round_factors: bool = False,
) -> float:
    """u(D(t[, x][, s]) * x): the worth of reward x delayed by t."""
    return u.eval(d.factor(t, x, s, round_factors=round_factors) * x)


def schedule_value(
    u: Utility,
    d: DiscountSpec,
    sch: PaymentSchedule,
    *,
    round_factors: bool = False,
) -> float:
    """Sum of per-payment effective utilities, invariant to payment order."""
    if not uses_states(d) and any(p.state is not None for p in sch.payments):
        warnings.warn(
            f"schedule {sch.label!r} carries state labels but the discount "
            "regime is state-independent; labels are ignored",
            stacklevel=2,
        )
    return sum(
        effective_utility(u, d, p.amount, p.time, p.state, round_factors=round_factors)
        for p in sch.payments
    )


def compare(
    u: Utility,
    d: DiscountSpec,
    a: PaymentSchedule,
    b: PaymentSchedule,
    *,
    tol: float = 1e-9,
    round_factors: bool = False,
) -> Preference:
    """Preference between two schedules; Indifferent within absolute ``tol``."""
    va = schedule_value(u, d, a, round_factors=round_factors)
    vb = schedule_value(u, d, b, round_factors=round_factors)
    if va > vb + tol:
        return Preference.A
    if vb > va + tol:
        return Preference.B
    return Preference.INDIFFERENT


def shift_schedule(sch: PaymentSchedule, delta: float) -> PaymentSchedule:
    """The schedule with every payment delayed by a common ``delta`` >= 0."""
    if delta < 0:
        raise ValueError(f"shift must be nonnegative, got {delta!r}")
    payments = tuple(
        DatedPayment(p.amount, p.time + delta, p.state) for p in sch.payments
    )
    return PaymentSchedule(payments, sch.label)


@dataclass(frozen=True)
class ScanResult:
    """Preference trace over common time shifts.

    ``baseline`` is the preference with no shift; ``first_flip`` is the
    smallest scanned shift whose strict preference opposes a strict baseline,
    or None when no such reversal occurs.
    """

    trace: tuple[tuple[float, Preference], ...]
    baseline: Preference
    first_flip: float | None

    @property
    def reversed(self) -> bool:
        return self.first_flip is not None


def reversal_scan(
    u: Utility,
    d: DiscountSpec,
    a0: PaymentSchedule,
    b0: PaymentSchedule,
    shifts,
    *,
    tol: float = 1e-9,
    round_factors: bool = False,
) -> ScanResult:
    """Compare the two schedules under every common shift, in increasing order."""
    deltas = sorted(float(s) for s in shifts)
    if not deltas:
        raise ValueError("need at least one shift")
    if deltas[0] < 0:
        raise ValueError(f"shifts must be nonnegative, got {deltas[0]!r}")
    baseline = compare(u, d, a0, b0, tol=tol, round_factors=round_factors)
    trace = []
    first_flip = None
    opposite = {Preference.A: Preference.B, Preference.B: Preference.A}
    for delta in deltas:
        pref = compare(
            u,
            d,
            shift_schedule(a0, delta),
            shift_schedule(b0, delta),
            tol=tol,
            round_factors=round_factors,
        )
        trace.append((delta, pref))
        if first_flip is None and pref is opposite.get(baseline):
            first_flip = delta
    return ScanResult(trace=tuple(trace), baseline=baseline, first_flip=first_flip)
