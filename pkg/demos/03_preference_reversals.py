"""Preference reversals: how a common delay flips pairwise choices.

Three classic stories.  Each compares a smaller-sooner against a
larger-later payment, then pushes both into the future until the ordering
flips.  Exponential discounting with linear utility never flips, which
makes it the control.  Run:  python3 demos/03_preference_reversals.py
"""

from desirables import (
    DatedPayment,
    Exponential,
    Hybrid,
    Hyperbolic,
    LogShift,
    PaymentSchedule,
    QuasiHyperbolic,
    Linear,
    Sqrt,
    reversal_scan,
    schedule_value,
    shift_schedule,
)


def pay(amount, t, label):
    return PaymentSchedule((DatedPayment(amount, t),), label=label)


def show(title, u, d, a, b, shifts):
    print(f"=== {title} ===")
    res = reversal_scan(u, d, a, b, shifts)
    for delta, pref in res.trace:
        va = schedule_value(u, d, shift_schedule(a, delta))
        vb = schedule_value(u, d, shift_schedule(b, delta))
        choice = {"A": a.label, "B": b.label}.get(pref.value, "indifferent")
        print(f"  shift {delta:5.1f}:  {a.label} = {va:9.3f}  {b.label} = {vb:9.3f}  -> {choice}")
    if res.first_flip is None:
        print("  no reversal at any scanned shift")
    else:
        print(f"  preference flips at a shift of {res.first_flip:g}")
    print()


# An investment manager weighing $1000 now against $1200 a year later,
# with log utility and hyperbolic discounting.  Both payments pushed five
# years out reverse the choice.
show(
    "hyperbolic: $1000 now vs $1200 in a year",
    LogShift(),
    Hyperbolic(0.5),
    pay(1000, 0, "$1000 sooner"),
    pay(1200, 1, "$1200 later"),
    [0, 1, 2, 3, 4, 5],
)

# A household choosing between accessible savings and a one-month lock-in:
# present bias dominates until both options are a year away.
show(
    "quasi-hyperbolic: $100 accessible vs $120 locked one month",
    Sqrt(),
    QuasiHyperbolic(0.7, 0.95),
    pay(100, 0, "$100 sooner"),
    pay(120, 1, "$120 locked"),
    [0, 3, 6, 12],
)

# A half-exponential, half-hyperbolic agent: steep near-term discounting,
# hyperbolic patience far out.
show(
    "hybrid mixture: $1000 now vs $1500 in a year",
    Linear(),
    Hybrid(0.5, Exponential(0.5), Hyperbolic(1.0)),
    pay(1000, 0, "$1000 sooner"),
    pay(1500, 1, "$1500 later"),
    [0, 5, 10],
)

# Control: constant-rate discounting is translation invariant, so the
# early choice persists no matter how far both payments slide.
show(
    "exponential control: $100 now vs $120 in a year",
    Linear(),
    Exponential(0.3),
    pay(100, 0, "$100 sooner"),
    pay(120, 1, "$120 later"),
    [0, 5, 10, 20],
)
