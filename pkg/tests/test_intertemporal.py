import math

import numpy as np
import pytest

from desirables import (
    DatedPayment,
    DomainError,
    Exponential,
    Hybrid,
    Hyperbolic,
    GeneralizedHyperbolic,
    InverseLog,
    Linear,
    LogShift,
    MissingArgument,
    PaymentSchedule,
    Preference,
    QuasiHyperbolic,
    ScaleDependent,
    Sqrt,
    StateDependent,
    check_scale_monotonicity,
    compare,
    effective_utility,
    reversal_scan,
    schedule_value,
    shift_schedule,
)


def sched(*pairs, label=""):
    return PaymentSchedule(tuple(DatedPayment(a, t) for a, t in pairs), label=label)


def test_effective_utility_hyperbolic_log():
    u, d = LogShift(), Hyperbolic(0.5)
    assert effective_utility(u, d, 1200, 6) == pytest.approx(math.log(301), rel=1e-12)
    assert effective_utility(u, d, 1000, 0) == pytest.approx(math.log(1001), rel=1e-12)


def test_effective_utility_quasi_hyperbolic_sqrt():
    u, d = Sqrt(), QuasiHyperbolic(0.7, 0.95)
    assert effective_utility(u, d, 120, 13) == pytest.approx(6.566638028358073, abs=1e-9)
    assert effective_utility(u, d, 100, 0) == 10.0


def test_effective_utility_zero_reward():
    assert effective_utility(Linear(), Hyperbolic(1.0), 0.0, 3.0) == 0.0


def test_effective_utility_state_dependent():
    u = Linear()
    d = StateDependent({"s1": 0.05, "s2": 0.15})
    v = effective_utility(u, d, 1000, 3, "s2")
    assert v == pytest.approx(1000 * math.exp(-0.45), rel=1e-12)
    assert v == pytest.approx(637.628, abs=5e-4)


def test_schedule_value_generalized_hyperbolic():
    u, d = Linear(), GeneralizedHyperbolic(0.2, 2.0)
    option_a = sched((100.0, 0.0), (120.0, 5.0))
    assert schedule_value(u, d, option_a) == 130.0  # 0.25 factor is exact
    option_b = sched((110.0, 2.0), (150.0, 4.0))
    assert schedule_value(u, d, option_b) == pytest.approx(102.41874527588813, abs=1e-9)
    assert schedule_value(u, d, option_b, round_factors=True) == pytest.approx(102.6, abs=1e-9)


def test_schedule_value_zero_payment():
    for u in (Linear(), LogShift()):
        assert schedule_value(u, Hyperbolic(1.0), sched((0.0, 4.0))) == 0.0


def test_schedule_value_permutation_invariant():
    rng = np.random.default_rng(16)
    u, d = LogShift(), Hyperbolic(0.3)
    pays = [(float(a), float(t)) for a, t in zip(rng.uniform(1, 50, 6), rng.uniform(0, 9, 6))]
    base = schedule_value(u, d, sched(*pays))
    for _ in range(5):
        rng.shuffle(pays)
        assert schedule_value(u, d, sched(*pays)) == pytest.approx(base, rel=1e-12)


def test_compare_near_term_and_distant_projects():
    u, d = LogShift(), Hyperbolic(0.5)
    assert compare(u, d, sched((1000, 0)), sched((1200, 1))) is Preference.A
    assert compare(u, d, sched((1000, 5)), sched((1200, 6))) is Preference.B
    assert compare(u, d, sched((1000, 0)), sched((1000, 0))) is Preference.INDIFFERENT


def test_reversal_scan_hyperbolic_projects():
    u, d = LogShift(), Hyperbolic(0.5)
    res = reversal_scan(u, d, sched((1000, 0)), sched((1200, 1)), [0, 5])
    assert res.trace == ((0.0, Preference.A), (5.0, Preference.B))
    assert res.baseline is Preference.A
    assert res.first_flip == 5.0

    # On the dense grid the arithmetic crosses earlier: an exact tie at a
    # shift of 3 (both payoffs discount to 400) and a strict flip at 4.
    dense = reversal_scan(u, d, sched((1000, 0)), sched((1200, 1)), range(6))
    prefs = dict(dense.trace)
    assert prefs[3.0] is Preference.INDIFFERENT
    assert prefs[4.0] is Preference.B
    assert dense.first_flip == 4.0


def test_reversal_scan_quasi_hyperbolic_savings():
    u, d = Sqrt(), QuasiHyperbolic(0.7, 0.95)
    plan_a = sched((100, 0), label="A")
    plan_b = sched((120, 1), label="B")
    res = reversal_scan(u, d, plan_a, plan_b, [0, 12])
    assert res.trace[0][1] is Preference.A
    assert res.trace[1][1] is Preference.B
    assert res.first_flip == 12.0


def test_reversal_scan_hybrid_mixture():
    u = Linear()
    d = Hybrid(0.5, Exponential(0.5), Hyperbolic(1.0))
    a0, b0 = sched((1000, 0)), sched((1500, 1))
    assert schedule_value(u, d, b0) == pytest.approx(829.897994784475, abs=1e-6)
    res = reversal_scan(u, d, a0, b0, [0, 10])
    assert res.trace == ((0.0, Preference.A), (10.0, Preference.B))
    assert res.first_flip == 10.0
    va10 = schedule_value(u, d, shift_schedule(a0, 10))
    vb10 = schedule_value(u, d, shift_schedule(b0, 10))
    assert va10 == pytest.approx(48.823518954088186, abs=1e-9)
    assert vb10 == pytest.approx(65.56507857884804, abs=1e-9)


def test_exponential_linear_never_reverses():
    rng = np.random.default_rng(17)
    u = Linear()
    for _ in range(100):
        d = Exponential(float(rng.uniform(0.05, 1.0)))
        a = sched(*[(float(x), float(t)) for x, t in zip(rng.uniform(1, 100, 3), rng.uniform(0, 8, 3))])
        b = sched(*[(float(x), float(t)) for x, t in zip(rng.uniform(1, 100, 3), rng.uniform(0, 8, 3))])
        shifts = np.sort(rng.uniform(0, 20, 5))
        res = reversal_scan(u, d, a, b, shifts)
        assert res.first_flip is None


def test_magnitude_effect_qualitative_pattern():
    # Base-10 inverse-log eta: immediate wins at the small scale, delayed at
    # the large scale.
    u = Linear()
    d = ScaleDependent(Exponential(1.0), InverseLog(10.0))
    small = compare(u, d, sched((10, 0)), sched((15, 1)))
    large = compare(u, d, sched((1000, 0)), sched((1500, 1)))
    assert small is Preference.A
    assert large is Preference.B


def test_monotone_in_amount():
    rng = np.random.default_rng(18)
    regimes = [
        (Exponential(0.3), None),
        (Hyperbolic(0.5), None),
        (QuasiHyperbolic(0.7, 0.95), None),
        (GeneralizedHyperbolic(0.4, 1.5), None),
        (StateDependent({"s1": 0.1}), "s1"),
    ]
    utilities = [Linear(), LogShift(), Sqrt()]
    for _ in range(1000):
        d, s = regimes[int(rng.integers(len(regimes)))]
        u = utilities[int(rng.integers(len(utilities)))]
        t = float(rng.uniform(0, 10))
        x1, x2 = np.sort(rng.uniform(0.1, 100, 2))
        if x1 == x2:
            continue
        assert effective_utility(u, d, x1, t, s) < effective_utility(u, d, x2, t, s)


def test_scale_monotonicity_agrees_with_effective_utility():
    d = ScaleDependent(Exponential(1.0), InverseLog(10.0))
    t_grid = [0.5, 1.0, 2.0]
    x_grid = [2.0, 10.0, 100.0, 1500.0]
    report = check_scale_monotonicity(d, t_grid, x_grid)
    assert report.passed
    u = Linear()
    for t in t_grid:
        vals = [effective_utility(u, d, x, t) for x in x_grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_schedule_dominance():
    rng = np.random.default_rng(19)
    u, d = LogShift(), Hyperbolic(0.4)
    for _ in range(50):
        times = rng.uniform(0, 10, 4)
        base = rng.uniform(1, 20, 4)
        extra = rng.uniform(0, 5, 4)
        a = sched(*zip(base + extra, times))
        b = sched(*zip(base, times))
        assert schedule_value(u, d, a) >= schedule_value(u, d, b)


def test_quasi_hyperbolic_indicator_is_exact():
    u, d = Linear(), QuasiHyperbolic(0.5, 0.9)
    assert effective_utility(u, d, 10.0, 0.0) == 10.0
    assert effective_utility(u, d, 10.0, 1e-12) < 6.0  # any positive delay takes the bias hit


def test_states_required_and_warned():
    u = Linear()
    with pytest.raises(MissingArgument):
        schedule_value(u, StateDependent({"s1": 0.1}), sched((10, 1)))
    labeled = PaymentSchedule((DatedPayment(10, 1, "s1"),), label="x")
    with pytest.warns(UserWarning, match="state-independent"):
        schedule_value(u, Exponential(0.1), labeled)


def test_payment_validation():
    with pytest.raises(ValueError):
        DatedPayment(10.0, -1.0)
    with pytest.raises(ValueError):
        PaymentSchedule(())
    with pytest.raises(ValueError):
        shift_schedule(sched((1, 0)), -2.0)
    with pytest.raises(ValueError):
        reversal_scan(Linear(), Exponential(0.1), sched((1, 0)), sched((1, 0)), [])


def test_domain_error_propagates():
    # Discounted reward can still breach the utility domain.
    with pytest.raises(DomainError):
        effective_utility(LogShift(), Exponential(0.1), -5.0, 0.0)
