"""Shared random generators for property tests (seeded numpy RNG throughout)."""

import numpy as np

from desirables import (
    AssessmentSet,
    Composed,
    Gamble,
    Linear,
    LogShift,
    PhiPower,
    PhiScale,
    PowerDiscounted,
    Sqrt,
    StateSpace,
)

#: Comfortable sampling window (lo, hi) per utility kind, inside each domain.
_REWARD_WINDOW = {
    "linear": (-5.0, 5.0),
    "log_shift": (-0.9, 5.0),
    "sqrt": (0.05, 5.0),
    "power_discounted": (-0.8, 5.0),
    "composed": (-0.9, 5.0),
}


def utility_zoo(rng):
    """One instance of every shipped utility kind, random where parameterized."""
    return [
        Linear(),
        LogShift(),
        Sqrt(),
        PowerDiscounted(float(rng.uniform(0.05, 0.9))),
        Composed(LogShift(), PhiScale(float(rng.uniform(0.5, 3.0)))),
        Composed(LogShift(), PhiPower(float(rng.uniform(0.8, 2.0)))),
    ]


def reward_window(u):
    return _REWARD_WINDOW[u.kind]


def random_space(rng, m):
    return StateSpace(tuple(f"s{i + 1}" for i in range(m)))


def random_rewards(rng, u, m):
    lo, hi = reward_window(u)
    return rng.uniform(lo, hi, size=m)


def random_gamble(rng, space, u, nonneg=False):
    r = random_rewards(rng, u, space.m)
    if nonneg:
        r = np.abs(r)
    # Keep the worst loss strictly inside the wealth bank of shifted kinds.
    return Gamble(space, r, wealth_floor=max(1.0, -float(r.min())) * 1.5 + 0.5)


def random_assessment(rng, m_max=4, n_max=4, utilities=None):
    """A random assessment set: m states, up to n_max accepted generators."""
    m = int(rng.integers(1, m_max + 1))
    n = int(rng.integers(0, n_max + 1))
    space = random_space(rng, m)
    pool = utilities if utilities is not None else utility_zoo(rng)
    u = pool[int(rng.integers(len(pool)))]
    accepted = []
    for _ in range(n):
        g = random_gamble(rng, space, u)
        while g.rewards.max() < 0:
            g = random_gamble(rng, space, u)
        accepted.append(g)
    return AssessmentSet(space=space, utility=u, accepted=tuple(accepted))


def random_query(rng, aset):
    """A query gamble, biased toward both clear accepts and clear rejects."""
    u = aset.utility
    g = random_gamble(rng, aset.space, u)
    roll = rng.random()
    if roll < 0.25 and aset.accepted:
        # A dominating bump over a generator: should always be accepted.
        base = aset.accepted[int(rng.integers(len(aset.accepted)))]
        bump = rng.uniform(0.0, 1.0, size=aset.space.m)
        r = base.rewards + bump
        return Gamble(aset.space, r, wealth_floor=max(1.0, -float(r.min())) * 1.5 + 0.5)
    if roll < 0.5:
        # Pull the rewards toward the bottom of the admissible window.
        lo, _ = reward_window(u)
        frac = rng.uniform(0.45, 0.95, size=aset.space.m)
        r = lo + (g.rewards - lo) * (1.0 - frac)
        return Gamble(aset.space, r, wealth_floor=max(1.0, -float(r.min())) * 1.5 + 0.5)
    return g
