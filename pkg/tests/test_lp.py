import math

import numpy as np
import pytest

from desirables import DimensionError
from desirables.lp import (
    Constraint,
    LpProblem,
    LpStatus,
    check_infeasibility_certificate,
    format_problem,
    solve,
)

from oracles import vertex_lp_optimum

INF = float("-inf")


def P(objective, rows, bounds=None):
    return LpProblem(
        tuple(objective),
        tuple(Constraint(tuple(c), rel, rhs) for c, rel, rhs in rows),
        None if bounds is None else tuple(bounds),
    )


def test_single_variable_box():
    sol = solve(P((1.0,), [((1.0,), "<=", 3.0)]))
    assert sol.status is LpStatus.OPTIMAL
    assert sol.x == pytest.approx([3.0], abs=1e-12)
    assert sol.value == pytest.approx(3.0, abs=1e-12)


def test_contradictory_bounds_infeasible():
    p = P((0.0,), [((1.0,), ">=", 1.0), ((1.0,), "<=", 0.0)])
    sol = solve(p)
    assert sol.status is LpStatus.INFEASIBLE
    assert check_infeasibility_certificate(p, sol.certificate)


def test_margin_maximization_on_simplex():
    # maximize m subject to 2w1 - w2 >= m, w1 + w2 = 1, w >= 0.
    p = P(
        (0.0, 0.0, 1.0),
        [((2.0, -1.0, -1.0), ">=", 0.0), ((1.0, 1.0, 0.0), "=", 1.0)],
        (0.0, 0.0, INF),
    )
    sol = solve(p)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.value == pytest.approx(2.0, abs=1e-12)
    assert sol.x[:2] == pytest.approx([1.0, 0.0], abs=1e-12)


# Regression corpus: tiny problems spanning optimal/infeasible/unbounded,
# free variables, equalities, and negative right-hand sides.
CORPUS = [
    P((1.0,), [((1.0,), "<=", 3.0)]),
    P((0.0,), [((1.0,), ">=", 1.0), ((1.0,), "<=", 0.0)]),
    P((1.0, 1.0), [((1.0, 1.0), "<=", 4.0), ((1.0, -1.0), "<=", 2.0)]),
    P((3.0, 2.0), [((1.0, 0.0), "<=", 2.0), ((0.0, 1.0), "<=", 3.0), ((1.0, 1.0), "<=", 4.0)]),
    P((1.0, -1.0), [((1.0, 1.0), "=", 1.0)]),
    P((-1.0, -2.0), [((1.0, 1.0), ">=", 2.0), ((1.0, 0.0), "<=", 5.0), ((0.0, 1.0), "<=", 5.0)]),
    P((1.0,), [((1.0,), ">=", -3.0), ((1.0,), "<=", -1.0)], (INF,)),
    P((0.0, 1.0), [((1.0, 1.0), "<=", -1.0), ((-2.0, 1.0), "<=", 4.0)], (INF, INF)),
    P((2.0, 1.0, 0.0), [((1.0, 1.0, 1.0), "=", 6.0), ((1.0, -1.0, 0.0), ">=", 1.0), ((0.0, 0.0, 1.0), "<=", 2.0)]),
    P((1.0, 1.0), [((1.0, 0.0), ">=", 1.0), ((0.0, 1.0), ">=", 1.0), ((1.0, 1.0), "<=", 1.0)]),
    P((1.0, 2.0, 3.0), [((1.0, 1.0, 1.0), "<=", 1.0), ((1.0, 2.0, 0.0), "<=", 2.0), ((0.0, 1.0, 2.0), "<=", 2.0)]),
    P((1.0, 0.0), [((1.0, -1.0), "<=", 0.0)]),
    P((-1.0,), [((1.0,), ">=", 2.0)]),
    P((1.0, -1.0), [((1.0, 1.0), "<=", -2.0), ((1.0, 0.0), ">=", 0.0)], (INF, INF)),
]


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_corpus_against_vertex_enumeration(idx):
    p = CORPUS[idx]
    sol = solve(p)
    rows = [(c.coeffs, c.rel, c.rhs) for c in p.constraints]
    status, x_ref, val_ref = vertex_lp_optimum(p.objective, rows, p.lower_bounds)
    assert sol.status.value == status
    if sol.status is LpStatus.OPTIMAL:
        assert sol.value == pytest.approx(val_ref, abs=1e-9)
        for c in p.constraints:
            lhs = float(np.dot(c.coeffs, sol.x))
            if c.rel == "<=":
                assert lhs <= c.rhs + 1e-9
            elif c.rel == ">=":
                assert lhs >= c.rhs - 1e-9
            else:
                assert lhs == pytest.approx(c.rhs, abs=1e-9)
        for xj, lb in zip(sol.x, p.lower_bounds):
            if lb == 0.0:
                assert xj >= -1e-9
    if sol.status is LpStatus.INFEASIBLE:
        assert check_infeasibility_certificate(p, sol.certificate)


def test_deterministic_bit_identical_solutions():
    for p in CORPUS:
        first = solve(p)
        second = solve(p)
        assert first.status == second.status
        if first.status is LpStatus.OPTIMAL:
            assert first.x.tobytes() == second.x.tobytes()
            assert first.value == second.value
        if first.status is LpStatus.INFEASIBLE:
            assert first.certificate.tobytes() == second.certificate.tobytes()


def _random_problem(rng):
    n = int(rng.integers(1, 4))
    m = int(rng.integers(1, 5))
    rows = []
    for _ in range(m):
        coeffs = tuple(float(v) for v in rng.uniform(-2, 2, n))
        rel = ("<=", ">=", "=")[int(rng.integers(3))]
        rows.append(Constraint(coeffs, rel, float(rng.uniform(-3, 3))))
    bounds = tuple(0.0 if rng.random() < 0.8 else INF for _ in range(n))
    return LpProblem(tuple(float(v) for v in rng.uniform(-2, 2, n)), tuple(rows), bounds)


def test_scale_invariance_of_verdicts():
    rng = np.random.default_rng(8)
    for _ in range(100):
        p = _random_problem(rng)
        scaled = LpProblem(
            p.objective,
            tuple(
                Constraint(tuple(1e3 * a for a in c.coeffs), c.rel, 1e3 * c.rhs)
                for c in p.constraints
            ),
            p.lower_bounds,
        )
        s1, s2 = solve(p), solve(scaled)
        assert s1.status == s2.status
        if s1.status is LpStatus.OPTIMAL:
            assert s1.value == pytest.approx(s2.value, rel=1e-7, abs=1e-7)


def test_dimension_limits():
    with pytest.raises(DimensionError):
        LpProblem(tuple([1.0] * 65), ())
    with pytest.raises(DimensionError):
        LpProblem((1.0,), tuple(Constraint((1.0,), "<=", 1.0) for _ in range(257)))
    with pytest.raises(DimensionError):
        LpProblem((1.0, 2.0), (Constraint((1.0,), "<=", 1.0),))


def test_problem_validation():
    with pytest.raises(ValueError):
        Constraint((1.0,), "<", 1.0)
    with pytest.raises(ValueError):
        Constraint((float("nan"),), "<=", 1.0)
    with pytest.raises(ValueError):
        LpProblem((1.0,), (), (-2.0,))  # lower bounds must be 0 or -inf


def test_free_variable_reaches_negative_optimum():
    sol = solve(P((-1.0,), [((1.0,), ">=", -3.0)], (INF,)))
    assert sol.status is LpStatus.OPTIMAL
    assert sol.x == pytest.approx([-3.0], abs=1e-12)
    assert sol.value == pytest.approx(3.0, abs=1e-12)


def test_format_problem_mentions_rows_and_bounds():
    p = P((1.0, -1.0), [((1.0, 1.0), "<=", 4.0)], (0.0, INF))
    text = format_problem(p)
    assert "maximize" in text and "<=" in text and "free" in text


def test_debug_flag_dumps_problem(capsys):
    p = P((1.0,), [((1.0,), "<=", 3.0)])
    solve(p, debug=True)
    err = capsys.readouterr().err
    assert "maximize" in err and "row 0" in err
