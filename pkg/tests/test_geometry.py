import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tenzan.geometry import build_square_config, check_incidences, solve_small, tangency_residual
from tenzan.radical import Radical, eval_float, radical_sqrt



def formula(a: float) -> float:
    # exact (sqrt(1/2) - 1/2) * a, rounded once
    from fractions import Fraction

    return eval_float((radical_sqrt(Fraction(1, 2)) - Radical.of(Fraction(1, 2))) * Radical.of(Fraction(a)))


def test_examples():
    assert abs(solve_small(10.0, 1e-12) - 2.071067811865) < 1e-12
    assert abs(solve_small(1.0) - 0.2071067811) < 1e-10
    assert math.isclose(solve_small(2.0), 2 * solve_small(1.0), rel_tol=1e-10)


def test_agrees_with_formula_on_random_sizes():
    rng = random.Random(20240601)
    for _ in range(100):
        a = rng.uniform(0.1, 100)
        assert abs(solve_small(a, 1e-12) - formula(a)) <= 1e-10


def test_homogeneity():
    rng = random.Random(7)
    for _ in range(50):
        a, lam = rng.uniform(0.1, 100), rng.uniform(0.1, 10)
        assert math.isclose(solve_small(lam * a), lam * solve_small(a), rel_tol=1e-10)


@given(st.floats(min_value=0.1, max_value=100), st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_residual_strictly_decreasing(a, u, v):
    cfg = build_square_config(a)
    c1, c2 = sorted((u * a, v * a))
    if c2 - c1 > 1e-9 * a:
        assert tangency_residual(cfg, c1) > tangency_residual(cfg, c2)


def test_residual_vanishes_at_solution():
    cfg = build_square_config(3.0)
    assert abs(tangency_residual(cfg, solve_small(3.0))) <= 1e-12


def test_incidences():
    cfg = build_square_config(10.0)
    c = solve_small(10.0)
    assert check_incidences(cfg, c).ok
    report = check_incidences(cfg, 2 * c)
    assert not report.ok
    assert all("tangent" in f for f in report.failures)
    assert len(report.failures) == 4


@pytest.mark.parametrize("a", [0.0, -1.0])
def test_degenerate_size_rejected(a):
    with pytest.raises(ValueError):
        build_square_config(a)
