from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloquant.random_walk import (
    WalkObservation,
    WalkParams,
    euler_lagrange_residual,
    lagrangian,
    macrostate_probability,
    most_probable_path,
    one_step_entropy,
    quadratic_entropy_approx,
    stationary_step,
    stirling_entropy,
)

from oracles import binom_prob, brute_force_path, rk4_el_path

VELOCITIES = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(-1, 3), Fraction(1), Fraction(-1)]
rational_v = st.fractions(min_value=-1, max_value=1, max_denominator=12)


def test_small_examples():
    assert macrostate_probability(0, 2, WalkParams(0)) == Fraction(1, 2)
    assert macrostate_probability(2, 2, WalkParams(0)) == Fraction(1, 4)
    assert macrostate_probability(10, 10, WalkParams(1)) == 1
    assert macrostate_probability(-4, 4, WalkParams(1)) == 0
    assert one_step_entropy(10, 10, WalkParams(1)) == 0
    assert stationary_step(100, WalkParams(Fraction(1, 2))) == 50
    assert stationary_step(7, WalkParams(0)) == 0


def test_domain_errors():
    with pytest.raises(ValueError):
        macrostate_probability(1, 2, WalkParams(0))
    with pytest.raises(ValueError):
        macrostate_probability(4, 2, WalkParams(0))
    with pytest.raises(ValueError):
        WalkParams(Fraction(3, 2))
    with pytest.raises(ValueError):
        stirling_entropy(10, 10, WalkParams(0))
    with pytest.raises(ValueError):
        WalkObservation(3, 2)
    with pytest.raises(ValueError):
        lagrangian(0.0, 1.0)


@pytest.mark.parametrize("v", VELOCITIES)
@pytest.mark.parametrize("t", [0, 1, 2, 7, 20, 64])
def test_exact_normalization(v, t):
    assert sum(macrostate_probability(x, t, WalkParams(v)) for x in range(-t, t + 1, 2)) == 1


@given(st.integers(0, 40), st.integers(0, 40), rational_v)
def test_matches_binomial_oracle(k, t, v):
    if k > t:
        k, t = t, k
    x = 2 * k - t
    assert macrostate_probability(x, t, WalkParams(v)) == binom_prob(x, t, v)


def test_stirling_against_exact_log():
    exact = math.log(math.comb(100, 50)) - 100 * math.log(2)
    assert abs(one_step_entropy(0, 100, WalkParams(0)) - exact) < 1e-12
    assert abs(stirling_entropy(0, 100, WalkParams(0)) - exact) < 0.5
    for v in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        dx = int(v * 200)
        ex = one_step_entropy(dx, 200, WalkParams(v))
        assert abs(stirling_entropy(dx, 200, WalkParams(v)) - ex) / abs(ex) < 0.05


@pytest.mark.parametrize("v", [Fraction(0), Fraction(1, 4), Fraction(1, 2)])
@pytest.mark.parametrize("prefactor", [True, False])
def test_stirling_is_concave_and_peaks_at_stationary_step(v, prefactor):
    dt = 100
    xs = list(range(-dt + 2, dt - 1, 2))
    e = [stirling_entropy(x, dt, WalkParams(v), prefactor) for x in xs]
    assert max(e[i - 1] - 2 * e[i] + e[i + 1] for i in range(1, len(e) - 1)) <= 0
    best = xs[int(np.argmax(e))]
    assert abs(best - stationary_step(dt, WalkParams(v))) <= 1


def test_lagrangian_values():
    assert lagrangian(0.3, 0.3) == 0
    assert lagrangian(1.0, 0.0) == 1
    assert quadratic_entropy_approx(20, 400, 0) == pytest.approx(-0.5)


@pytest.mark.parametrize("v", [Fraction(0), Fraction(1, 4), Fraction(1, 2)])
def test_quadratic_matches_leading_stirling_difference(v):
    dt = 400
    star = int(v * dt)
    for d in range(-40, 41, 2):
        if d == 0:
            continue
        q = quadratic_entropy_approx(star + d, dt, float(v))
        s = stirling_entropy(star + d, dt, WalkParams(v), False) - stirling_entropy(star, dt, WalkParams(v), False)
        assert abs(q - s) / abs(s) < 0.10


def test_quadratic_against_exact_log_at_zero_drift():
    dt = 400
    for d in range(-40, 41, 2):
        if d:
            q = quadratic_entropy_approx(d, dt, 0.0)
            ex = one_step_entropy(d, dt, WalkParams(0)) - one_step_entropy(0, dt, WalkParams(0))
            assert abs(q - ex) / abs(ex) < 0.10


def test_symmetric_path():
    r = most_probable_path(0, 0, 20, 0, [10], 0)
    assert r.positions == (0, 0, 0)


def test_path_to_displaced_endpoint():
    r = most_probable_path(0, 0, 100, 40, [50], 0)
    # exhaustive oracle over every feasible x_50
    best, arg = brute_force_path(0, 0, 100, 40, [50], Fraction(0))
    assert r.positions in arg and r.probability == best
    assert abs(r.positions[1] - 20) <= 2


def _instances():
    for k in (1, 2, 3):
        times = [10 * (i + 1) for i in range(k)]
        t_end = 10 * (k + 1)
        for x_end in range(-t_end, t_end + 1, 6):
            for v in (Fraction(0), Fraction(1, 4), Fraction(-1, 2)):
                yield times, t_end, x_end, v


@pytest.mark.parametrize("times,t_end,x_end,v", list(_instances()))
def test_dp_equals_brute_force(times, t_end, x_end, v):
    if (x_end - t_end) % 2:
        x_end += 1
        if x_end > t_end:
            x_end -= 2
    r = most_probable_path(0, 0, t_end, x_end, times, v)
    best, arg = brute_force_path(0, 0, t_end, x_end, times, v)
    assert r.probability == best
    assert r.positions in arg


@given(st.integers(1, 3), st.integers(-4, 4), st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(-2, 3)]))
@settings(max_examples=30, deadline=None)
def test_equal_spread_of_slopes(k, slope, v):
    dt = 10
    t_end = dt * (k + 1)
    x_end = max(-t_end, min(t_end, slope * (k + 1) * 2))
    if (x_end - t_end) % 2:
        x_end += 1
    r = most_probable_path(0, 0, t_end, x_end, [dt * (i + 1) for i in range(k)], v)
    steps = [b - a for a, b in zip(r.positions, r.positions[1:])]
    assert max(steps) - min(steps) <= 2


def test_per_interval_velocities_and_entropy_additivity():
    r = most_probable_path(0, 0, 40, 10, [20], [Fraction(1, 2), Fraction(-1, 4)])
    best, arg = brute_force_path_varying(0, 0, 40, 10, [20], [Fraction(1, 2), Fraction(-1, 4)])
    assert r.probability == best and r.positions in arg
    assert r.entropy == pytest.approx(sum(r.step_entropies))
    assert r.cumulative_entropy()[-1] == pytest.approx(r.entropy)
    with pytest.raises(ValueError):
        most_probable_path(0, 0, 40, 10, [20], [0, 0, 0])


def brute_force_path_varying(t0, x0, t1, x1, times, vs):
    all_t = [t0, *times, t1]
    best, arg = Fraction(-1), []
    for xs in itertools.product(*[range(-t, t + 1) for t in times]):
        pts = [x0, *xs, x1]
        p = math.prod(
            (binom_prob(b - a, tb - ta, v) for a, b, ta, tb, v in zip(pts, pts[1:], all_t, all_t[1:], vs)),
            start=Fraction(1),
        )
        if p > best:
            best, arg = p, [tuple(pts)]
        elif p == best:
            arg.append(tuple(pts))
    return best, arg


def test_infeasible_endpoints():
    with pytest.raises(ValueError):
        most_probable_path(0, 0, 10, 3, [5], 0)
    with pytest.raises(ValueError):
        most_probable_path(0, 0, 10, 12, [5], 0)
    with pytest.raises(ValueError):
        most_probable_path(0, 0, 10, 0, [10], 0)


def test_euler_lagrange_residuals():
    t = np.linspace(0, 10, 201)
    dt = t[1] - t[0]
    v = 0.4
    assert np.max(np.abs(euler_lagrange_residual(3 + v * t, np.full_like(t, v), dt))) < 1e-9
    res = euler_lagrange_residual(t**2, np.full_like(t, v), dt)
    assert np.max(np.abs(res - 2 * (1 - v * v))) < 1e-6
    with pytest.raises(ValueError):
        euler_lagrange_residual([0, 1], [0, 0], 1.0)
    with pytest.raises(ValueError):
        euler_lagrange_residual([0, 1, 2], [0, 1, 0], 1.0)


def test_euler_lagrange_on_rk4_solution_with_ramp():
    h = 1e-3
    steps = 2000
    a, b = 0.1, 0.2
    xs = rk4_el_path(lambda s: a + b * s, lambda s: b, 0.0, 0.3, h, steps)
    t = np.arange(steps + 1) * h
    res = euler_lagrange_residual(xs, a + b * t, h)
    assert np.max(np.abs(res)) < 1e-4
