import math

import numpy as np
import pytest

import majorkit as mk

P = mk.SpiderPoint


def tripod_measure(radii, weights, legs=(1, 2, 3), k=3):
    return mk.SpiderMeasure(
        tuple((P(leg, r, k), w) for leg, r, w in zip(legs, radii, weights))
    )


def random_point(rng, k, rmax=10.0):
    return P(int(rng.integers(1, k + 1)), float(rng.uniform(0, rmax)), k)


# ------------------------------------------------------------------ metric

def test_distance_examples():
    assert mk.spider_distance(P(1, 2, 3), P(1, 5, 3)) == 3.0
    assert mk.spider_distance(P(1, 2, 3), P(2, 3, 3)) == 5.0
    assert mk.spider_distance(P(1, 0, 3), P(3, 4, 3)) == 4.0


def test_distance_is_a_metric():
    rng = np.random.default_rng(41)
    for _ in range(10_000):
        k = int(rng.integers(2, 7))
        a, b, c = (random_point(rng, k) for _ in range(3))
        dab = mk.spider_distance(a, b)
        assert dab == mk.spider_distance(b, a)
        assert (dab == 0.0) == (a == b)
        assert dab <= mk.spider_distance(a, c) + mk.spider_distance(c, b) + 1e-12


def test_point_canonicalization_and_validation():
    assert P(3, 0.0, 3).leg == 1  # the origin is leg 1 by convention
    assert P(2, 0.0, 5) == mk.origin(5)
    with pytest.raises(ValueError, match="out of range"):
        P(4, 1.0, 3)
    with pytest.raises(ValueError, match="radius"):
        P(1, -1.0, 3)
    with pytest.raises(ValueError, match="radius"):
        P(1, math.nan, 3)


def test_k_mismatch_is_an_error():
    with pytest.raises(ValueError, match="different spiders"):
        mk.spider_distance(P(1, 1, 3), P(1, 1, 4))


# --------------------------------------------------------------- midpoints

def test_midpoint_examples():
    assert mk.geodesic_midpoint(P(1, 1, 3), P(1, 3, 3)) == P(1, 2, 3)
    assert mk.geodesic_midpoint(P(1, 1, 3), P(2, 1, 3)) == mk.origin(3)
    assert mk.geodesic_midpoint(P(1, 3, 3), P(2, 1, 3)) == P(1, 1, 3)


def test_midpoint_property_exact():
    rng = np.random.default_rng(43)
    for _ in range(2000):
        k = int(rng.integers(2, 7))
        a, b = random_point(rng, k), random_point(rng, k)
        y = mk.geodesic_midpoint(a, b)
        half = mk.spider_distance(a, b) / 2.0
        assert abs(mk.spider_distance(a, y) - half) <= 1e-12
        assert abs(mk.spider_distance(y, b) - half) <= 1e-12


# --------------------------------------------------------------------- NPC

def test_npc_worked_example():
    rep = mk.npc_inequality_check(P(1, 1, 3), P(2, 1, 3), P(3, 1, 3))
    assert rep.lhs == 1.0 and rep.rhs == 3.0 and rep.holds


def test_npc_at_midpoint():
    # z at the midpoint is the equality case: both sides vanish
    x0, x1 = P(1, 2, 3), P(2, 5, 3)
    y = mk.geodesic_midpoint(x0, x1)
    rep = mk.npc_inequality_check(x0, x1, y)
    assert rep.lhs == 0.0
    assert rep.rhs >= 0.0 and abs(rep.rhs) <= 1e-12
    assert rep.holds


def test_npc_equality_on_a_single_leg():
    rep = mk.npc_inequality_check(P(1, 1, 2), P(1, 5, 2), P(1, 2, 2))
    assert abs(rep.slack) <= 1e-12  # the line is flat


def test_npc_random_triples():
    rng = np.random.default_rng(47)
    for _ in range(2000):
        k = int(rng.integers(2, 7))
        rep = mk.npc_inequality_check(*(random_point(rng, k) for _ in range(3)))
        assert rep.slack >= -1e-9


# -------------------------------------------------------------- barycenter

def test_tripod_symmetric_gives_origin():
    m = tripod_measure((1, 1, 1), (1 / 3, 1 / 3, 1 / 3))
    assert mk.tripod_barycenter(m) == mk.origin(3)


def test_tripod_case_a():
    m = tripod_measure((1, 1, 2), (0.2, 0.2, 0.6))
    b = mk.tripod_barycenter(m)
    assert b.leg == 3 and b.radius == 0.8


def test_tripod_case_c():
    m = tripod_measure((2, 1, 1), (0.6, 0.2, 0.2))
    b = mk.tripod_barycenter(m)
    assert b.leg == 1 and b.radius == 0.8


def test_tripod_closed_form_matches_numeric_oracle():
    rng = np.random.default_rng(53)
    for i in range(2000):
        weights = rng.dirichlet(np.ones(3))
        radii = rng.uniform(0, 10, size=3)
        if i % 10 == 0:
            # boundary instance: leading moment exactly balances the others
            radii[2] = (weights[0] * radii[0] + weights[1] * radii[1]) / weights[2]
        m = tripod_measure(tuple(radii), tuple(weights))
        closed = mk.tripod_barycenter(m)
        numeric = mk.spider_barycenter_numeric(m)
        assert mk.spider_distance(closed, numeric) <= 1e-12


def test_tripod_two_positive_atoms_same_leg_rejected():
    m = mk.SpiderMeasure(((P(1, 1, 3), 0.4), (P(1, 2, 3), 0.3), (P(2, 1, 3), 0.3)))
    with pytest.raises(ValueError, match="atom/leg mismatch"):
        mk.tripod_barycenter(m)
    # the general route still handles it
    b = mk.spider_barycenter_numeric(m)
    assert mk.spider_objective(m, b) <= mk.spider_objective(m, mk.origin(3))


def test_numeric_single_leg_is_weighted_mean():
    m = mk.SpiderMeasure(((P(2, 1, 4), 0.25), (P(2, 3, 4), 0.75)))
    b = mk.spider_barycenter_numeric(m)
    assert b.leg == 2 and abs(b.radius - 2.5) <= 1e-12


def test_numeric_balanced_pair_gives_origin():
    m = mk.SpiderMeasure(((P(1, 2, 2), 0.5), (P(2, 2, 2), 0.5)))
    assert mk.spider_barycenter_numeric(m) == mk.origin(2)


def test_numeric_beats_random_probes():
    rng = np.random.default_rng(59)
    for _ in range(200):
        k = int(rng.integers(1, 7))
        n_atoms = int(rng.integers(1, 6))
        weights = rng.dirichlet(np.ones(n_atoms))
        atoms = tuple(
            (random_point(rng, k, 5.0), float(w)) for w in weights
        )
        m = mk.SpiderMeasure(atoms)
        b = mk.spider_barycenter_numeric(m)
        val = mk.spider_objective(m, b)
        for _ in range(100):
            probe = random_point(rng, k, 6.0)
            assert val <= mk.spider_objective(m, probe) + 1e-12


def test_measure_validation():
    with pytest.raises(ValueError, match="at least one atom"):
        mk.SpiderMeasure(())
    with pytest.raises(ValueError, match="positive"):
        mk.SpiderMeasure(((P(1, 1, 3), 0.0), (P(2, 1, 3), 1.0)))
    with pytest.raises(ValueError, match="sum to 1"):
        mk.SpiderMeasure(((P(1, 1, 3), 0.7), (P(2, 1, 3), 0.7)))
    with pytest.raises(ValueError, match="different spiders"):
        mk.SpiderMeasure(((P(1, 1, 3), 0.5), (P(1, 1, 4), 0.5)))


# ---------------------------------------------------------------- convexity

def square_fn():
    return mk.SpiderFunction((lambda t: t * t,) * 3)


def test_function_origin_agreement():
    with pytest.raises(ValueError, match="disagree at the origin"):
        mk.SpiderFunction((lambda t: t, lambda t: t + 1.0, lambda t: t))


def test_convexity_conditions_square():
    rep = mk.convexity_conditions_check(square_fn())
    assert rep.conditions_hold
    assert all(rep.each_restriction_convex)
    assert all(abs(d) <= 1e-4 for d in rep.right_derivs_at_0)


def test_convexity_conditions_counterexample():
    f = mk.SpiderFunction((lambda t: -t, lambda t: -t, lambda t: t))
    rep = mk.convexity_conditions_check(f)
    assert not rep.conditions_hold
    assert all(rep.each_restriction_convex)  # each piece is linear
    assert not rep.pairwise_sums_nondecreasing[0]  # f1 + f2 decreases
    assert abs(rep.right_derivs_at_0[0] + 1.0) <= 1e-4


def test_convexity_conditions_mixed_slopes():
    f = mk.SpiderFunction((lambda t: -t, lambda t: 2 * t, lambda t: 2 * t))
    rep = mk.convexity_conditions_check(f)
    assert rep.conditions_hold


def test_convexity_requires_tripod():
    with pytest.raises(ValueError, match="tripod"):
        mk.convexity_conditions_check(mk.SpiderFunction((lambda t: t,) * 2))


# ------------------------------------------------------------------- Jensen

def test_jensen_worked_example():
    m = tripod_measure((1, 1, 2), (0.2, 0.2, 0.6))
    rep = mk.jensen_check(square_fn(), m)
    assert abs(rep.lhs - 0.64) <= 1e-12
    assert abs(rep.rhs - 2.8) <= 1e-12
    assert rep.holds


def test_jensen_point_mass():
    m = mk.SpiderMeasure(((P(2, 3, 3), 1.0),))
    rep = mk.jensen_check(square_fn(), m)
    assert rep.lhs == rep.rhs == 9.0


def test_jensen_violation_without_conditions():
    f = mk.SpiderFunction((lambda t: -t, lambda t: -t, lambda t: t))
    m = mk.SpiderMeasure(((P(1, 1, 3), 0.5), (P(2, 1, 3), 0.5)))
    rep = mk.jensen_check(f, m)
    assert rep.lhs == 0.0 and rep.rhs == -1.0 and not rep.holds


def test_jensen_k_mismatch():
    with pytest.raises(ValueError, match="K="):
        mk.jensen_check(square_fn(), mk.SpiderMeasure(((P(1, 1, 2), 1.0),)))


def test_midpoint_convexity_for_condition_satisfying_function():
    f = mk.SpiderFunction(
        (
            lambda t: t * t - 0.5 * t,
            lambda t: 2.0 * t + 0.1 * t * t,
            lambda t: math.exp(t) - 1.0,
        )
    )
    assert mk.convexity_conditions_check(f).conditions_hold
    rng = np.random.default_rng(61)
    for _ in range(1000):
        a, b = random_point(rng, 3, 4.0), random_point(rng, 3, 4.0)
        mid = mk.geodesic_midpoint(a, b)
        assert f(mid) <= 0.5 * f(a) + 0.5 * f(b) + 1e-9
