"""Orbit measures of the doubling map and the convex order."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmlab.measures import (
    DiscreteMeasure,
    convex_order_leq,
    convex_order_witness,
    maximize_over_orbits,
    mixture,
    orbit_measure,
    peak_objective_scan,
    phi_sample,
    sturmian_measure,
    tent_objective,
    verify_sturmian_least,
)
from sturmlab.words import is_balanced


def test_two_fifths_measure_fixture():
    mu = sturmian_measure(2, 5)
    assert mu.points == tuple(
        Fraction(k, 31) for k in (5, 9, 10, 18, 20)
    )
    assert mu.weights == (Fraction(1, 5),) * 5
    assert mu.barycenter == Fraction(2, 5)


def test_orbit_measure_barycenter_is_density():
    for w in ("00101", "00011", "0010101", "0001011"):
        mu = orbit_measure(w)
        assert mu.barycenter == Fraction(w.count("1"), len(w))


def test_orbit_measure_collapses_proper_period():
    mu = orbit_measure("010010")  # period 3
    assert len(mu.points) == 3
    assert sum(mu.weights) == 1


def test_orbit_measure_rejects_all_ones():
    with pytest.raises(ValueError):
        orbit_measure("111")


def test_point_mass_at_zero():
    mu = sturmian_measure(0, 1)
    assert mu.points == (Fraction(0),)
    assert mu.weights == (Fraction(1),)


def test_convex_order_balanced_below_clumped():
    balanced = orbit_measure("00101")
    clumped = orbit_measure("00011")
    assert convex_order_leq(balanced, clumped)
    assert not convex_order_leq(clumped, balanced)
    witness = convex_order_witness(clumped, balanced)
    assert witness is not None  # a kink where the order fails


def test_convex_order_requires_equal_barycenters():
    with pytest.raises(ValueError):
        convex_order_leq(orbit_measure("01"), orbit_measure("0001"))


@given(
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=20),
)
def test_mixtures_preserve_barycenter_and_dominate(q_index, numerator):
    pairs = [(1, 3), (1, 4), (2, 5), (3, 7), (1, 5), (3, 8)]
    p, q = pairs[q_index - 1]
    mu = sturmian_measure(p, q)
    competitors = [
        orbit_measure(rep)
        for rep in _orbit_reps(p, q)
    ]
    if len(competitors) < 2:
        return
    t = Fraction(numerator, 21)
    mixed = mixture(competitors[:2], [t, 1 - t])
    assert mixed.barycenter == Fraction(p, q)
    assert convex_order_leq(mu, mixed)


def _orbit_reps(p, q):
    from sturmlab.words import enumerate_orbits

    return [o.representative for o in enumerate_orbits(p, q)]


def test_verify_sturmian_least_small():
    scans = verify_sturmian_least(6, mixtures_per_pair=25, seed=1)
    assert all(s.passed for s in scans)
    assert {(s.p, s.q) for s in scans} == {
        (p, q) for q in range(2, 7) for p in range(1, q) if math.gcd(p, q) == 1
    }


def test_phi_sample_rational_is_exact():
    sample = phi_sample(Fraction(2, 5), Fraction(1, 3), terms=12)
    assert isinstance(sample.value, Fraction)
    assert sample.error_bound < Fraction(1, 1000)


def test_phi_sample_error_bound_brackets_deeper_run():
    shallow = phi_sample(Fraction(2, 5), Fraction(1, 3), terms=10)
    deep = phi_sample(Fraction(2, 5), Fraction(1, 3), terms=24)
    assert abs(deep.value - shallow.value) <= shallow.error_bound


def test_tent_objective_peaks_where_asked():
    f = tent_objective(0.4)
    assert f(0.4) == pytest.approx(1.0)
    assert f(0.1) < f(0.4)


def test_maximize_over_orbits_returns_balanced_winner():
    mu, value = maximize_over_orbits(tent_objective(0.4), max_period=7)
    assert is_balanced(mu.word)
    assert value <= 1.0


@settings(deadline=None)
@given(st.floats(min_value=0.0, max_value=0.999))
def test_peak_scan_winners_always_balanced(theta):
    rows = peak_objective_scan([theta], max_period=7, kind="tent")
    assert rows[0]["balanced"]


def test_measure_json_round_trip():
    mu = sturmian_measure(2, 5)
    record = mu.to_json_dict()
    assert record["word"] == "00101"
    assert record["support"] == ["5/31", "9/31", "10/31", "18/31", "20/31"]
    assert record["weight"] == "1/5"


def test_mixture_rejects_bad_coefficients():
    mu, nu = orbit_measure("00101"), orbit_measure("00011")
    with pytest.raises(ValueError):
        mixture([mu, nu], [Fraction(1, 2), Fraction(1, 3)])
