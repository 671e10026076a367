"""Ring configurations of repelling electrons and their ground states."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sturmlab.wigner import (
    RingConfiguration,
    anti_coulomb,
    coulomb,
    default_potentials,
    exponential_decay,
    ground_state,
    inverse_power,
    is_convex_decreasing,
    ring_distance,
    ring_energy,
    screened,
)
from sturmlab.words import balanced_orbit, is_balanced

words_st = st.text(alphabet="01", min_size=2, max_size=12).filter(
    lambda w: "1" in w
)


def test_ring_distance_wraps():
    assert ring_distance(0, 3, 4) == 1
    assert ring_distance(0, 2, 4) == 2
    assert ring_distance(1, 1, 9) == 0
    assert ring_distance(0, 5, 8) == 3


def test_four_site_fixture():
    spread = ring_energy("0101", coulomb())
    clumped = ring_energy("0011", coulomb())
    assert spread == Fraction(1, 2)
    assert clumped == Fraction(1)
    assert spread < clumped


def test_energy_is_exact_for_rational_potentials():
    assert isinstance(ring_energy("00101", coulomb()), Fraction)
    assert isinstance(ring_energy("00101", inverse_power(3)), Fraction)
    assert isinstance(ring_energy("00101", exponential_decay(1.0)), float)


@given(words_st, st.integers(min_value=0, max_value=11))
def test_energy_is_rotation_invariant(w, k):
    k %= len(w)
    assert ring_energy(w[k:] + w[:k], coulomb()) == ring_energy(w, coulomb())


@given(words_st)
def test_energy_is_reflection_invariant(w):
    assert ring_energy(w[::-1], coulomb()) == ring_energy(w, coulomb())


def test_ground_state_two_fifths():
    report = ground_state(2, 5, coulomb())
    assert report.balanced
    assert report.exact
    assert [o.representative for o in report.argmin] == [
        balanced_orbit(2, 5).representative
    ]
    argmin_rows = [r for r in report.rows if r.argmin]
    assert len(argmin_rows) == 1 and argmin_rows[0].balanced


@pytest.mark.parametrize("potential", default_potentials(), ids=lambda p: p.describe())
def test_ground_states_balanced_small(potential):
    for p, q in ((1, 4), (2, 5), (3, 7), (3, 8), (2, 9)):
        report = ground_state(p, q, potential)
        assert report.balanced, (p, q, potential.describe())


def test_concave_potential_breaks_the_pattern():
    report = ground_state(3, 8, anti_coulomb())
    assert not report.balanced
    # Electrons clump together under attraction-like tails.
    assert [o.representative for o in report.argmin] == ["00000111"]


def test_convexity_classifier():
    assert is_convex_decreasing(coulomb())
    assert is_convex_decreasing(inverse_power(3))
    assert is_convex_decreasing(exponential_decay(1.0))
    assert is_convex_decreasing(screened(1.0))
    assert not is_convex_decreasing(anti_coulomb())


def test_images_tighten_toward_infinite_ring():
    for potential in (inverse_power(3), exponential_decay(1.0)):
        shallow = ring_energy("0101", potential, images=1)
        deep = ring_energy("0101", potential, images=6)
        deeper = ring_energy("0101", potential, images=12)
        assert float(shallow) <= float(deep) <= float(deeper)
        assert abs(float(deeper) - float(deep)) < abs(float(deep) - float(shallow)) + 1e-15


def test_coulomb_images_diverge():
    with pytest.raises(ValueError, match="diverges"):
        ring_energy("0101", coulomb(), images=3)


def test_ground_state_with_images_not_marked_exact():
    report = ground_state(2, 5, inverse_power(3), images=4)
    assert not report.exact
    assert report.balanced


def test_configuration_validation():
    config = RingConfiguration(5, "00101")
    assert config.electrons == (2, 4)
    assert config.density == Fraction(2, 5)
    with pytest.raises(ValueError):
        RingConfiguration(4, "00101")  # size/occupancy mismatch
    with pytest.raises(TypeError):
        RingConfiguration(2, (0, 1))


def test_non_coprime_pairs_still_scan():
    report = ground_state(2, 4, coulomb())
    assert [o.representative for o in report.argmin] == ["0101"]
    assert report.min_energy == Fraction(1, 2)


def test_potential_descriptions():
    assert coulomb().describe() == "coulomb"
    assert inverse_power(3).describe() == "power(3)"
    assert "exponential" in exponential_decay(2.0).describe()
