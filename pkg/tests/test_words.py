"""Core word combinatorics: balance, mechanical words, standard words."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmlab.words import (
    ContinuedFraction,
    MechanicalSpec,
    balance_witness,
    balanced_orbit,
    canonical_rotation,
    complexity,
    enumerate_orbits,
    factor_set,
    format_fraction,
    is_balanced,
    mechanical_word,
    minimal_period,
    one_length,
    one_ratio,
    parse_slope,
    rotations,
    standard_words,
    symbol_stream,
)

words_st = st.text(alphabet="01", min_size=0, max_size=40)


def naive_balance(w: str) -> bool:
    """Quadratic reference: compare one-counts of equal-length factors."""
    prefix = [0]
    for c in w:
        prefix.append(prefix[-1] + int(c))

    def ones(i, n):
        return prefix[i + n] - prefix[i]

    for n in range(1, len(w) + 1):
        counts = {ones(i, n) for i in range(len(w) - n + 1)}
        if max(counts) - min(counts) > 1:
            return False
    return True


@given(words_st)
def test_balance_matches_naive_oracle(w):
    assert is_balanced(w) == naive_balance(w)


@given(words_st)
def test_balance_witness_is_a_real_violation(w):
    witness = balance_witness(w)
    if witness is None:
        assert is_balanced(w)
    else:
        u, v = witness
        assert len(u) == len(v)
        assert u in factor_set(w, len(u)) and v in factor_set(w, len(v))
        assert abs(one_length(u) - one_length(v)) >= 2


def test_mechanical_fixture():
    assert mechanical_word(Fraction(2, 5), 10) == "0101001010"


@given(
    st.integers(min_value=0, max_value=30),
    st.integers(min_value=1, max_value=30),
    st.integers(min_value=1, max_value=48),
)
def test_mechanical_words_are_balanced(a, b, n):
    gamma = Fraction(a, a + b)
    w = mechanical_word(gamma, n)
    assert len(w) == n
    assert is_balanced(w)


def test_mechanical_word_density_converges():
    gamma = Fraction(3, 7)
    w = mechanical_word(gamma, 7 * 20)
    assert one_ratio(w) == gamma


def test_mechanical_word_irrational_slope_balanced():
    gamma = (3 - math.sqrt(5)) / 2
    w = mechanical_word(gamma, 200, bits=192)
    assert is_balanced(w)
    assert abs(one_length(w) / 200 - gamma) < 1 / 200


def test_mechanical_phase_shifts_word_not_density():
    gamma = Fraction(2, 5)
    plain = mechanical_word(gamma, 40)
    shifted = mechanical_word(gamma, 40, delta=Fraction(1, 3))
    assert one_length(plain) == one_length(shifted) or abs(
        one_length(plain) - one_length(shifted)
    ) <= 1
    assert is_balanced(shifted)


def test_sturmian_complexity_is_n_plus_one():
    for gamma in ((3 - math.sqrt(5)) / 2, math.sqrt(2) - 1):
        w = mechanical_word(gamma, 600, bits=192)
        for n in range(1, 17):
            assert complexity(w, n) == n + 1


def test_periodic_word_complexity_saturates():
    w = "01" * 50
    assert complexity(w, 5) == 2


def test_standard_words_golden():
    cf = ContinuedFraction((1,) * 8)
    produced = standard_words(cf)
    # s_{-1} = "1", s_0 = "0", then Fibonacci-style concatenations.
    assert produced[0] == "1"
    assert produced[1] == "0"
    assert produced[2] == "01"
    assert produced[3] == "010"
    assert produced[4] == "01001"
    for prev, cur in zip(produced[3:], produced[4:]):
        assert cur.startswith(prev)


def test_standard_word_lengths_match_convergents():
    cf = ContinuedFraction((2, 3, 1, 2))
    produced = standard_words(cf)
    for n in range(-1, len(cf.partial_quotients) + 1):
        p, q = cf.convergent(n)
        w = produced[n + 1]
        assert len(w) == q
        assert one_length(w) == p


@settings(deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=5))
def test_standard_words_are_balanced(quotients):
    for w in standard_words(ContinuedFraction(tuple(quotients))):
        assert is_balanced(w)


def test_slope_convention_round_trip():
    cf = ContinuedFraction.from_slope_quotients((3, 2, 4))
    # [0; 3, 2, 4] = 9/31, reachable because the exponents become (2, 2, 4).
    assert cf.partial_quotients == (2, 2, 4)
    assert cf.value == Fraction(9, 31)
    with pytest.raises(ValueError):
        ContinuedFraction.from_slope_quotients((1, 2, 3))


def test_convergents_recurrence():
    cf = ContinuedFraction((1, 2, 3, 4, 5))
    convergents = cf.convergents
    for n in range(2, len(convergents)):
        p2, q2 = convergents[n - 2]
        p1, q1 = convergents[n - 1]
        p0, q0 = convergents[n]
        a = cf.partial_quotients[n - 2]
        assert (p0, q0) == (a * p1 + p2, a * q1 + q2)


@given(words_st.filter(bool), st.integers(min_value=0, max_value=39))
def test_canonical_rotation_is_rotation_invariant(w, k):
    k %= len(w)
    rotated = w[k:] + w[:k]
    assert canonical_rotation(rotated) == canonical_rotation(w)
    assert sorted(rotations(rotated)) == sorted(rotations(w))


def test_minimal_period():
    assert minimal_period("010010") == 3
    assert minimal_period("0101010") == 7  # not a full repetition of "01"
    assert minimal_period("0000") == 1


def test_enumerate_orbits_partitions_all_words():
    p, q = 3, 7
    total = sum(len(orbit.members) for orbit in enumerate_orbits(p, q))
    assert total == math.comb(q, p)


def test_balanced_orbit_unique_and_balanced():
    for q in range(2, 11):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            orbit = balanced_orbit(p, q)
            assert is_balanced(orbit.representative)
            balanced_orbits = [
                o for o in enumerate_orbits(p, q) if is_balanced(o.representative)
            ]
            assert balanced_orbits == [orbit]


def test_parse_slope_and_format_fraction():
    assert parse_slope("2/5") == Fraction(2, 5)
    assert parse_slope("0.25") == 0.25
    assert format_fraction(Fraction(2, 5)) == "2/5"
    assert format_fraction(Fraction(4)) == "4"


def test_mechanical_spec_prefix_matches_function():
    spec = MechanicalSpec(Fraction(2, 5), Fraction(1, 7))
    assert spec.prefix(25) == mechanical_word(Fraction(2, 5), 25, Fraction(1, 7))


def test_symbol_stream_sources():
    assert symbol_stream("01", 5) == "01010"
    assert symbol_stream(MechanicalSpec(Fraction(2, 5)), 10) == "0101001010"
    assert symbol_stream(iter("110110"), 4) == "1101"
    with pytest.raises(ValueError):
        symbol_stream(iter("11"), 4)
