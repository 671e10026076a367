"""Finite 0-1 words: balance tests, mechanical words, standard words, orbits.

Words are plain Python strings over the alphabet {'0', '1'}; this module is
the shared currency for every other testbed in the package.  Exact rational
slopes are handled with :class:`fractions.Fraction`; irrational slopes go
through mpmath at a configurable working precision, in which case the floor
in the mechanical-word formula is evaluated on the approximation (the only
source of error, and only relevant when ``n*gamma + delta`` sits within
rounding distance of an integer).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional, Union

import mpmath

__all__ = [
    "check_word",
    "one_length",
    "one_ratio",
    "rotations",
    "canonical_rotation",
    "minimal_period",
    "factor_set",
    "complexity",
    "is_balanced",
    "balance_witness",
    "mechanical_word",
    "MechanicalSpec",
    "ContinuedFraction",
    "standard_words",
    "Orbit",
    "enumerate_orbits",
    "balanced_orbit",
    "symbol_stream",
    "format_fraction",
    "parse_slope",
]

SlopeLike = Union[Fraction, int, float, str, "mpmath.mpf"]


def check_word(w: str) -> str:
    """Validate that ``w`` is a str containing only '0' and '1'; return it."""
    if not isinstance(w, str):
        raise TypeError(f"word must be a str of 0/1 characters, got {type(w).__name__}")
    if w.strip("01"):
        raise ValueError(f"word contains characters outside {{0,1}}: {w!r}")
    return w


def one_length(w: str) -> int:
    """Number of '1' letters in ``w``."""
    return check_word(w).count("1")


def one_ratio(w: str) -> Fraction:
    """Fraction of '1' letters, in lowest terms.  Empty words are rejected."""
    check_word(w)
    if not w:
        raise ValueError("one_ratio is undefined for the empty word")
    return Fraction(w.count("1"), len(w))


def rotations(w: str) -> list[str]:
    """All ``len(w)`` left-rotations of ``w``, starting with ``w`` itself."""
    check_word(w)
    doubled = w + w
    return [doubled[i : i + len(w)] for i in range(len(w))] if w else [""]


def canonical_rotation(w: str) -> str:
    """Lexicographically least rotation; the canonical orbit representative."""
    return min(rotations(w))


def minimal_period(w: str) -> int:
    """Smallest t with w = (w[:t]) * (len(w)//t); equals the orbit size."""
    check_word(w)
    m = len(w)
    for t in range(1, m + 1):
        if m % t == 0 and w[:t] * (m // t) == w:
            return t
    return m


def factor_set(w: str, n: int) -> set[str]:
    """Distinct length-``n`` factors (contiguous blocks) of ``w``."""
    check_word(w)
    if not 1 <= n <= len(w):
        raise ValueError(f"factor length {n} outside 1..{len(w)}")
    return {w[i : i + n] for i in range(len(w) - n + 1)}


def complexity(w: str, n: int) -> int:
    """Factor complexity p_w(n): the number of distinct length-n factors."""
    return len(factor_set(w, n))


def _balance_violation(w: str) -> Optional[tuple[str, str]]:
    """Scan window one-counts per length; return a violating factor pair."""
    m = len(w)
    bits = [1 if c == "1" else 0 for c in w]
    for n in range(1, m):
        count = sum(bits[:n])
        lo = hi = count
        lo_at = hi_at = 0
        for i in range(1, m - n + 1):
            count += bits[i + n - 1] - bits[i - 1]
            if count > hi:
                hi, hi_at = count, i
            elif count < lo:
                lo, lo_at = count, i
        if hi - lo >= 2:
            return w[hi_at : hi_at + n], w[lo_at : lo_at + n]
    return None


def is_balanced(w: str) -> bool:
    """True iff every pair of equal-length factors differs by at most one '1'."""
    check_word(w)
    return _balance_violation(w) is None


def balance_witness(w: str) -> Optional[tuple[str, str]]:
    """A factor pair ``(u, v)`` with ``|u|_1 - |v|_1 >= 2``, or None if balanced.

    The pair returned is the first maximal/minimal count pair at the smallest
    violating factor length, so the witness is deterministic.
    """
    check_word(w)
    return _balance_violation(w)


def _floor_terms(gamma, delta, n: int, bits: int) -> list[int]:
    """floor(k*gamma + delta) for k = 1..n+1, exact or via mpmath."""
    if isinstance(gamma, (Fraction, int)) and isinstance(delta, (Fraction, int)):
        g, d = Fraction(gamma), Fraction(delta)
        return [math.floor(k * g + d) for k in range(1, n + 2)]
    with mpmath.workprec(bits):
        g = mpmath.mpf(gamma) if not isinstance(gamma, Fraction) else mpmath.mpf(gamma.numerator) / gamma.denominator
        d = mpmath.mpf(delta) if not isinstance(delta, Fraction) else mpmath.mpf(delta.numerator) / delta.denominator
        return [int(mpmath.floor(k * g + d)) for k in range(1, n + 2)]


def mechanical_word(gamma: SlopeLike, n: int, delta: SlopeLike = 0, bits: int = 128) -> str:
    """First ``n`` letters of the mechanical word with slope gamma, phase delta.

    Letter k (1-indexed) is ``floor((k+1)*gamma + delta) - floor(k*gamma + delta)``.
    Exact when gamma and delta are Fraction/int; otherwise evaluated with
    mpmath at ``bits`` bits of working precision.

    Args:
        gamma: slope in [0, 1].
        n: number of letters, >= 0.
        delta: phase in [0, 1).
        bits: mpmath working precision for non-rational inputs.
    """
    if n < 0:
        raise ValueError("length n must be >= 0")
    if isinstance(gamma, str):
        gamma = parse_slope(gamma)
    if isinstance(delta, str):
        delta = parse_slope(delta)
    if not 0 <= float(gamma) <= 1:
        raise ValueError(f"slope gamma={gamma} outside [0, 1]")
    if not 0 <= float(delta) < 1:
        raise ValueError(f"phase delta={delta} outside [0, 1)")
    floors = _floor_terms(gamma, delta, n, bits)
    word = "".join(str(floors[k + 1] - floors[k]) for k in range(n))
    return check_word(word)


@dataclass(frozen=True)
class MechanicalSpec:
    """A (slope, phase) pair used as an unbounded 0-1 symbol source."""

    gamma: SlopeLike
    delta: SlopeLike = 0
    bits: int = 128

    def prefix(self, n: int) -> str:
        return mechanical_word(self.gamma, n, self.delta, self.bits)


def symbol_stream(source, n: int) -> str:
    """Materialize ``n`` symbols from an admission/sequence source.

    Sources: a nonempty word (repeated cyclically), a MechanicalSpec, or a
    finite iterable of 0/1 items (which must supply at least ``n`` symbols).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(source, MechanicalSpec):
        return source.prefix(n)
    if isinstance(source, str):
        check_word(source)
        if not source:
            raise ValueError("cannot stream symbols from an empty word")
        reps = -(-n // len(source))
        return (source * reps)[:n]
    if isinstance(source, Iterable):
        out = []
        for item in source:
            out.append(str(int(item)))
            if len(out) == n:
                return check_word("".join(out))
        raise ValueError(f"source provided only {len(out)} of {n} requested symbols")
    raise TypeError(f"unsupported symbol source: {type(source).__name__}")


@dataclass(frozen=True)
class ContinuedFraction:
    """Positive partial quotients a_1..a_N driving standard words and matrices.

    The quotients are used verbatim as the exponents in the standard-word
    recurrence s_{n+1} = s_n^{a_{n+1}} s_{n-1}.  Convergents are seeded with
    (p_{-1}, q_{-1}) = (1, 1) and (p_0, q_0) = (0, 1), which aligns them with
    the words: s_n has exactly q_n letters, p_n of them '1'.  Under this
    seeding the slope of the infinite extension is the ordinary continued
    fraction [0; a_1 + 1, a_2, a_3, ...]; use :meth:`from_slope_quotients`
    to build from the ordinary expansion of a slope <= 1/2.
    """

    partial_quotients: tuple[int, ...]

    def __post_init__(self):
        quotients = tuple(int(a) for a in self.partial_quotients)
        if not quotients:
            raise ValueError("need at least one partial quotient")
        if any(a < 1 for a in quotients):
            raise ValueError(f"partial quotients must be >= 1, got {quotients}")
        object.__setattr__(self, "partial_quotients", quotients)

    @classmethod
    def from_slope_quotients(cls, quotients: Iterable[int]) -> "ContinuedFraction":
        """Build from the ordinary expansion [0; c_1, c_2, ...] of a slope.

        Requires c_1 >= 2 (slope <= 1/2); the exponent sequence is then
        (c_1 - 1, c_2, c_3, ...).
        """
        quotients = tuple(int(c) for c in quotients)
        if not quotients or quotients[0] < 2:
            raise ValueError("leading ordinary quotient must be >= 2 (slope <= 1/2)")
        return cls((quotients[0] - 1,) + quotients[1:])

    @property
    def convergents(self) -> list[tuple[int, int]]:
        """(p_n, q_n) for n = -1, 0, 1, ..., N; entry i holds index n = i - 1."""
        pairs = [(1, 1), (0, 1)]
        for a in self.partial_quotients:
            p = a * pairs[-1][0] + pairs[-2][0]
            q = a * pairs[-1][1] + pairs[-2][1]
            pairs.append((p, q))
        return pairs

    def convergent(self, n: int) -> tuple[int, int]:
        """(p_n, q_n) for -1 <= n <= N."""
        if not -1 <= n <= len(self.partial_quotients):
            raise IndexError(f"convergent index {n} outside -1..{len(self.partial_quotients)}")
        return self.convergents[n + 1]

    @property
    def value(self) -> Fraction:
        """p_N / q_N, the slope of the deepest standard word."""
        p, q = self.convergents[-1]
        return Fraction(p, q)


def standard_words(cf: ContinuedFraction) -> list[str]:
    """Standard words [s_{-1}, s_0, s_1, ..., s_N] for the given quotients.

    s_{-1} = "1", s_0 = "0", and s_{n+1} = s_n^{a_{n+1}} s_{n-1}.  Each s_n
    has q_n letters and p_n ones, matching ``cf.convergents``.
    """
    words = ["1", "0"]
    for a in cf.partial_quotients:
        words.append(words[-1] * a + words[-2])
    return words


@dataclass(frozen=True)
class Orbit:
    """A cyclic-shift equivalence class of words.

    ``representative`` is the lexicographically least rotation and ``period``
    is the minimal period of any member, which is also the orbit size.
    """

    representative: str
    period: int

    def __post_init__(self):
        check_word(self.representative)
        if self.representative != canonical_rotation(self.representative):
            raise ValueError(f"{self.representative!r} is not a canonical rotation")
        if self.period != minimal_period(self.representative):
            raise ValueError("period does not match the representative")

    @property
    def members(self) -> list[str]:
        """The distinct rotations, in left-rotation order from the representative."""
        return rotations(self.representative)[: self.period]


def enumerate_orbits(p: int, q: int) -> list[Orbit]:
    """All rotation orbits of length-``q`` words with exactly ``p`` ones.

    Sorted by representative.  The orbit sizes sum to C(q, p).
    """
    if q < 1:
        raise ValueError("word length q must be >= 1")
    if not 0 <= p <= q:
        raise ValueError(f"one-count p={p} outside 0..{q}")
    reps = []
    for positions in combinations(range(q), p):
        chars = ["0"] * q
        for i in positions:
            chars[i] = "1"
        w = "".join(chars)
        if w == canonical_rotation(w):
            reps.append(w)
    return [Orbit(w, minimal_period(w)) for w in sorted(reps)]


def balanced_orbit(p: int, q: int) -> Orbit:
    """The unique balanced orbit with ``p`` ones in length ``q``.

    Requires gcd(p, q) = 1 with 0 <= p <= q (p in {0, q} only for q = 1);
    equals the orbit of the mechanical word of slope p/q and phase 0.
    """
    if q < 1:
        raise ValueError("word length q must be >= 1")
    if not 0 <= p <= q:
        raise ValueError(f"one-count p={p} outside 0..{q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p/q = {p}/{q} is not in lowest terms")
    w = mechanical_word(Fraction(p, q), q)
    orbit = Orbit(canonical_rotation(w), minimal_period(w))
    assert is_balanced(orbit.representative)
    return orbit


def format_fraction(x: Fraction) -> str:
    """Serialize a rational as 'p/q' in lowest terms ('p' when q == 1)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_slope(text: str) -> Union[Fraction, float]:
    """Parse 'p/q' as an exact Fraction, else fall back to float."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)
