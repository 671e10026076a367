"""Doubling-map orbit measures, the convex order, and maximizing orbits.

A length-q word w with p ones encodes the periodic doubling-map orbit of
x = b(w) / (2^q - 1); the uniform measure on that orbit has barycenter p/q.
The balanced word's measure is the least element of its barycenter class in
the convex (majorization) order, which this module checks exactly with
hockey-stick integrals over merged support points.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

import mpmath

from .cyclic import binary_value
from .words import (
    balanced_orbit,
    check_word,
    enumerate_orbits,
    format_fraction,
    is_balanced,
    minimal_period,
    rotations,
)

__all__ = [
    "DiscreteMeasure",
    "orbit_measure",
    "sturmian_measure",
    "barycenter",
    "mixture",
    "convex_order_witness",
    "convex_order_leq",
    "LeastElementScan",
    "verify_sturmian_least",
    "PhiSample",
    "phi_sample",
    "maximize_over_orbits",
    "cosine_objective",
    "tent_objective",
    "peak_objective_scan",
]


@dataclass(frozen=True)
class DiscreteMeasure:
    """A finitely supported probability measure on [0, 1).

    ``points`` are strictly increasing Fractions, ``weights`` are positive
    Fractions summing to one.  ``word`` records the generating 0-1 word when
    the measure is a doubling-map orbit measure, else None.
    """

    points: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    word: Optional[str] = None

    def __post_init__(self):
        if len(self.points) != len(self.weights) or not self.points:
            raise ValueError("points and weights must be equal-length and nonempty")
        if any(not 0 <= x < 1 for x in self.points):
            raise ValueError("support points must lie in [0, 1)")
        if any(self.points[i] >= self.points[i + 1] for i in range(len(self.points) - 1)):
            raise ValueError("support points must be strictly increasing")
        if any(w <= 0 for w in self.weights) or sum(self.weights) != 1:
            raise ValueError("weights must be positive and sum to 1")

    @property
    def barycenter(self) -> Fraction:
        return sum((w * x for x, w in zip(self.points, self.weights)), Fraction(0))

    def hockey_stick(self, t: Fraction) -> Fraction:
        """Integral of (x - t)_+ against the measure, exactly."""
        return sum((w * (x - t) for x, w in zip(self.points, self.weights) if x > t), Fraction(0))

    def to_json_dict(self) -> dict:
        record = {
            "word": self.word,
            "support": [format_fraction(x) for x in self.points],
        }
        if len(set(self.weights)) == 1:
            record["weight"] = format_fraction(self.weights[0])
        else:
            record["weights"] = [format_fraction(w) for w in self.weights]
        return record


def orbit_measure(w: str) -> DiscreteMeasure:
    """Uniform measure on the doubling-map orbit encoded by the word ``w``.

    Support points are b(r) / (2^q - 1) over the rotations r of w; a proper
    period collapses the support accordingly (weights stay uniform on the
    distinct points).  The all-ones word is rejected: its encoded point is 1,
    the excluded endpoint.
    """
    check_word(w)
    if not w:
        raise ValueError("orbit measure is undefined for the empty word")
    if set(w) == {"1"}:
        raise ValueError("the all-ones word encodes the excluded endpoint x = 1")
    t = minimal_period(w)
    core = w[:t]
    denominator = 2**t - 1
    points = sorted(Fraction(binary_value(r), denominator) for r in rotations(core))
    weight = Fraction(1, t)
    return DiscreteMeasure(tuple(points), (weight,) * t, word=w)


def sturmian_measure(p: int, q: int) -> DiscreteMeasure:
    """Orbit measure of the balanced word with p ones in length q.

    gcd(p, q) = 1 with 0 <= p < q; the degenerate slope 0/1 gives the point
    mass at the fixed point 0.
    """
    if not 0 <= p < q:
        raise ValueError(f"need 0 <= p < q, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p/q = {p}/{q} is not in lowest terms")
    return orbit_measure(balanced_orbit(p, q).representative)


def barycenter(mu: DiscreteMeasure) -> Fraction:
    """Mean of the identity against ``mu``; equals one_ratio of its word."""
    return mu.barycenter


def mixture(measures: Sequence[DiscreteMeasure], coefficients: Sequence[Fraction]) -> DiscreteMeasure:
    """Convex combination of measures; coefficients must be positive, sum 1."""
    if len(measures) != len(coefficients) or not measures:
        raise ValueError("need equally many measures and coefficients, at least one")
    coefficients = [Fraction(c) for c in coefficients]
    if any(c <= 0 for c in coefficients) or sum(coefficients) != 1:
        raise ValueError("coefficients must be positive and sum to 1")
    combined: dict[Fraction, Fraction] = {}
    for mu, c in zip(measures, coefficients):
        for x, w in zip(mu.points, mu.weights):
            combined[x] = combined.get(x, Fraction(0)) + c * w
    points = tuple(sorted(combined))
    return DiscreteMeasure(points, tuple(combined[x] for x in points))


def convex_order_witness(mu: DiscreteMeasure, nu: DiscreteMeasure) -> Optional[Fraction]:
    """A threshold t violating mu <=_cx nu, or None when the order holds.

    Both measures must have the same barycenter (otherwise they are simply
    incomparable in the convex order and a ValueError is raised).  For
    finitely supported equal-mean measures the order holds iff the
    hockey-stick integral of mu is <= that of nu at every merged support
    point, since the difference is piecewise linear with kinks only there
    and vanishes at both ends.
    """
    if mu.barycenter != nu.barycenter:
        raise ValueError(
            f"convex order needs equal barycenters: {mu.barycenter} != {nu.barycenter}"
        )
    for t in sorted(set(mu.points) | set(nu.points)):
        if mu.hockey_stick(t) > nu.hockey_stick(t):
            return t
    return None


def convex_order_leq(mu: DiscreteMeasure, nu: DiscreteMeasure) -> bool:
    """True iff mu <=_cx nu (same barycenter, mu less spread out)."""
    return convex_order_witness(mu, nu) is None


@dataclass(frozen=True)
class LeastElementScan:
    """Result of checking one slope class p/q against all competitors."""

    p: int
    q: int
    competitors: int
    mixtures: int
    counterexamples: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_sturmian_least(
    q_max: int, mixtures_per_pair: int = 100, seed: int = 0
) -> list[LeastElementScan]:
    """Check the balanced measure is convex-order least in its barycenter class.

    For every coprime pair (p, q) with q <= q_max the competitors are the
    orbit measures of all words of length kq with kp ones (kq <= q_max), all
    of which share the barycenter p/q, plus ``mixtures_per_pair`` seeded
    random convex combinations drawn from that pool (their barycenters equal
    p/q automatically, so no re-weighting is ever needed).
    """
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    rng = random.Random(seed)
    scans = []
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            sturmian = sturmian_measure(p, q)
            pool = []
            k = 1
            while k * q <= q_max:
                for orbit in enumerate_orbits(k * p, k * q):
                    pool.append(orbit_measure(orbit.representative))
                k += 1
            bad = []
            for competitor in pool:
                if not convex_order_leq(sturmian, competitor):
                    bad.append(competitor.word or "<mixture>")
            tested_mixtures = 0
            for _ in range(mixtures_per_pair):
                size = rng.randint(2, min(4, len(pool))) if len(pool) >= 2 else 1
                chosen = rng.sample(pool, size)
                raw = [Fraction(rng.randint(1, 100)) for _ in chosen]
                total = sum(raw)
                blend = mixture(chosen, [c / total for c in raw])
                tested_mixtures += 1
                if not convex_order_leq(sturmian, blend):
                    bad.append("mixture:" + "+".join(m.word or "?" for m in chosen))
            scans.append(LeastElementScan(p, q, len(pool), tested_mixtures, tuple(bad)))
    return scans


@dataclass(frozen=True)
class PhiSample:
    """One truncated evaluation of the conjugacy series at a point."""

    gamma: Union[Fraction, float]
    x: Union[Fraction, float]
    terms: int
    value: Union[Fraction, "mpmath.mpf"]
    error_bound: Fraction


def phi_sample(gamma, x, terms: int, bits: Optional[int] = None) -> PhiSample:
    """Truncated sum sum_{n<terms} [x + n*gamma mod 1 in [1-gamma, 1)] / 2^{n+1}.

    The full series semiconjugates the rotation by gamma to the doubling map;
    the truncation error is at most 2^-terms.  Exact Fractions in, exact
    Fraction out; otherwise mpmath at ``bits`` (default terms + 64) bits.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    exact = isinstance(gamma, (Fraction, int)) and isinstance(x, (Fraction, int))
    if exact:
        g, point = Fraction(gamma), Fraction(x)
        if not (0 <= g <= 1 and 0 <= point < 1):
            raise ValueError("need gamma in [0, 1] and x in [0, 1)")
        value = Fraction(0)
        for n in range(terms):
            pos = (point + n * g) % 1
            if pos >= 1 - g:
                value += Fraction(1, 2 ** (n + 1))
        return PhiSample(g, point, terms, value, Fraction(1, 2**terms))
    prec = bits if bits is not None else terms + 64
    with mpmath.workprec(prec):
        g = mpmath.mpf(gamma) if not isinstance(gamma, Fraction) else mpmath.mpf(gamma.numerator) / gamma.denominator
        point = mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator
        if not (0 <= g <= 1 and 0 <= point < 1):
            raise ValueError("need gamma in [0, 1] and x in [0, 1)")
        value = mpmath.mpf(0)
        for n in range(terms):
            pos = mpmath.frac(point + n * g)
            if pos >= 1 - g:
                value += mpmath.mpf(2) ** (-(n + 1))
        return PhiSample(float(g), float(point), terms, value, Fraction(1, 2**terms))


def maximize_over_orbits(
    f: Callable[[float], float], max_period: int
) -> tuple[DiscreteMeasure, float]:
    """Best periodic orbit measure for the integral of ``f``, brute force.

    Scans every primitive orbit of period 1..max_period (all one-counts,
    excluding the all-ones word), evaluating f at float(support point).
    Ties break deterministically toward the first candidate in (period,
    representative) order, i.e. toward the shortest, lexicographically least
    canonical representative.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    best: Optional[tuple[DiscreteMeasure, float]] = None
    for length in range(1, max_period + 1):
        for p in range(0, length):
            for orbit in enumerate_orbits(p, length):
                if orbit.period != length:
                    continue
                mu = orbit_measure(orbit.representative)
                value = sum(float(w) * f(float(x)) for x, w in zip(mu.points, mu.weights))
                if best is None or value > best[1]:
                    best = (mu, value)
    assert best is not None
    return best


def cosine_objective(theta: float) -> Callable[[float], float]:
    """x -> cos(2*pi*(x - theta)), peaked at theta on the circle."""

    def f(x: float) -> float:
        return math.cos(2 * math.pi * (x - theta))

    return f


def tent_objective(theta: float) -> Callable[[float], float]:
    """x -> 1 - 4*d(x, theta) with d the circle distance; tent peak at theta."""

    def f(x: float) -> float:
        d = abs(x - theta) % 1.0
        return 1 - 4 * min(d, 1 - d)

    return f


def peak_objective_scan(
    thetas: Iterable[float], max_period: int, kind: str = "tent"
) -> list[dict]:
    """Maximizing orbit per peak location; rows for CSV/JSON emission."""
    factory = {"tent": tent_objective, "cosine": cosine_objective}.get(kind)
    if factory is None:
        raise ValueError(f"unknown objective kind {kind!r}; use 'tent' or 'cosine'")
    rows = []
    for theta in thetas:
        mu, value = maximize_over_orbits(factory(theta), max_period)
        rows.append(
            {
                "theta": theta,
                "kind": kind,
                "word": mu.word,
                "ratio": format_fraction(mu.barycenter),
                "value": value,
                "balanced": is_balanced(mu.word or ""),
            }
        )
    return rows
