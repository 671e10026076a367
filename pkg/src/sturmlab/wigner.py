"""Ring electron configurations under convex decreasing pair potentials.

Electrons sit on a q-site ring, interactions depend only on the ring
distance, and the energy of an occupancy word is half the sum of the pair
potential over ordered pairs.  Exhaustive orbit scans locate the ground
state; for every shipped convex decreasing potential the minimizer is the
balanced configuration, while a deliberately concave increasing fixture
rewards clustering and guards the check against being vacuous.

Power-law potentials at integer exponents evaluate to exact rationals, so
those scans order configurations with no floating-point ambiguity; the
other families compare with an explicit tie margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .words import Orbit, check_word, enumerate_orbits, is_balanced, one_length

__all__ = [
    "Potential",
    "coulomb",
    "inverse_power",
    "exponential_decay",
    "screened",
    "anti_coulomb",
    "default_potentials",
    "is_convex_decreasing",
    "RingConfiguration",
    "ring_distance",
    "ring_energy",
    "OrbitEnergy",
    "GroundStateReport",
    "ground_state",
]

Energy = Union[Fraction, float]

EXHAUSTIVE_Q = 20


@dataclass(frozen=True)
class Potential:
    """Named pair potential V(r) on integer ring distances r >= 1."""

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in ("coulomb", "power", "exponential", "screened", "anti"):
            raise ValueError(f"unknown potential kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(self.params))

    def value(self, r) -> Energy:
        if r <= 0:
            raise ValueError(f"potential undefined at distance {r}")
        if self.kind == "coulomb":
            return Fraction(1) / Fraction(r)
        if self.kind == "power":
            s = self.params[0]
            if isinstance(s, int):
                return Fraction(1) / Fraction(r) ** s
            return float(r) ** (-float(s))
        if self.kind == "exponential":
            return math.exp(-float(self.params[0]) * float(r))
        if self.kind == "screened":
            return math.exp(-float(self.params[0]) * float(r)) / float(r)
        return -(Fraction(1) / Fraction(r))

    def describe(self) -> str:
        if self.params:
            inner = ",".join(str(p) for p in self.params)
            return f"{self.kind}({inner})"
        return self.kind

    def image_tail(self, m: int, q: int, cutoff: int) -> float:
        """Upper bound on the truncation error of the periodic image sum.

        Integral bound for integrable power laws, exact geometric remainder
        for exponential decay.  Families whose image series diverges (or is
        not decreasing at all) refuse the mode.
        """
        if self.kind == "power":
            s = float(self.params[0])
            if s <= 1:
                raise ValueError("periodic image sum diverges for r**-s with s <= 1")
            scale = q * (s - 1)
            return ((m + cutoff * q) ** (1 - s) + (cutoff * q - m) ** (1 - s)) / scale
        if self.kind in ("exponential", "screened"):
            lam = float(self.params[0])
            r_plus = m + (cutoff + 1) * q
            r_minus = (cutoff + 1) * q - m
            return (math.exp(-lam * r_plus) + math.exp(-lam * r_minus)) / (
                1 - math.exp(-lam * q)
            )
        if self.kind == "coulomb":
            raise ValueError("periodic image sum diverges for 1/r")
        raise ValueError(f"periodic image sum unsupported for {self.kind!r}")


def coulomb() -> Potential:
    """V(r) = 1/r, exact rationals."""
    return Potential("coulomb")


def inverse_power(s: int = 3) -> Potential:
    """V(r) = r**-s; exact rationals for integer s."""
    if not s > 0:
        raise ValueError("exponent must be positive")
    return Potential("power", (s,))


def exponential_decay(rate: float = 1.0) -> Potential:
    """V(r) = exp(-rate * r)."""
    if not rate > 0:
        raise ValueError("decay rate must be positive")
    return Potential("exponential", (rate,))


def screened(rate: float = 1.0) -> Potential:
    """V(r) = exp(-rate * r) / r."""
    if not rate > 0:
        raise ValueError("decay rate must be positive")
    return Potential("screened", (rate,))


def anti_coulomb() -> Potential:
    """V(r) = -1/r: increasing and concave, so clustering pays.

    Fixture used to confirm the balanced-minimizer checks can fail.
    """
    return Potential("anti")


def default_potentials() -> tuple[Potential, ...]:
    return (coulomb(), inverse_power(3), exponential_decay(1.0))


def is_convex_decreasing(potential: Potential, r_max: int = 16) -> bool:
    """Grid check of the ground-state hypotheses on r = 1..r_max.

    Requires V nonincreasing, discretely convex
    (V(r-1) + V(r+1) >= 2 V(r)), and decayed to at most a quarter of V(1)
    by r_max.
    """
    if r_max < 4:
        raise ValueError("need r_max >= 4 for a meaningful grid")
    values = [potential.value(r) for r in range(1, r_max + 1)]
    decreasing = all(values[i + 1] <= values[i] for i in range(len(values) - 1))
    convex = all(
        values[i - 1] + values[i + 1] >= 2 * values[i]
        for i in range(1, len(values) - 1)
    )
    vanishing = 0 <= values[-1] <= values[0] / 4
    return decreasing and convex and vanishing


@dataclass(frozen=True)
class RingConfiguration:
    q: int
    occupancy: str

    def __post_init__(self):
        check_word(self.occupancy)
        if self.q != len(self.occupancy):
            raise ValueError(
                f"ring size {self.q} != occupancy length {len(self.occupancy)}"
            )
        if self.q < 1:
            raise ValueError("ring needs at least one site")

    @property
    def electrons(self) -> tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.occupancy) if ch == "1")

    @property
    def density(self) -> Fraction:
        return Fraction(one_length(self.occupancy), self.q)


def ring_distance(i: int, j: int, q: int) -> int:
    m = abs(i - j) % q
    return min(m, q - m)


def _pair_value(potential: Potential, m: int, q: int, images: int) -> Energy:
    if images == 0:
        return potential.value(min(m, q - m))
    total = potential.value(m)
    for k in range(1, images + 1):
        total = total + potential.value(m + k * q) + potential.value(k * q - m)
    return total


def ring_energy(
    configuration: Union[str, RingConfiguration],
    potential: Potential,
    images: int = 0,
) -> Energy:
    """Half-sum of V over ordered electron pairs at ring distance.

    With images > 0 each pair interacts through every lattice copy up to the
    cutoff, Sum over k of V(|m + k q|); the potential must have a summable
    image series (checked via its tail bound).
    """
    if isinstance(configuration, RingConfiguration):
        w = configuration.occupancy
    else:
        check_word(configuration)
        w = configuration
    q = len(w)
    if q < 1:
        raise ValueError("empty ring")
    if images < 0:
        raise ValueError("image cutoff must be >= 0")
    electrons = [i for i, ch in enumerate(w) if ch == "1"]
    if images > 0:
        potential.image_tail(1, max(q, 2), images)
    total: Energy = Fraction(0)
    for a in range(len(electrons)):
        for b in range(a + 1, len(electrons)):
            m = electrons[b] - electrons[a]
            total = total + _pair_value(potential, m, q, images)
    return total


def _energy_error_bound(
    w: str, potential: Potential, images: int
) -> float:
    if images == 0:
        return 0.0
    q = len(w)
    electrons = [i for i, ch in enumerate(w) if ch == "1"]
    bound = 0.0
    for a in range(len(electrons)):
        for b in range(a + 1, len(electrons)):
            bound += potential.image_tail(electrons[b] - electrons[a], q, images)
    return bound


@dataclass(frozen=True)
class OrbitEnergy:
    orbit: Orbit
    energy: Energy
    balanced: bool
    argmin: bool


@dataclass(frozen=True)
class GroundStateReport:
    p: int
    q: int
    potential: Potential
    rows: tuple[OrbitEnergy, ...]
    min_energy: Energy
    argmin: tuple[Orbit, ...]
    balanced: bool
    exact: bool


def ground_state(
    p: int,
    q: int,
    potential: Potential,
    images: int = 0,
    margin: float = 1e-12,
) -> GroundStateReport:
    """Exhaustive orbit-level minimum of the ring energy.

    Rotation invariance allows scanning one representative per orbit.  With
    exact rational energies the argmin set is sharp; with float energies
    every orbit within ``margin`` (plus image tail bounds) of the minimum
    counts as tied, so near-degeneracies surface instead of hiding.
    """
    if q < 1:
        raise ValueError("ring needs at least one site")
    if not 0 <= p <= q:
        raise ValueError(f"electron count {p} outside 0..{q}")
    if q > EXHAUSTIVE_Q:
        raise ValueError(f"q={q} beyond the exhaustive bound {EXHAUSTIVE_Q}")
    orbits = enumerate_orbits(p, q)
    energies = [ring_energy(o.representative, potential, images) for o in orbits]
    exact = images == 0 and all(isinstance(e, Fraction) for e in energies)
    minimum = min(energies)
    if exact:
        tied = [e == minimum for e in energies]
    else:
        # Truncated image sums underestimate the true energy by at most the
        # tail bound, so any orbit whose computed energy undercuts the
        # smallest upper envelope could be the true minimizer.
        bounds = [_energy_error_bound(o.representative, potential, images) for o in orbits]
        ceiling = min(float(e) + b for e, b in zip(energies, bounds))
        tied = [float(e) <= ceiling + margin for e in energies]
    rows = tuple(
        OrbitEnergy(o, e, is_balanced(o.representative), t)
        for o, e, t in zip(orbits, energies, tied)
    )
    argmin = tuple(row.orbit for row in rows if row.argmin)
    balanced = all(row.balanced for row in rows if row.argmin)
    return GroundStateReport(p, q, potential, rows, minimum, argmin, balanced, exact)
