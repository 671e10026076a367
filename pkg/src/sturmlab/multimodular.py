"""Multimodularity checks and sliding-window time averages.

A function J on Z^m is multimodular when, for every pair of distinct vectors
v != w from the basis F = {f_0 = -e_1, f_i = e_i - e_{i+1} (1 <= i < m),
f_m = e_m}, the inequality J(u + v) + J(u + w) >= J(u) + J(u + v + w) holds.
Time averages of such J over sliding windows of a 0-1 admission sequence are
minimized by mechanical (balanced) sequences among all sequences with the
same density; the queue simulation in ``queueing`` provides the stochastic
counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from .words import symbol_stream

__all__ = [
    "multimodular_basis",
    "LatticeFunction",
    "LatticeDomainError",
    "check_multimodular",
    "window_average",
    "affine_function",
    "convex_window_load",
    "slotted_queue_backlog",
    "negative_product",
    "coordinate_max",
]


def multimodular_basis(m: int) -> list[tuple[int, ...]]:
    """The m + 1 basis vectors f_0, ..., f_m in Z^m; they sum to zero."""
    if m < 1:
        raise ValueError("arity m must be >= 1")
    vectors = [tuple(-1 if j == 0 else 0 for j in range(m))]
    for i in range(1, m):
        vectors.append(tuple(1 if j == i - 1 else -1 if j == i else 0 for j in range(m)))
    vectors.append(tuple(1 if j == m - 1 else 0 for j in range(m)))
    return vectors


@dataclass(frozen=True)
class LatticeFunction:
    """A named function on integer vectors of fixed arity."""

    arity: int
    fn: Callable[[tuple[int, ...]], object]
    name: str = ""

    def __call__(self, u: Sequence[int]):
        u = tuple(u)
        if len(u) != self.arity:
            raise ValueError(f"{self.name or 'function'} expects arity {self.arity}, got {len(u)}")
        return self.fn(u)


class LatticeDomainError(ValueError):
    """Raised when an evaluation leaves the function's tabulated domain."""

    def __init__(self, point: tuple[int, ...], cause: Exception):
        super().__init__(f"lattice function undefined at {point}: {cause}")
        self.point = point


def _evaluate(J: LatticeFunction, point: tuple[int, ...]):
    try:
        return J(point)
    except LatticeDomainError:
        raise
    except Exception as exc:
        raise LatticeDomainError(point, exc) from exc


def check_multimodular(
    J: LatticeFunction, box: Sequence[tuple[int, int]]
) -> tuple[bool, list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]]:
    """Test the multimodularity inequalities on an integer box.

    ``box`` gives inclusive (lo, hi) bounds per coordinate; J must be defined
    on the box inflated by one basis step in every direction.  Returns
    (verdict, violations) with every violating triple (u, v, w) reported.

    Exact when J returns ints/Fractions; float-valued J is compared as-is.
    """
    if len(box) != J.arity:
        raise ValueError(f"box has {len(box)} coordinates, function arity is {J.arity}")
    basis = multimodular_basis(J.arity)
    violations = []
    ranges = [range(lo, hi + 1) for lo, hi in box]
    for u in product(*ranges):
        base = _evaluate(J, u)
        for v, w in combinations(basis, 2):
            uv = tuple(a + b for a, b in zip(u, v))
            uw = tuple(a + b for a, b in zip(u, w))
            uvw = tuple(a + b + c for a, b, c in zip(u, v, w))
            if _evaluate(J, uv) + _evaluate(J, uw) < base + _evaluate(J, uvw):
                violations.append((u, v, w))
    return not violations, violations


def window_average(J: LatticeFunction, source, n: int):
    """Average of J over the first ``n`` sliding windows of a symbol source.

    The source may be a word (extended periodically), a MechanicalSpec, or a
    finite iterable providing at least n + arity - 1 symbols.  Returns an
    exact Fraction when J returns ints/Fractions, else a float.
    """
    if n < 1:
        raise ValueError("need at least one window")
    m = J.arity
    stream = symbol_stream(source, n + m - 1)
    bits = tuple(int(c) for c in stream)
    total = None
    for k in range(n):
        value = _evaluate(J, bits[k : k + m])
        total = value if total is None else total + value
    if isinstance(total, (int, Fraction)):
        return Fraction(total, n)
    return total / n


def affine_function(coefficients: Sequence, constant=0, name: str = "affine") -> LatticeFunction:
    """J(u) = c . u + b; multimodular with equality everywhere."""
    coefficients = tuple(coefficients)

    def fn(u):
        return sum(c * x for c, x in zip(coefficients, u)) + constant

    return LatticeFunction(len(coefficients), fn, name)


def convex_window_load(m: int, target: int = 1, name: str = "") -> LatticeFunction:
    """J(u) = (u_1 + ... + u_m - target)^2; convex in the window sum."""

    def fn(u):
        return (sum(u) - target) ** 2

    return LatticeFunction(m, fn, name or f"window-load(m={m},target={target})")


def slotted_queue_backlog(m: int, name: str = "") -> LatticeFunction:
    """Backlog after m slots of a unit-service queue fed by the window.

    q_0 = 0 and q_i = max(q_{i-1} + u_i - 1, 0); J(u) = q_m.  Negative
    admissions are allowed (they drain the queue faster), so J is defined on
    all of Z^m.
    """

    def fn(u):
        backlog = 0
        for x in u:
            backlog = max(backlog + x - 1, 0)
        return backlog

    return LatticeFunction(m, fn, name or f"slotted-backlog(m={m})")


def negative_product(name: str = "neg-product") -> LatticeFunction:
    """J(u) = -(u_1 * u_2); a classic non-multimodular fixture."""
    return LatticeFunction(2, lambda u: -(u[0] * u[1]), name)


def coordinate_max(m: int = 2, name: str = "") -> LatticeFunction:
    """J(u) = max(u); not multimodular either."""
    return LatticeFunction(m, lambda u: max(u), name or f"coordinate-max(m={m})")
