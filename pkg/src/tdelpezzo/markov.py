"""Markov-type equations x^2 + y^2 + k z^2 = m x y z and their Vieta trees."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd, isqrt
from typing import NamedTuple

from .errors import MutationUndefined, NotWellFormed, TDPError

COORDS = ("x", "y", "z")


@dataclass(frozen=True)
class MarkovEquation:
    k: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise TDPError(f"k and m must be positive, got k={self.k}, m={self.m}")
        if not (self.k == self.m or (self.k, self.m) == (1, 3)):
            raise TDPError(
                f"only k = m and the classical k=1, m=3 are supported, got k={self.k}, m={self.m}"
            )

    @property
    def symmetric(self) -> bool:
        """True when z plays the same role as x and y (k = 1)."""
        return self.k == 1

    def __str__(self):
        kz = "z^2" if self.k == 1 else f"{self.k}z^2"
        return f"x^2+y^2+{kz}={self.m}xyz"


MARKOV_5 = MarkovEquation(5, 5)
CLASSICAL = MarkovEquation(1, 3)


class MarkovTriple(NamedTuple):
    a: int
    b: int
    c: int

    def to_json(self):
        return {"a": self.a, "b": self.b, "c": self.c}


def canonical(eq: MarkovEquation, t) -> MarkovTriple:
    """Sort (a, b); sort all three when the equation is symmetric in z too."""
    a, b, c = t
    if eq.symmetric:
        return MarkovTriple(*sorted((a, b, c)))
    return MarkovTriple(min(a, b), max(a, b), c)


def is_solution(eq: MarkovEquation, t) -> bool:
    a, b, c = t
    if min(a, b, c) < 1:
        return False
    return a * a + b * b + eq.k * c * c == eq.m * a * b * c


def mutate(eq: MarkovEquation, t, coord: str) -> MarkovTriple:
    """Replace one coordinate by the other root of the quadratic it solves.

    Positions are kept (no reordering), so mutating twice in the same
    coordinate returns the input.
    """
    a, b, c = t
    if coord == "x":
        return MarkovTriple(eq.m * b * c - a, b, c)
    if coord == "y":
        return MarkovTriple(a, eq.m * a * c - b, c)
    if coord == "z":
        num = eq.m * a * b
        if num % eq.k:
            raise MutationUndefined(f"z-jump of {tuple(t)} is not integral")
        c2 = num // eq.k - c
        if c2 < 1:
            raise MutationUndefined(f"z-jump of {tuple(t)} gives {c2}")
        return MarkovTriple(a, b, c2)
    raise ValueError(f"coordinate must be one of {COORDS}, got {coord!r}")


def neighbours(eq: MarkovEquation, t):
    """Canonical forms of all defined mutations of t."""
    out = []
    for coord in COORDS:
        try:
            out.append(canonical(eq, mutate(eq, t, coord)))
        except MutationUndefined:
            pass
    return out


def _solve_c(eq: MarkovEquation, a: int, b: int):
    """Positive integer roots c of k c^2 - m a b c + a^2 + b^2 = 0."""
    p = eq.m * a * b
    disc = p * p - 4 * eq.k * (a * a + b * b)
    if disc < 0:
        return []
    s = isqrt(disc)
    if s * s != disc:
        return []
    roots = set()
    for num in (p - s, p + s):
        if num > 0 and num % (2 * eq.k) == 0:
            roots.add(num // (2 * eq.k))
    return sorted(roots)


def scan_solutions(eq: MarkovEquation, bound: int) -> list[MarkovTriple]:
    """Every canonical solution with all coordinates <= bound, by direct search."""
    found = set()
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            for c in _solve_c(eq, a, b):
                if c <= bound:
                    found.add(canonical(eq, (a, b, c)))
    return sorted(found)


def fundamental_solutions(eq: MarkovEquation, search_bound: int) -> list[MarkovTriple]:
    """Solutions within the bound that no mutation makes smaller.

    Size is the coordinate sum: a jump can lower one coordinate while the
    maximum stays put, e.g. (1, 3, 2) -> (1, 3, 1).
    """
    roots = []
    for t in scan_solutions(eq, search_bound):
        if all(sum(u) >= sum(t) for u in neighbours(eq, t)):
            roots.append(t)
    return roots


ROOT_SCAN = 100


def enumerate_solutions(eq: MarkovEquation, bound: int, roots=None) -> list[MarkovTriple]:
    """Breadth-first walk of the mutation graph, pruned at max coordinate > bound.

    Roots default to the fundamental solutions found below ``ROOT_SCAN``.
    Output is sorted lexicographically.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if roots is None:
        roots = fundamental_solutions(eq, min(bound, ROOT_SCAN))
    seen = set()
    queue = deque()
    for t in roots:
        t = canonical(eq, t)
        if max(t) <= bound and t not in seen:
            seen.add(t)
            queue.append(t)
    while queue:
        t = queue.popleft()
        for u in neighbours(eq, t):
            if max(u) <= bound and u not in seen:
                seen.add(u)
                queue.append(u)
    return sorted(seen)


def triple_to_weights(eq: MarkovEquation, t) -> tuple[int, int, int]:
    """Weights (a^2, b^2, k c^2) of the associated weighted projective plane."""
    a, b, c = t
    w = (a * a, b * b, eq.k * c * c)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        g = gcd(w[i], w[j])
        if g != 1:
            raise NotWellFormed(f"weights {w} from {tuple(t)}: gcd(w{i}, w{j}) = {g}")
    return w
