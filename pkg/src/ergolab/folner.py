"""Folner windows in Z and Z^d with exact temperedness certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Intervals:
    """Phi_N = {1, ..., N} in Z."""

    def window(self, n: int) -> list[int]:
        if n < 1:
            raise ValueError("window index must be >= 1")
        return list(range(1, n + 1))


@dataclass(frozen=True)
class Boxes:
    """Phi_N = {1, ..., N}^d in Z^d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")

    def window(self, n: int) -> list[tuple[int, ...]]:
        import itertools

        if n < 1:
            raise ValueError("window index must be >= 1")
        # row-major order fixes the summation order downstream
        return list(itertools.product(range(1, n + 1), repeat=self.d))


@dataclass(frozen=True)
class Custom:
    """Explicit finite subsets of Z."""

    sets: tuple[frozenset, ...]

    def __post_init__(self):
        if not self.sets or any(not s for s in self.sets):
            raise ValueError("each window must be finite and non-empty")

    def window(self, n: int) -> list[int]:
        return sorted(self.sets[n - 1])


def folner_ratio(f, g, n: int) -> Fraction:
    """Exact |Phi_N ∩ g^{-1} Phi_N| / |Phi_N| (g^{-1}Phi = Phi - g additively)."""
    if isinstance(f, Intervals):
        g = int(g)
        overlap = max(0, n - abs(g))
        return Fraction(overlap, n)
    if isinstance(f, Boxes):
        g = tuple(int(c) for c in g)
        if len(g) != f.d:
            raise ValueError("shift dimension mismatch")
        num, den = 1, 1
        for c in g:
            num *= max(0, n - abs(c))
            den *= n
        return Fraction(num, den)
    if isinstance(f, Custom):
        w = set(f.window(n))
        shifted = {x - int(g) for x in w}
        return Fraction(len(w & shifted), len(w))
    raise TypeError(f"unknown Folner sequence {f!r}")


def tempered_bound(f, max_n: int) -> Fraction:
    """max over 2 <= N <= maxN of |union_{K<N} Phi_K^{-1} Phi_N| / |Phi_N|.

    For intervals, Phi_K^{-1} Phi_N = {1-K, ..., N-1}, so the union over
    K < N is {2-N, ..., N-1} with 2N-2 elements; boxes are the coordinatewise
    product of the 1-d case.  Custom sequences are enumerated.
    """
    if max_n < 2:
        raise ValueError("need maxN >= 2")
    if isinstance(f, Intervals):
        return max(Fraction(2 * n - 2, n) for n in range(2, max_n + 1))
    if isinstance(f, Boxes):
        return max(Fraction(2 * n - 2, n) ** f.d for n in range(2, max_n + 1))
    if isinstance(f, Custom):
        best = Fraction(0)
        for n in range(2, min(max_n, len(f.sets)) + 1):
            phi_n = f.window(n)
            union = set()
            for k in range(1, n):
                for a in f.sets[k - 1]:
                    union.update(x - a for x in phi_n)
            best = max(best, Fraction(len(union), len(phi_n)))
        return best
    raise TypeError(f"unknown Folner sequence {f!r}")
