"""Strongly q-multiplicative sequences with exact root-of-unity arithmetic.

Sequence values live in the group of m-th roots of unity and are represented
by integer indices mod m, so multiplicativity, block sums and level-set
membership are exact.  Complex conversion happens only at the averaging
boundary.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (remainder must vanish)
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divide(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@dataclass(frozen=True)
class CyclotomicElement:
    """Element of Z[x]/(x^m - 1), used for exact block sums."""

    m: int
    coeffs: tuple[int, ...]

    def __mul__(self, other: CyclotomicElement) -> CyclotomicElement:
        assert self.m == other.m
        out = [0] * self.m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[(i + j) % self.m] += a * b
        return CyclotomicElement(self.m, tuple(out))

    def is_zero(self) -> bool:
        """True iff the complex value sum_j c_j e(j/m) is exactly zero."""
        rem = list(self.coeffs)
        phi = cyclotomic_poly(self.m)
        for i in range(len(rem) - len(phi), -1, -1):
            q = rem[i + len(phi) - 1]  # phi is monic
            for j, d in enumerate(phi):
                rem[i + j] -= q * d
        return all(c == 0 for c in rem)

    def complex_value(self) -> complex:
        return sum(
            c * cmath.exp(2j * cmath.pi * j / self.m)
            for j, c in enumerate(self.coeffs)
            if c
        )


@dataclass(frozen=True)
class QMultFunction:
    """w(n) = product of digit values over the base-q digits of n.

    ``digit_indices[a]`` is the index of w(a) in the group of ``modulus``-th
    roots of unity; the empty digit product gives w(0) = 1, so the index of
    digit 0 must be 0.
    """

    q: int
    modulus: int
    digit_indices: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("base must be >= 2")
        if len(self.digit_indices) != self.q:
            raise ValueError("need one digit value per base-q digit")
        if self.digit_indices[0] % self.modulus != 0:
            raise ValueError("digit 0 must map to the value 1")

    def value_index(self, n: int) -> int:
        if n < 0:
            raise ValueError("defined on non-negative integers")
        acc = 0
        while n:
            n, a = divmod(n, self.q)
            acc += self.digit_indices[a]
        return acc % self.modulus

    def value(self, n: int) -> complex:
        return self.root(self.value_index(n))

    def root(self, index: int) -> complex:
        index %= self.modulus
        # keep the +/-1 and +/-i cases exact
        table = {0: 1 + 0j}
        if self.modulus % 2 == 0:
            table[self.modulus // 2] = -1 + 0j
        if self.modulus % 4 == 0:
            table[self.modulus // 4] = 1j
            table[3 * self.modulus // 4] = -1j
        if index in table:
            return table[index]
        return cmath.exp(2j * cmath.pi * index / self.modulus)

    def power(self, j: int) -> QMultFunction:
        """w^j, itself strongly q-multiplicative."""
        return QMultFunction(
            self.q, self.modulus, tuple(j * d % self.modulus for d in self.digit_indices)
        )


THUE_MORSE = QMultFunction(q=2, modulus=2, digit_indices=(0, 1))


def block_sum(w: QMultFunction, k: int) -> CyclotomicElement:
    """Exact sum of w(n) over 0 <= n < q^k in the cyclotomic ring.

    Uses the closed recursion: the block sum is the k-th power of the digit
    value sum, because digit products over k digits factor.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    digit_sum = [0] * w.modulus
    for d in w.digit_indices:
        digit_sum[d % w.modulus] += 1
    acc = CyclotomicElement(w.modulus, tuple([1] + [0] * (w.modulus - 1)))
    step = CyclotomicElement(w.modulus, tuple(digit_sum))
    for _ in range(k):
        acc = acc * step
    return acc


def level_set_density(w: QMultFunction, target_index: int, n_max: int) -> Fraction:
    """Exact density |{n < N : w(n) = e(target/m)}| / N."""
    if n_max < 1:
        raise ValueError("N must be >= 1")
    target_index %= w.modulus
    count = sum(1 for n in range(n_max) if w.value_index(n) == target_index)
    return Fraction(count, n_max)


def level_set_members(w: QMultFunction, target_index: int, n_max: int) -> list[int]:
    target_index %= w.modulus
    return [n for n in range(n_max) if w.value_index(n) == target_index]


def indicator_expansion(w: QMultFunction, target_index: int, n: int) -> complex:
    """Level-set indicator written as (1/m) sum_j conj(z)^j w(n)^j."""
    m = w.modulus
    total = 0j
    for j in range(m):
        total += w.root(-j * target_index) * w.power(j).value(n)
    return total / m
