"""Exact frequencies: rational combinations over a symbolic irrational basis.

A frequency is an element of the rational vector space spanned by 1 (tag
``ONE``) and a fixed set of named irrationals (``SQRT2``, ``SQRT3``,
``GOLDEN``).  The chosen irrationals are linearly independent over the
rationals together with 1, so equality, rationality and integer-linear
dependence are all decidable by exact coefficient arithmetic.  Numeric
evaluation uses stored approximations; high-multiplier fractional parts go
through mpmath so closed-form iteration does not lose precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np

ONE = "ONE"

# float approximations used for plain numeric evaluation
BASIS_APPROX: dict[str, float] = {
    "SQRT2": math.sqrt(2.0),
    "SQRT3": math.sqrt(3.0),
    "GOLDEN": (1.0 + math.sqrt(5.0)) / 2.0,
}

_BASIS_MP = {
    "SQRT2": lambda: mpmath.sqrt(2),
    "SQRT3": lambda: mpmath.sqrt(3),
    "GOLDEN": lambda: (1 + mpmath.sqrt(5)) / 2,
}

# mod-1 results this close to 1.0 snap to 0.0 (boundary flapping guard)
SNAP = 1e-12


def frac(x: float) -> float:
    """x mod 1 in [0,1), snapping values within SNAP of 1.0 down to 0.0."""
    y = x - math.floor(x)
    if y >= 1.0 - SNAP:
        return 0.0
    return y


def frac_array(x: np.ndarray) -> np.ndarray:
    y = np.mod(x, 1.0)
    y[y >= 1.0 - SNAP] = 0.0
    return y


class Frequency:
    """Immutable rational combination of basis tags.

    ``coeffs`` maps tag -> Fraction with no zero entries; two frequencies are
    equal iff their coefficient maps are equal.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[str, Fraction]):
        clean = {}
        for tag, c in coeffs.items():
            if tag != ONE and tag not in BASIS_APPROX:
                raise ValueError(f"unknown basis tag {tag!r}")
            c = Fraction(c)
            if c != 0:
                clean[tag] = c
        self._coeffs = tuple(sorted(clean.items()))

    @classmethod
    def rational(cls, value) -> Frequency:
        return cls({ONE: Fraction(value)})

    @classmethod
    def basis(cls, tag: str, coeff=1) -> Frequency:
        return cls({tag: Fraction(coeff)})

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    @property
    def rational_part(self) -> Fraction:
        return dict(self._coeffs).get(ONE, Fraction(0))

    def irrational_items(self) -> list[tuple[str, Fraction]]:
        return [(t, c) for t, c in self._coeffs if t != ONE]

    @property
    def is_rational(self) -> bool:
        return all(t == ONE for t, _ in self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: Frequency) -> Frequency:
        out = dict(self._coeffs)
        for t, c in other._coeffs:
            out[t] = out.get(t, Fraction(0)) + c
        return Frequency(out)

    def __neg__(self) -> Frequency:
        return Frequency({t: -c for t, c in self._coeffs})

    def __sub__(self, other: Frequency) -> Frequency:
        return self + (-other)

    def __mul__(self, scalar) -> Frequency:
        s = Fraction(scalar)
        return Frequency({t: c * s for t, c in self._coeffs})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Frequency) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return "Frequency(0)"
        parts = []
        for t, c in self._coeffs:
            parts.append(str(c) if t == ONE else f"{c}*{t}")
        return "Frequency(" + " + ".join(parts) + ")"

    def value(self) -> float:
        """Float approximation."""
        total = 0.0
        for t, c in self._coeffs:
            total += float(c) * (1.0 if t == ONE else BASIS_APPROX[t])
        return total

    def mp_value(self) -> mpmath.mpf:
        total = mpmath.mpf(0)
        for t, c in self._coeffs:
            base = mpmath.mpf(1) if t == ONE else _BASIS_MP[t]()
            total += mpmath.mpf(c.numerator) / c.denominator * base
        return total

    def frac_times(self, n: int) -> float:
        """(n * self) mod 1 without O(n) precision loss.

        The rational part reduces exactly; irrational parts use enough
        working precision for the size of the multiplier.
        """
        r = self.rational_part * n
        total = float(r - math.floor(r))
        irr = self.irrational_items()
        if irr:
            bits = max(abs(n), 1).bit_length()
            with mpmath.workprec(bits + 80):
                for t, c in irr:
                    v = n * mpmath.mpf(c.numerator) / c.denominator * _BASIS_MP[t]()
                    total += float(v - mpmath.floor(v))
        return frac(total)

    def frac_times_array(self, ns: np.ndarray) -> np.ndarray:
        """Vectorized (n * self) mod 1 for an int64 array of multipliers.

        Irrational parts are reduced in float64, so the absolute error grows
        like |n * coeff| * 2^-52; callers with tight tolerances keep their
        multipliers below ~1e6 (see frac_times for the scalar path).
        """
        ns = np.asarray(ns, dtype=np.int64)
        total = np.zeros(len(ns), dtype=np.float64)
        r = self.rational_part
        if r != 0:
            p, q = r.numerator, r.denominator
            total += ((ns % q) * (p % q) % q).astype(np.float64) / q
        for t, c in self.irrational_items():
            total += np.mod(ns * (float(c) * BASIS_APPROX[t]), 1.0)
        return frac_array(total)


ZERO = Frequency({})
SQRT2 = Frequency.basis("SQRT2")
SQRT3 = Frequency.basis("SQRT3")
GOLDEN = Frequency.basis("GOLDEN")


def parse_frequency(text: str) -> Frequency:
    """Parse strings like ``"1/3"``, ``"SQRT2"``, ``"2*SQRT2 + 1/3"``."""
    coeffs: dict[str, Fraction] = {}
    cleaned = text.replace("-", "+-").replace(" ", "")
    for term in cleaned.split("+"):
        if not term:
            continue
        sign = Fraction(1)
        if term.startswith("-"):
            sign, term = Fraction(-1), term[1:]
        if "*" in term:
            coef_s, tag = term.split("*", 1)
            coef = sign * Fraction(coef_s)
        elif term in BASIS_APPROX:
            coef, tag = sign, term
        else:
            coef, tag = sign * Fraction(term), ONE
        if tag != ONE and tag not in BASIS_APPROX:
            raise ValueError(f"unknown frequency tag {tag!r} in {text!r}")
        coeffs[tag] = coeffs.get(tag, Fraction(0)) + coef
    return Frequency(coeffs)


def format_frequency(f: Frequency) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for t, c in sorted(f.coeffs.items()):
        parts.append(str(c) if t == ONE else f"{c}*{t}")
    return "+".join(parts).replace("+-", "-")
