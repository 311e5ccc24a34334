"""Concrete measure-preserving systems: state spaces, maps and observables.

All operations are pure; points and descriptors are immutable.  Iteration
uses closed forms (never n-fold application), so the numeric error of T^n is
O(1) in n.  Finite rotations are exact integer arithmetic throughout; torus
coordinates may be Fractions (kept exact when the rotation is rational) or
floats.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import InvalidObservable, InvalidPoint
from .frequency import Frequency, frac, frac_array
from .qmult import QMultFunction

# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class FiniteElem:
    residues: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.orders):
            raise InvalidPoint("residue/order length mismatch")
        object.__setattr__(
            self, "residues", tuple(r % o for r, o in zip(self.residues, self.orders))
        )


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple  # floats in [0,1), or Fractions for exact rational orbits

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_reduce_coord(c) for c in self.coords))


@dataclass(frozen=True)
class SkewPoint:
    base: object
    fiber: object

    def __post_init__(self):
        object.__setattr__(self, "base", _reduce_coord(self.base))
        object.__setattr__(self, "fiber", _reduce_coord(self.fiber))


@dataclass(frozen=True)
class HeisenbergPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", _reduce_coord(self.x))
        object.__setattr__(self, "y", _reduce_coord(self.y))
        object.__setattr__(self, "z", _reduce_coord(self.z))


@dataclass(frozen=True)
class SymbolicWindow:
    func: QMultFunction
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise InvalidPoint("window index must be non-negative")


@dataclass(frozen=True)
class ProductPoint:
    left: object
    right: object


def _reduce_coord(c):
    if isinstance(c, Fraction):
        return c % 1
    return frac(float(c))


# ---------------------------------------------------------------------------
# system descriptors


@dataclass(frozen=True)
class FiniteRotation:
    orders: tuple[int, ...]
    step: tuple[int, ...]

    def __post_init__(self):
        if any(o <= 0 for o in self.orders):
            raise ValueError("orders must be positive")
        if len(self.step) != len(self.orders):
            raise ValueError("step/order length mismatch")
        object.__setattr__(
            self, "step", tuple(s % o for s, o in zip(self.step, self.orders))
        )

    @property
    def group_order(self) -> int:
        return math.prod(self.orders)

    def identity(self) -> FiniteElem:
        return FiniteElem(tuple(0 for _ in self.orders), self.orders)


@dataclass(frozen=True)
class TorusRotation:
    alphas: tuple[Frequency, ...]

    @property
    def dim(self) -> int:
        return len(self.alphas)

    def origin(self) -> TorusPoint:
        return TorusPoint(tuple(0.0 for _ in self.alphas))


@dataclass(frozen=True)
class SkewProduct:
    """(x, y) -> (x + alpha, y + x); a group extension of the base rotation."""

    alpha: Frequency

    def origin(self) -> SkewPoint:
        return SkewPoint(0.0, 0.0)


@dataclass(frozen=True)
class Heisenberg:
    """Translation by (a, b, 0) on the 3-dim Heisenberg nilmanifold.

    Group law (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+x*y'), fundamental
    domain [0,1)^3 with the integer lattice.
    """

    a: Frequency
    b: Frequency

    def origin(self) -> HeisenbergPoint:
        return HeisenbergPoint(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class QMultShift:
    """Orbit of a strongly q-multiplicative sequence under the shift.

    The point is an index n; the shift is n -> n+1 and the canonical
    observable reads w(n).
    """

    func: QMultFunction

    @property
    def q(self) -> int:
        return self.func.q

    def origin(self) -> SymbolicWindow:
        return SymbolicWindow(self.func, 0)


@dataclass(frozen=True)
class Product:
    left: object
    right: object


SystemDescriptor = (FiniteRotation, TorusRotation, SkewProduct, Heisenberg, QMultShift, Product)


# ---------------------------------------------------------------------------
# observables


@dataclass(frozen=True)
class Character:
    """x -> e(sum_i m_i x_i); on finite groups exponents act mod orders."""

    exponents: tuple[int, ...]


@dataclass(frozen=True)
class ArcIndicator:
    """Indicator of the arc [start, start+length) on the circle."""

    start: Fraction
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start) % 1)
        object.__setattr__(self, "length", Fraction(self.length))
        if not (0 < self.length <= 1):
            raise InvalidObservable("arc length must be in (0, 1]")


@dataclass(frozen=True)
class SymbolValue:
    """Reads w(index) at a symbolic window."""


@dataclass(frozen=True)
class TensorProduct:
    left: object
    right: object


def e(t: float) -> complex:
    return cmath.exp(2j * cmath.pi * t)


# ---------------------------------------------------------------------------
# dynamics


def iterate(sys, p, n: int):
    """T^n p by closed form; exact on finite rotations."""
    if isinstance(sys, FiniteRotation):
        if not isinstance(p, FiniteElem) or p.orders != sys.orders:
            raise InvalidPoint(f"expected element of {sys}")
        return FiniteElem(
            tuple((r + n * s) % o for r, s, o in zip(p.residues, sys.step, sys.orders)),
            sys.orders,
        )
    if isinstance(sys, TorusRotation):
        if not isinstance(p, TorusPoint) or len(p.coords) != sys.dim:
            raise InvalidPoint(f"expected {sys.dim}-dim torus point")
        return TorusPoint(
            tuple(_shift_coord(c, a, n) for c, a in zip(p.coords, sys.alphas))
        )
    if isinstance(sys, SkewProduct):
        if not isinstance(p, SkewPoint):
            raise InvalidPoint("expected skew-product point")
        # T^n(x, y) = (x + n a, y + n x + C(n,2) a)
        base = _shift_coord(p.base, sys.alpha, n)
        half = n * (n - 1) // 2
        if isinstance(p.base, Fraction) and isinstance(p.fiber, Fraction) and sys.alpha.is_rational:
            fiber = (p.fiber + n * p.base + half * sys.alpha.rational_part) % 1
        else:
            fiber = frac(
                frac(n * float(p.base)) + float(p.fiber) + sys.alpha.frac_times(half)
            )
        return SkewPoint(base, fiber)
    if isinstance(sys, Heisenberg):
        if not isinstance(p, HeisenbergPoint):
            raise InvalidPoint("expected Heisenberg point")
        return _heisenberg_iterate(sys, p, n)
    if isinstance(sys, QMultShift):
        if not isinstance(p, SymbolicWindow) or p.func != sys.func:
            raise InvalidPoint("expected a window into the same sequence")
        return SymbolicWindow(p.func, p.index + n)
    if isinstance(sys, Product):
        if not isinstance(p, ProductPoint):
            raise InvalidPoint("expected product point")
        return ProductPoint(iterate(sys.left, p.left, n), iterate(sys.right, p.right, n))
    raise InvalidPoint(f"unknown system {sys!r}")


def apply(sys, p):
    """One application of the generator."""
    return iterate(sys, p, 1)


def _shift_coord(c, alpha: Frequency, n: int):
    if isinstance(c, Fraction) and alpha.is_rational:
        return (c + n * alpha.rational_part) % 1
    return frac(float(c) + alpha.frac_times(n))


def _mp_coord(c) -> mpmath.mpf:
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


def _heisenberg_iterate(sys, p, n: int):
    """g^n * p reduced into the fundamental domain of the integer lattice.

    The unreduced result is (x + na, y + nb, z + C(n,2)ab + na*y).  Reducing
    the second coordinate by an integer m shifts the third by (x + na)*m, so
    the quotient representative is not a coordinatewise fractional part; the
    cross term is computed at working precision scaled to n to keep the
    final coordinates accurate to double precision.
    """
    if n == 0:
        return p
    bits = max(n.bit_length(), 1)
    with mpmath.workprec(2 * bits + 120):
        a = sys.a.mp_value()
        b = sys.b.mp_value()
        x0, y0, z0 = _mp_coord(p.x), _mp_coord(p.y), _mp_coord(p.z)
        big_x = x0 + n * a
        big_y = y0 + n * b
        big_z = z0 + (n * (n - 1) // 2) * a * b + n * a * y0
        fy = mpmath.floor(big_y)
        big_z -= big_x * fy
        x = float(big_x - mpmath.floor(big_x))
        y = float(big_y - fy)
        z = float(big_z - mpmath.floor(big_z))
    return HeisenbergPoint(frac(x), frac(y), frac(z))


def product_system(left, right) -> Product:
    """Diagonal action on the product of two systems."""
    return Product(left, right)


def product_point(left, right) -> ProductPoint:
    return ProductPoint(left, right)


# ---------------------------------------------------------------------------
# observables


def evaluate(obs, p) -> complex:
    if isinstance(obs, Character):
        return _eval_character(obs, p)
    if isinstance(obs, ArcIndicator):
        coord = _circle_coord(p)
        if isinstance(coord, Fraction):
            inside = (coord - obs.start) % 1 < obs.length
        else:
            inside = frac(coord - float(obs.start)) < float(obs.length)
        return 1 + 0j if inside else 0j
    if isinstance(obs, SymbolValue):
        if not isinstance(p, SymbolicWindow):
            raise InvalidObservable("SymbolValue needs a symbolic window")
        return p.func.value(p.index)
    if isinstance(obs, TensorProduct):
        if not isinstance(p, ProductPoint):
            raise InvalidObservable("TensorProduct needs a product point")
        return evaluate(obs.left, p.left) * evaluate(obs.right, p.right)
    raise InvalidObservable(f"unknown observable {obs!r}")


def _point_reals(p) -> tuple:
    if isinstance(p, TorusPoint):
        return p.coords
    if isinstance(p, SkewPoint):
        return (p.base, p.fiber)
    if isinstance(p, HeisenbergPoint):
        return (p.x, p.y, p.z)
    raise InvalidObservable(f"no real coordinates on {p!r}")


def _eval_character(obs: Character, p) -> complex:
    if isinstance(p, FiniteElem):
        if len(obs.exponents) != len(p.orders):
            raise InvalidObservable("character rank mismatch")
        t = Fraction(0)
        for m, r, o in zip(obs.exponents, p.residues, p.orders):
            t += Fraction(m * r, o)
        t %= 1
        return e(float(t))
    coords = _point_reals(p)
    if len(obs.exponents) != len(coords):
        raise InvalidObservable("character rank mismatch")
    t = 0.0
    for m, c in zip(obs.exponents, coords):
        t += m * float(c)
    return e(frac(t))


def _circle_coord(p):
    if isinstance(p, TorusPoint) and len(p.coords) == 1:
        return p.coords[0]
    raise InvalidObservable("arc indicators live on the 1-dim torus")


def integral(sys, obs) -> complex:
    """Exact integral of the observable against the invariant measure.

    Characters integrate to 0 unless trivial (1 if all exponents vanish, and
    on finite groups if each exponent is divisible by its order); arcs
    integrate to their length.
    """
    if isinstance(obs, Character):
        if isinstance(sys, FiniteRotation):
            trivial = all(m % o == 0 for m, o in zip(obs.exponents, sys.orders))
        else:
            trivial = all(m == 0 for m in obs.exponents)
        return 1 + 0j if trivial else 0j
    if isinstance(obs, ArcIndicator):
        return complex(float(obs.length))
    if isinstance(obs, TensorProduct) and isinstance(sys, Product):
        return integral(sys.left, obs.left) * integral(sys.right, obs.right)
    raise InvalidObservable(f"no closed-form integral for {obs!r}")


# ---------------------------------------------------------------------------
# uniform sampling of starting points


def random_point(sys, rng):
    """Uniform draw from the invariant measure (exact on finite groups)."""
    if isinstance(sys, FiniteRotation):
        return FiniteElem(tuple(rng.randrange(o) for o in sys.orders), sys.orders)
    if isinstance(sys, TorusRotation):
        return TorusPoint(tuple(rng.random() for _ in sys.alphas))
    if isinstance(sys, SkewProduct):
        return SkewPoint(rng.random(), rng.random())
    if isinstance(sys, Heisenberg):
        return HeisenbergPoint(rng.random(), rng.random(), rng.random())
    if isinstance(sys, Product):
        left = random_point(sys.left, rng)
        return ProductPoint(left, random_point(sys.right, rng))
    raise InvalidPoint(f"no uniform sampler for {sys!r}")


# ---------------------------------------------------------------------------
# vectorized orbit evaluation (the averaging kernels' hot path)


def orbit_values(sys, obs, start, ns: np.ndarray) -> np.ndarray:
    """obs(T^n start) for every n in ns, as a complex array.

    Mirrors iterate+evaluate with vectorized closed forms for the hot
    system/observable combinations; anything else falls back to the scalar
    path.  Quadratic multipliers (skew fiber, Heisenberg center) are reduced
    in float64, good to ~1e-6 absolute at n = 2^17.
    """
    ns = np.asarray(ns, dtype=np.int64)
    if isinstance(obs, TensorProduct) and isinstance(sys, Product):
        return orbit_values(sys.left, obs.left, start.left, ns) * orbit_values(
            sys.right, obs.right, start.right, ns
        )
    if isinstance(obs, Character):
        if isinstance(sys, FiniteRotation) and isinstance(start, FiniteElem):
            t = np.zeros(len(ns), dtype=np.float64)
            for m, r, s, o in zip(obs.exponents, start.residues, sys.step, sys.orders):
                t += (m % o) * ((r + ns * s) % o) / o
            return np.exp(2j * np.pi * np.mod(t, 1.0))
        if isinstance(sys, TorusRotation) and isinstance(start, TorusPoint):
            t = np.zeros(len(ns), dtype=np.float64)
            for m, c, a in zip(obs.exponents, start.coords, sys.alphas):
                if m:
                    t += m * frac_array(float(c) + a.frac_times_array(ns))
            return np.exp(2j * np.pi * np.mod(t, 1.0))
        if isinstance(sys, SkewProduct) and isinstance(start, SkewPoint):
            m1, m2 = obs.exponents
            x0, y0 = float(start.base), float(start.fiber)
            t = np.zeros(len(ns), dtype=np.float64)
            if m1:
                t += m1 * frac_array(x0 + sys.alpha.frac_times_array(ns))
            if m2:
                half = ns * (ns - 1) // 2
                fib = frac_array(
                    y0 + np.mod(ns * x0, 1.0) + sys.alpha.frac_times_array(half)
                )
                t += m2 * fib
            return np.exp(2j * np.pi * np.mod(t, 1.0))
    if isinstance(obs, ArcIndicator) and isinstance(sys, TorusRotation) and sys.dim == 1:
        c = frac_array(float(start.coords[0]) + sys.alphas[0].frac_times_array(ns))
        inside = np.mod(c - float(obs.start), 1.0) < float(obs.length)
        return inside.astype(np.complex128)
    if isinstance(obs, SymbolValue) and isinstance(sys, QMultShift):
        base = start.index
        return np.array([sys.func.value(base + int(n)) for n in ns], dtype=np.complex128)
    # generic scalar fallback
    return np.array(
        [evaluate(obs, iterate(sys, start, int(n))) for n in ns], dtype=np.complex128
    )
