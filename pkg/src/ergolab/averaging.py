"""Ergodic average kernels: plain, weighted, multiple, and product-sampled.

Sums are accumulated with math.fsum on the real and imaginary parts in a
fixed order (increasing n; row-major for boxes), so every average is
deterministic and exactly rounded regardless of term count.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .frequency import Frequency
from .qmult import QMultFunction
from . import systems
from .folner import Boxes, Custom, Intervals


def csum(values: np.ndarray) -> complex:
    """Compensated (exactly rounded) complex sum in array order."""
    values = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(values.real), math.fsum(values.imag))


# ---------------------------------------------------------------------------
# weight sequences


@dataclass(frozen=True)
class Constant:
    c: complex = 1.0

    def value(self, n: int) -> complex:
        return complex(self.c)

    def values(self, ns: np.ndarray) -> np.ndarray:
        return np.full(len(ns), complex(self.c))

    def bound(self) -> float:
        return abs(self.c)


@dataclass(frozen=True)
class CharacterWeight:
    """n -> e(n * freq); the classical Wiener-Wintner twist."""

    freq: Frequency

    def value(self, n: int) -> complex:
        return systems.e(self.freq.frac_times(n))

    def values(self, ns: np.ndarray) -> np.ndarray:
        return np.exp(2j * np.pi * self.freq.frac_times_array(ns))

    def bound(self) -> float:
        return 1.0


@dataclass(frozen=True)
class QMultWeight:
    func: QMultFunction

    def value(self, n: int) -> complex:
        return self.func.value(n)

    def values(self, ns: np.ndarray) -> np.ndarray:
        return np.array([self.func.value(int(n)) for n in ns], dtype=np.complex128)

    def bound(self) -> float:
        return 1.0


@dataclass(frozen=True)
class LevelSetIndicator:
    """n -> 1 if w(n) equals the target root of unity, else 0."""

    func: QMultFunction
    target_index: int

    def value(self, n: int) -> complex:
        return 1 + 0j if self.func.value_index(n) == self.target_index % self.func.modulus else 0j

    def values(self, ns: np.ndarray) -> np.ndarray:
        t = self.target_index % self.func.modulus
        return np.array(
            [1.0 if self.func.value_index(int(n)) == t else 0.0 for n in ns],
            dtype=np.complex128,
        )

    def bound(self) -> float:
        return 1.0


@dataclass(frozen=True)
class PointwiseProduct:
    factors: tuple

    def value(self, n: int) -> complex:
        out = 1 + 0j
        for f in self.factors:
            out *= f.value(n)
        return out

    def values(self, ns: np.ndarray) -> np.ndarray:
        out = np.ones(len(ns), dtype=np.complex128)
        for f in self.factors:
            out = out * f.values(ns)
        return out

    def bound(self) -> float:
        return math.prod(f.bound() for f in self.factors)


# ---------------------------------------------------------------------------
# averages


def ergodic_average(sys, obs, start, weight, folner, n: int) -> complex:
    """(1/|Phi_N|) sum_{g in Phi_N} w(g) obs(T^g start)."""
    if isinstance(folner, (Intervals, Custom)):
        ns = np.asarray(folner.window(n), dtype=np.int64)
        terms = systems.orbit_values(sys, obs, start, ns) * weight.values(ns)
        return csum(terms) / len(ns)
    if isinstance(folner, Boxes):
        return _box_average(sys, obs, start, weight, folner, n)
    raise TypeError(f"unknown Folner sequence {folner!r}")


def _box_average(sys, obs, start, weight, folner: Boxes, n: int) -> complex:
    # Z^d actions are supported for torus/finite rotations whose dimension
    # matches: generator i moves coordinate i only.
    if not isinstance(weight, Constant):
        raise TypeError("Z^d averages support constant weights only")
    if isinstance(sys, systems.TorusRotation) and sys.dim == folner.d:
        single = [systems.TorusRotation((a,)) for a in sys.alphas]
        starts = [systems.TorusPoint((c,)) for c in start.coords]
    elif isinstance(sys, systems.FiniteRotation) and len(sys.orders) == folner.d:
        single = [
            systems.FiniteRotation((o,), (s,)) for o, s in zip(sys.orders, sys.step)
        ]
        starts = [
            systems.FiniteElem((r,), (o,)) for r, o in zip(start.residues, sys.orders)
        ]
    else:
        raise TypeError(f"no Z^{folner.d} action on {sys!r}")
    vals = []
    for g in folner.window(n):  # row-major order
        v = weight.value(0)
        for i, gi in enumerate(g):
            p = systems.iterate(single[i], starts[i], gi)
            v *= systems.evaluate(_component_obs(obs, i), p)
        vals.append(v)
    return csum(np.array(vals)) / len(vals)


def _component_obs(obs, i: int):
    if isinstance(obs, systems.Character):
        return systems.Character((obs.exponents[i],))
    raise TypeError("Z^d averages support characters only")


def average_prefix(sys, obs, start, weight, n_max: int) -> np.ndarray:
    """Averages over {1..N} for every N <= n_max in one pass.

    Uses a vectorized cumulative sum; rounding grows like N * eps * |partial|,
    which stays below 1e-9 for the window sizes used here.
    """
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    terms = systems.orbit_values(sys, obs, start, ns) * weight.values(ns)
    return np.cumsum(terms) / ns


def multiple_average(sys, obs_list, start, weight, n: int) -> complex:
    """(1/N) sum_n w(n) prod_i f_i(T^{i n} start), closed-form iteration."""
    if not obs_list:
        raise ValueError("need at least one observable")
    ns = np.arange(1, n + 1, dtype=np.int64)
    terms = weight.values(ns)
    for i, obs in enumerate(obs_list, start=1):
        terms = terms * systems.orbit_values(sys, obs, start, i * ns)
    return csum(terms) / n


def l2_product_average(
    sys_x,
    sys_y,
    f_list,
    g_list,
    sample_count: int,
    n: int,
    rng_seed: int,
) -> tuple[complex, float]:
    """Monte-Carlo estimate of the product-system multiple average.

    Draws sample_count start pairs (uniform on each factor, exact uniform on
    finite groups), computes the pointwise average
    (1/N) sum_n prod_i f_i(T^{in} x) prod_j g_j(S^{jn} y) for each, and
    returns the sample mean with its standard error.  Deterministic given the
    seed.
    """
    if sample_count < 1:
        raise ValueError("need at least one sample")
    vals = sample_product_averages(sys_x, sys_y, f_list, g_list, sample_count, n, rng_seed)
    return mean_and_stderr(vals)


def sample_product_averages(
    sys_x, sys_y, f_list, g_list, sample_count: int, n: int, rng_seed: int
) -> list[complex]:
    rng = random.Random(rng_seed)
    ns = np.arange(1, n + 1, dtype=np.int64)
    out = []
    for _ in range(sample_count):
        x = systems.random_point(sys_x, rng)
        y = systems.random_point(sys_y, rng)
        terms = np.ones(n, dtype=np.complex128)
        for i, f in enumerate(f_list, start=1):
            terms = terms * systems.orbit_values(sys_x, f, x, i * ns)
        for j, g in enumerate(g_list, start=1):
            terms = terms * systems.orbit_values(sys_y, g, y, j * ns)
        out.append(csum(terms) / n)
    return out


def mean_and_stderr(vals: list[complex]) -> tuple[complex, float]:
    s = len(vals)
    mean = complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals)) / s
    if s == 1:
        return mean, 0.0
    var = math.fsum(abs(v - mean) ** 2 for v in vals) / (s - 1)
    return mean, math.sqrt(var / s)


# ---------------------------------------------------------------------------
# finite-N limit surrogate


@dataclass
class ConvergenceReport:
    """Doubling-N trace with a Cauchy-gap stopping rule."""

    values_at: list[tuple[int, complex]]
    extrapolated_limit: complex | None
    cauchy_gap: float

    @property
    def final_value(self) -> complex:
        return self.values_at[-1][1]

    def gaps(self) -> list[float]:
        vs = [v for _, v in self.values_at]
        return [abs(b - a) for a, b in zip(vs, vs[1:])]


def cesaro_limit(report_fn, n0: int, tol: float, max_doublings: int = 12) -> ConvergenceReport:
    """Evaluate at N0, 2*N0, ... and stop when the max gap over the final
    three doublings drops below tol; the limit is the last value, or None if
    the criterion never fires before the cap."""
    if n0 < 1 or tol <= 0:
        raise ValueError("need N0 >= 1 and tol > 0")
    values: list[tuple[int, complex]] = []
    gap = math.inf
    for k in range(max_doublings + 1):
        n = n0 << k
        values.append((n, complex(report_fn(n))))
        if len(values) >= 4:
            vs = [v for _, v in values[-4:]]
            gap = max(abs(b - a) for a, b in zip(vs, vs[1:]))
            if gap < tol:
                return ConvergenceReport(values, values[-1][1], gap)
    if len(values) >= 2:
        vs = [v for _, v in values[-4:]]
        gap = max(abs(b - a) for a, b in zip(vs, vs[1:]))
    else:
        gap = 0.0
    return ConvergenceReport(values, None, gap)
