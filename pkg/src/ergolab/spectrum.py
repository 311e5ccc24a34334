"""Discrete spectra and the Kronecker-disjointness predicate.

Spectra of the implemented system families are known symbolically; the
disjointness verdict is decided by exact rational/integer arithmetic over
the symbolic frequency basis.  Numeric point-mass estimates (Wiener-style
extraction from orbit correlations) corroborate but never decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import UndecidableSpectrum
from .frequency import ONE, Frequency
from .intlinalg import integer_kernel
from . import systems

# ---------------------------------------------------------------------------
# spectrum descriptions


@dataclass(frozen=True)
class FiniteCyclic:
    """Eigenvalue group {e(k/L)} with L = lcm of the orders."""

    orders: tuple[int, ...]

    @property
    def lcm(self) -> int:
        return math.lcm(*self.orders)

    def generators(self) -> list[Frequency]:
        return [Frequency.rational(Fraction(1, self.lcm))]


@dataclass(frozen=True)
class TorusGenerated:
    """Eigenvalue group generated by {e(f) : f in freqs}."""

    freqs: tuple[Frequency, ...]

    def generators(self) -> list[Frequency]:
        return list(self.freqs)


@dataclass(frozen=True)
class QDyadic:
    """Containment bound: eigenvalues inside {e(a/q^n)}.

    Only an upper bound, so it can certify disjointness but never its
    failure (queries that would need the exact spectrum raise
    UndecidableSpectrum).
    """

    q: int


@dataclass(frozen=True)
class TrivialOnly:
    def generators(self) -> list[Frequency]:
        return []


def spectra_equal(a, b) -> bool:
    """Symbolic equality after normalization (rational groups become cyclic)."""
    return _normalize(a) == _normalize(b)


def _normalize(s):
    if isinstance(s, FiniteCyclic):
        return ("cyclic", s.lcm)
    if isinstance(s, TrivialOnly):
        return ("cyclic", 1)
    if isinstance(s, QDyadic):
        return ("qdyadic", s.q)
    if isinstance(s, TorusGenerated):
        if all(f.is_rational for f in s.freqs):
            d = math.lcm(*(f.rational_part.denominator for f in s.freqs)) if s.freqs else 1
            return ("cyclic", d)
        key = tuple(sorted(tuple(f.coeffs.items()) for f in s.freqs if not f.is_zero))
        return ("torus", key)
    raise TypeError(f"unknown spectrum {s!r}")


# ---------------------------------------------------------------------------
# known spectra of the implemented families


def known_spectrum(sys):
    if isinstance(sys, systems.FiniteRotation):
        # order of the step element = size of the orbit closure
        order = math.lcm(*(o // math.gcd(s, o) for s, o in zip(sys.step, sys.orders)))
        return FiniteCyclic((order,)) if order > 1 else TrivialOnly()
    if isinstance(sys, systems.TorusRotation):
        if all(a.is_rational for a in sys.alphas):
            d = math.lcm(*(a.rational_part.denominator for a in sys.alphas))
            return FiniteCyclic((d,)) if d > 1 else TrivialOnly()
        return TorusGenerated(tuple(sys.alphas))
    if isinstance(sys, systems.SkewProduct):
        # the Kronecker factor of the skew product is its base rotation
        return known_spectrum(systems.TorusRotation((sys.alpha,)))
    if isinstance(sys, systems.Heisenberg):
        return known_spectrum(systems.TorusRotation((sys.a, sys.b)))
    if isinstance(sys, systems.QMultShift):
        return QDyadic(sys.q)
    if isinstance(sys, systems.Product):
        return _combine(known_spectrum(sys.left), known_spectrum(sys.right))
    raise TypeError(f"no known spectrum for {sys!r}")


def _combine(a, b):
    # Eig(X x Y) = Eig(X) . Eig(Y)
    if isinstance(a, TrivialOnly):
        return b
    if isinstance(b, TrivialOnly):
        return a
    if isinstance(a, QDyadic) or isinstance(b, QDyadic):
        raise UndecidableSpectrum(
            "products with symbolic-shift factors have no exact spectrum description"
        )
    if isinstance(a, FiniteCyclic) and isinstance(b, FiniteCyclic):
        return FiniteCyclic((math.lcm(a.lcm, b.lcm),))
    return TorusGenerated(tuple(a.generators()) + tuple(b.generators()))


# ---------------------------------------------------------------------------
# exact intersection machinery

_TAGS = None  # irrational tags are collected per query


def _irrational_tags(gens: list[Frequency]) -> list[str]:
    tags = set()
    for g in gens:
        tags.update(t for t, _ in g.irrational_items())
    return sorted(tags)


def _int_matrix(gens: list[Frequency], tags: list[str]) -> list[list[int]]:
    """Irrational-part coefficients scaled to integers (rows = tags)."""
    denom = 1
    for g in gens:
        for _, c in g.irrational_items():
            denom = math.lcm(denom, c.denominator)
    rows = []
    for t in tags:
        rows.append([int(g.coeffs.get(t, Fraction(0)) * denom) for g in gens])
    return rows


def _torsion_order(gens: list[Frequency]) -> int:
    """Order of the root-of-unity subgroup of the generated eigenvalue group."""
    tags = _irrational_tags(gens)
    if tags:
        kernel = integer_kernel(_int_matrix(gens, tags))
    else:
        kernel = [[1 if i == j else 0 for j in range(len(gens))] for i in range(len(gens))]
    vals = []
    for c in kernel:
        v = sum((Fraction(ci) * g.rational_part for ci, g in zip(c, gens)), Fraction(0))
        vals.append(v % 1)
    if not vals:
        return 1
    e = math.lcm(*(v.denominator for v in vals))
    g = math.gcd(e, *(int(v * e) for v in vals))
    return e // g


def _has_common_irrational(gens_a: list[Frequency], gens_b: list[Frequency]) -> bool:
    """Is there an integer combination with equal nonzero irrational parts and
    rational parts congruent mod 1 (a shared non-torsion eigenvalue)?"""
    if not gens_a or not gens_b:
        return False
    tags = sorted(set(_irrational_tags(gens_a)) | set(_irrational_tags(gens_b)))
    if not tags:
        return False
    combined = [g for g in gens_a] + [-g for g in gens_b]
    kernel = integer_kernel(_int_matrix(combined, tags))
    if not kernel:
        return False
    # for each kernel generator: rational mismatch w and A-side irrational part
    ws = []
    irrs = []
    for c in kernel:
        w = sum((Fraction(ci) * g.rational_part for ci, g in zip(c, combined)), Fraction(0))
        ws.append(w % 1)
        irr = {}
        for ci, g in zip(c[: len(gens_a)], gens_a):
            for t, cf in g.irrational_items():
                irr[t] = irr.get(t, Fraction(0)) + ci * cf
        irrs.append(any(v != 0 for v in irr.values()))
    # sublattice of kernel combos whose rational mismatch is an integer
    e = math.lcm(*(w.denominator for w in ws))
    if e == 1:
        lattice = [[1 if i == j else 0 for j in range(len(kernel))] for i in range(len(kernel))]
    else:
        row = [int(w * e) for w in ws] + [e]
        lattice = [v[:-1] for v in integer_kernel([row])]
    for combo in lattice:
        if any(ci != 0 and has_irr for ci, has_irr in zip(combo, irrs)):
            # a combo of kernel generators can still cancel the irrational
            # part; recompute it exactly
            total = {}
            for ci, c in zip(combo, kernel):
                for cj, g in zip(c[: len(gens_a)], gens_a):
                    if ci * cj == 0:
                        continue
                    for t, cf in g.irrational_items():
                        total[t] = total.get(t, Fraction(0)) + ci * cj * cf
            if any(v != 0 for v in total.values()):
                return True
    return False


def kronecker_disjoint(spec_a, spec_b) -> bool:
    """Exact triviality of the intersection of two eigenvalue groups.

    QDyadic descriptions are containments: a verdict of True is sound, but
    a potential intersection raises UndecidableSpectrum instead of returning
    False.
    """
    if isinstance(spec_a, TrivialOnly) or isinstance(spec_b, TrivialOnly):
        return True
    if isinstance(spec_a, QDyadic) and isinstance(spec_b, QDyadic):
        if math.gcd(spec_a.q, spec_b.q) > 1:
            raise UndecidableSpectrum(
                "containment-only spectra with shared prime support"
            )
        return True
    if isinstance(spec_a, QDyadic) or isinstance(spec_b, QDyadic):
        qd, other = (spec_a, spec_b) if isinstance(spec_a, QDyadic) else (spec_b, spec_a)
        d = _torsion_order(other.generators())
        if math.gcd(d, qd.q) > 1:
            raise UndecidableSpectrum(
                "torsion eigenvalues overlap the q-power containment set; "
                "the exact symbolic spectrum is not pinned down"
            )
        return True
    gens_a, gens_b = spec_a.generators(), spec_b.generators()
    if math.gcd(_torsion_order(gens_a), _torsion_order(gens_b)) > 1:
        return False
    return not _has_common_irrational(gens_a, gens_b)


# ---------------------------------------------------------------------------
# membership (used by the spectrum scan to label candidates)


def spectrum_contains(spec, beta: Frequency) -> bool:
    """Exact membership of e(beta) in the described eigenvalue group."""
    if beta.is_rational and beta.rational_part % 1 == 0:
        return True
    if isinstance(spec, TrivialOnly):
        return False
    if isinstance(spec, QDyadic):
        if not beta.is_rational:
            return False
        den = (beta.rational_part % 1).denominator
        rest = den
        while True:
            g = math.gcd(rest, spec.q)
            if g == 1:
                break
            while rest % g == 0:
                rest //= g
        if rest == 1:
            raise UndecidableSpectrum("containment-only spectrum cannot certify membership")
        return False
    gens = spec.generators()
    from .intlinalg import integer_solve

    tags = sorted(set(_irrational_tags(gens)) | {t for t, _ in beta.irrational_items()})
    denom = 1
    all_fracs = [c for g in gens + [beta] for _, c in g.coeffs.items()]
    for c in all_fracs:
        denom = math.lcm(denom, c.denominator)
    rows = []
    for t in tags + [ONE]:
        row = [int(g.coeffs.get(t, Fraction(0)) * denom) for g in gens]
        row.append(denom if t == ONE else 0)  # the mod-1 degree of freedom
        rows.append(row)
    b = [int(beta.coeffs.get(t, Fraction(0)) * denom) for t in tags + [ONE]]
    return integer_solve(rows, b) is not None


# ---------------------------------------------------------------------------
# numeric corroboration: correlations and point masses


def correlation_sequence(sys, f, start, n: int) -> np.ndarray:
    """Orbit-based estimate c_k = (1/N) sum_{m=1}^N f(T^{m+k}x) conj(f(T^m x)),
    for k = 0..N-1, computed by FFT cross-correlation."""
    if n < 1:
        raise ValueError("need N >= 1")
    ns = np.arange(1, 2 * n + 1, dtype=np.int64)
    vals = systems.orbit_values(sys, f, start, ns)
    size = 1 << (2 * n).bit_length()
    fa = np.fft.fft(vals, size)
    fb = np.fft.fft(vals[:n], size)
    corr = np.fft.ifft(fa * np.conj(fb))[:n] / n
    return corr


@dataclass(frozen=True)
class PointMassEstimate:
    freq: Frequency
    mass: complex
    n: int


def spectral_point_mass(corr: np.ndarray, beta: Frequency, n: int) -> PointMassEstimate:
    """mass = (1/N) sum_{k<N} corr[k] e(-k beta)."""
    if n > len(corr):
        raise ValueError("N exceeds the correlation length")
    ks = np.arange(n, dtype=np.int64)
    twist = np.exp(-2j * np.pi * beta.frac_times_array(ks))
    mass = complex(np.sum(corr[:n] * twist)) / n
    return PointMassEstimate(beta, mass, n)


# ---------------------------------------------------------------------------
# diagonal orbit closures (1-step case)


def diag_orbit_spectrum(alpha: Frequency, k: int):
    """Spectrum of the translation on the closure of {(n a, 2n a, ..., kn a)}.

    For rational a = p/q the closure is the q-point orbit, an exact cyclic
    rotation; for irrational a it is the line subtorus {(t, 2t, ..., kt)},
    on which the translation is conjugate to rotation by a.  Either way the
    induced spectrum equals that of the base rotation.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if alpha.is_rational:
        r = alpha.rational_part % 1
        # enumerate the finite orbit to confirm its size
        orbit = set()
        pt = tuple(Fraction(0) for _ in range(k))
        while pt not in orbit:
            orbit.add(pt)
            pt = tuple((c + (i + 1) * r) % 1 for i, c in enumerate(pt))
        q = r.denominator
        assert len(orbit) == q
        return FiniteCyclic((q,)) if q > 1 else TrivialOnly()
    return TorusGenerated((alpha,))
