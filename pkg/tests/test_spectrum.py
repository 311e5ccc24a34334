"""Discrete spectrum descriptions and the disjointness predicate."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from ergolab.errors import UndecidableSpectrum
from ergolab.frequency import GOLDEN, ONE, SQRT2, SQRT3, Frequency
from ergolab.spectrum import (
    FiniteCyclic,
    PointMassEstimate,
    QDyadic,
    TorusGenerated,
    TrivialOnly,
    correlation_sequence,
    diag_orbit_spectrum,
    known_spectrum,
    kronecker_disjoint,
    spectra_equal,
    spectral_point_mass,
    spectrum_contains,
)
from ergolab.systems import (
    Character,
    FiniteRotation,
    Heisenberg,
    Product,
    QMultShift,
    SkewProduct,
    TorusPoint,
    TorusRotation,
)
from ergolab.qmult import THUE_MORSE

THIRD = Frequency({ONE: Fraction(1, 3)})
TWO_FIFTHS = Frequency({ONE: Fraction(2, 5)})


class TestKnownSpectrum:
    def test_finite_rotation(self):
        s = known_spectrum(FiniteRotation((4,), (1,)))
        assert spectra_equal(s, FiniteCyclic((4,)))

    def test_finite_rotation_non_generator_step(self):
        # step 2 in Z/4 generates the subgroup of order 2
        s = known_spectrum(FiniteRotation((4,), (2,)))
        assert spectra_equal(s, FiniteCyclic((2,)))

    def test_torus_rotation(self):
        s = known_spectrum(TorusRotation((SQRT2,)))
        assert spectra_equal(s, TorusGenerated((SQRT2,)))

    def test_skew_product_is_base_rotation(self):
        s = known_spectrum(SkewProduct(SQRT2))
        assert spectra_equal(s, TorusGenerated((SQRT2,)))

    def test_heisenberg(self):
        s = known_spectrum(Heisenberg(SQRT2, SQRT3))
        assert spectra_equal(s, TorusGenerated((SQRT2, SQRT3)))

    def test_qmult_shift(self):
        s = known_spectrum(QMultShift(THUE_MORSE))
        assert isinstance(s, QDyadic)
        assert s.q == 2

    def test_product_combines_generators(self):
        s = known_spectrum(Product(TorusRotation((SQRT2,)), TorusRotation((SQRT3,))))
        assert spectrum_contains(s, SQRT2)
        assert spectrum_contains(s, SQRT3)
        assert spectrum_contains(s, SQRT2 + SQRT3)


class TestKroneckerDisjoint:
    def test_coprime_finite(self):
        assert kronecker_disjoint(FiniteCyclic((4,)), FiniteCyclic((9,))) is True

    def test_common_subgroup_finite(self):
        assert kronecker_disjoint(FiniteCyclic((4,)), FiniteCyclic((6,))) is False

    def test_sqrt2_vs_dyadic(self):
        assert kronecker_disjoint(TorusGenerated((SQRT2,)), QDyadic(2)) is True

    def test_rational_generator_vs_dyadic_undecidable(self):
        half = Frequency({ONE: Fraction(1, 2)})
        with pytest.raises(UndecidableSpectrum):
            kronecker_disjoint(TorusGenerated((half,)), QDyadic(2))

    def test_dyadic_vs_dyadic_undecidable(self):
        with pytest.raises(UndecidableSpectrum):
            kronecker_disjoint(QDyadic(2), QDyadic(4))

    def test_coprime_dyadics_disjoint(self):
        assert kronecker_disjoint(QDyadic(2), QDyadic(3)) is True

    def test_independent_irrationals(self):
        assert kronecker_disjoint(TorusGenerated((SQRT2,)), TorusGenerated((SQRT3,))) is True

    def test_shared_irrational(self):
        assert kronecker_disjoint(TorusGenerated((SQRT2,)), TorusGenerated((SQRT2,))) is False

    def test_hidden_shared_combination(self):
        # sqrt2 + sqrt3 and sqrt2 - sqrt3 together span sqrt2 in pairs:
        # 1*(a) + 1*(b) = 2*sqrt2 is a common eigenvalue with the right system
        a = SQRT2 + SQRT3
        b = SQRT2 - SQRT3
        assert kronecker_disjoint(TorusGenerated((a, b)), TorusGenerated((SQRT2,))) is False

    def test_rational_offset_not_shared(self):
        # generator sqrt2 + 1/2: the subgroup {n(sqrt2 + 1/2)} contains
        # 2*(sqrt2+1/2) = 2 sqrt2 + 1, i.e. e(2 sqrt2); so against sqrt2 it
        # is not disjoint
        g = SQRT2 + Frequency({ONE: Fraction(1, 2)})
        assert kronecker_disjoint(TorusGenerated((g,)), TorusGenerated((SQRT2,))) is False

    def test_symmetry(self):
        pairs = [
            (FiniteCyclic((4,)), FiniteCyclic((9,))),
            (FiniteCyclic((4,)), FiniteCyclic((6,))),
            (TorusGenerated((SQRT2,)), TorusGenerated((SQRT3,))),
            (TorusGenerated((SQRT2,)), FiniteCyclic((5,))),
        ]
        for a, b in pairs:
            assert kronecker_disjoint(a, b) == kronecker_disjoint(b, a)

    def test_reflexively_false_for_nontrivial(self):
        for s in (FiniteCyclic((4,)), TorusGenerated((SQRT2,)), FiniteCyclic((2, 3))):
            assert kronecker_disjoint(s, s) is False

    def test_trivial_disjoint_from_everything(self):
        assert kronecker_disjoint(TrivialOnly(), TorusGenerated((SQRT2,))) is True
        assert kronecker_disjoint(TrivialOnly(), TrivialOnly()) is True


class TestSpectrumContains:
    def test_finite_cyclic_membership(self):
        s = FiniteCyclic((4,))
        assert spectrum_contains(s, Frequency({ONE: Fraction(1, 4)}))
        assert spectrum_contains(s, Frequency({ONE: Fraction(1, 2)}))
        assert not spectrum_contains(s, Frequency({ONE: Fraction(1, 3)}))
        assert not spectrum_contains(s, SQRT2)

    def test_torus_generated_membership(self):
        s = TorusGenerated((SQRT2,))
        assert spectrum_contains(s, SQRT2)
        assert spectrum_contains(s, SQRT2 * 3)
        assert spectrum_contains(s, Frequency({}))
        assert not spectrum_contains(s, SQRT3)
        assert not spectrum_contains(s, SQRT2 + Frequency({ONE: Fraction(1, 2)}))

    def test_group_closure_spot_check(self):
        s = TorusGenerated((SQRT2, SQRT3))
        a, b = SQRT2 + SQRT3, SQRT2 - SQRT3
        assert spectrum_contains(s, a)
        assert spectrum_contains(s, b)
        assert spectrum_contains(s, a + b)
        assert spectrum_contains(s, a - b)


class TestPointMass:
    def test_rotation_autocorrelation_is_character(self):
        sys = TorusRotation((SQRT2,))
        corr = correlation_sequence(sys, Character((1,)), TorusPoint((0.0,)), 512)
        for n in (0, 1, 17, 300):
            want = cmath.exp(2j * cmath.pi * n * math.sqrt(2))
            assert abs(corr[n] - want) < 1e-6

    def test_constant_observable(self):
        sys = TorusRotation((SQRT2,))
        corr = correlation_sequence(sys, Character((0,)), TorusPoint((0.0,)), 256)
        assert np.max(np.abs(corr - 1)) < 1e-9

    def test_c0_in_range(self):
        sys = TorusRotation((SQRT2,))
        corr = correlation_sequence(sys, Character((1,)), TorusPoint((0.3,)), 128)
        assert abs(corr[0] - 1) < 1e-9

    def test_mass_at_eigenfrequency(self):
        sys = TorusRotation((SQRT2,))
        n = 10**5
        corr = correlation_sequence(sys, Character((1,)), TorusPoint((0.0,)), n)
        est = spectral_point_mass(corr, SQRT2, n)
        assert abs(est.mass - 1) < 1e-6

    def test_mass_off_eigenfrequency_geometric_bound(self):
        sys = TorusRotation((SQRT2,))
        n = 10**4
        corr = correlation_sequence(sys, Character((1,)), TorusPoint((0.0,)), n)
        beta = SQRT2 + GOLDEN
        est = spectral_point_mass(corr, beta, n)
        gap = abs(1 - cmath.exp(2j * cmath.pi * GOLDEN.value()))
        assert abs(est.mass) <= 2 / (n * gap) + 1e-6

    def test_zero_correlations_zero_mass(self):
        corr = np.zeros(64, dtype=complex)
        est = spectral_point_mass(corr, SQRT2, 64)
        assert est.mass == 0

    def test_mass_bounded_by_sup_norm(self):
        sys = TorusRotation((GOLDEN,))
        n = 4096
        corr = correlation_sequence(sys, Character((2,)), TorusPoint((0.1,)), n)
        for beta in (GOLDEN, GOLDEN * 2, SQRT2, Frequency({})):
            est = spectral_point_mass(corr, beta, n)
            assert abs(est.mass) <= 1 + 1e-9


class TestDiagOrbitSpectrum:
    def test_matches_base_rotation_spectrum(self):
        for alpha in (SQRT2, GOLDEN, THIRD, TWO_FIFTHS):
            base = known_spectrum(TorusRotation((alpha,)))
            for k in range(1, 6):
                assert spectra_equal(diag_orbit_spectrum(alpha, k), base)

    def test_one_third_k2(self):
        assert spectra_equal(diag_orbit_spectrum(THIRD, 2), FiniteCyclic((3,)))

    def test_k1_is_identity_case(self):
        assert spectra_equal(
            diag_orbit_spectrum(SQRT2, 1), known_spectrum(TorusRotation((SQRT2,)))
        )
