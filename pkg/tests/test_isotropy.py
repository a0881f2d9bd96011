"""
Test suite for isotropy module.

Tests constraint extraction on both paths, the isotropy group, the finiteness
criterion, realization of finite groups and the root-of-unity obstruction.
"""

import unittest
from fractions import Fraction
from itertools import product

from quantum_plane_isotropy.errors import BadInput, NotADerivation
from quantum_plane_isotropy.isotropy import (central_witness, constraints_from_images,
                                             constraints_from_inner, coprime_lcm_split,
                                             distinguish, finiteness_check, group_matches,
                                             isomorphism_obstruction, isotropy_group,
                                             realize_group)
from quantum_plane_isotropy.models import (CENTRAL_COEFFICIENTS, SCALAR_COEFFICIENTS, Character,
                                           Classification, IsotropyPath, RealizabilityStatus)
from quantum_plane_isotropy.qplane import (DiagonalAutomorphism, QPoly, commutes, inner_derivation,
                                           make_derivation, make_derivation_from_images)
from quantum_plane_isotropy.scalar import QSpec, Scalar
from quantum_plane_isotropy.torus import canonical_invariants
from tests.test_base import ALL_SPECS, TRANSCENDENTAL, AlgebraTestBase, AlgebraTestHelper

R3, R4, R5 = QSpec.root_of_unity(3), QSpec.root_of_unity(4), QSpec.root_of_unity(5)


class TestConstraints(AlgebraTestBase):
    """Test cases for constraint extraction."""

    def test_from_inner(self):
        """Test one character per non-central monomial."""
        self.assertEqual(constraints_from_inner(self.poly("x^5"), TRANSCENDENTAL), [Character(5, 0)])
        self.assertEqual(constraints_from_inner(self.poly("7"), TRANSCENDENTAL), [])
        self.assertEqual(constraints_from_inner(self.poly("x^2 + x^4*y^4", R4), R4), [Character(2, 0)])

    def test_from_images(self):
        """Test shifted supports of the images."""
        d_x = make_derivation(QPoly.zero(TRANSCENDENTAL), 1, 0, TRANSCENDENTAL)
        self.assertEqual(constraints_from_images(d_x), [])
        delta = inner_derivation(self.poly("x^3*y + x^2*y^2"))
        self.assertEqual(constraints_from_images(delta), [Character(2, 2), Character(3, 1)])

    def test_paths_agree(self):
        """Test that both paths give the same constraints for ad_w + a·D_x + b·D_y."""
        for spec in ALL_SPECS:
            helper = AlgebraTestHelper(spec)
            for _ in range(40):
                w = helper.random(self.rng, max_exponent=6, max_terms=4)
                delta = make_derivation(w, Fraction(self.rng.randint(-3, 3), 2), self.rng.randint(-2, 2), spec)
                self.assertEqual(constraints_from_inner(w, spec), constraints_from_images(delta), (str(w), str(spec)))


class TestIsotropyGroup(AlgebraTestBase):
    """Test cases for isotropy_group."""

    def test_worked_example(self):
        """Test ad_w with w = x^3 y + x^2 y^2: Z4."""
        result = isotropy_group(inner_derivation(self.poly("x^3*y + x^2*y^2")), TRANSCENDENTAL)
        self.assertEqual(result.path, IsotropyPath.INNER_SHORTCUT)
        self.assertTrue(result.report.is_finite)
        self.assertEqual(result.report.order, 4)
        self.assertEqual(result.report.torsion_invariants, (4, 1))

    def test_inner_table(self):
        """Test w = x, x^m, single monomials and constants."""
        report = isotropy_group(inner_derivation(self.poly("x")), TRANSCENDENTAL).report
        self.assertEqual(report.classification, Classification.INFINITE)
        self.assertEqual(report.torsion_invariants, (1, 1))
        for m in range(1, 11):
            report = isotropy_group(inner_derivation(self.helper.mono(m, 0)), TRANSCENDENTAL).report
            self.assertEqual((report.torus_rank, report.torsion_invariants), (1, (m, 1)))
        report = isotropy_group(inner_derivation(self.poly("x^2*y^3")), TRANSCENDENTAL).report
        self.assertEqual(report.classification, Classification.INFINITE)
        report = isotropy_group(inner_derivation(self.poly("5")), TRANSCENDENTAL).report
        self.assertEqual(report.classification, Classification.FULL_TORUS)

    def test_sums_of_powers(self):
        """Test w = x^m + y^n: Z_m + Z_n."""
        for m, n in product(range(1, 7), repeat=2):
            w = self.helper.mono(m, 0) + self.helper.mono(0, n)
            report = isotropy_group(inner_derivation(w), TRANSCENDENTAL).report
            self.assertEqual(report.torsion_invariants, canonical_invariants(m, n), (m, n))

    def test_triple_input(self):
        """Test the (w, a, b) form."""
        result = isotropy_group((self.poly("x^3*y + x^2*y^2"), 1, Scalar.q(TRANSCENDENTAL)), TRANSCENDENTAL)
        self.assertEqual(result.report.order, 4)

    def test_images_path(self):
        """Test that images without provenance use the general path."""
        inner = inner_derivation(self.poly("x^3*y + x^2*y^2"))
        delta = make_derivation_from_images(inner.dx, inner.dy, TRANSCENDENTAL)
        result = isotropy_group(delta, TRANSCENDENTAL)
        self.assertEqual(result.path, IsotropyPath.GENERAL_IMAGES)
        self.assertEqual(result.report, isotropy_group(inner, TRANSCENDENTAL).report)

    def test_central_monomials_are_filtered(self):
        """Test w = x^2 + x^4 y^4 under q of order 4: infinite."""
        w = self.poly("x^2 + x^4*y^4", R4)
        result = isotropy_group(inner_derivation(w), R4)
        self.assertEqual(result.constraints, [Character(2, 0)])
        self.assertEqual(result.report.classification, Classification.INFINITE)

    def test_generators_commute(self):
        """Test soundness of every reported generator."""
        checked = 0
        for spec in ALL_SPECS:
            helper = AlgebraTestHelper(spec)
            for _ in range(15):
                w = helper.random(self.rng)
                delta = inner_derivation(w)
                report = isotropy_group(delta, spec).report
                for point in report.generators:
                    self.assertTrue(commutes(DiagonalAutomorphism.from_torsion_point(point, spec), delta, spec))
                    checked += 1
        self.assertGreater(checked, 0)

    def test_logs_path(self):
        """Test the INFO log line."""
        with self.assertLogs('quantum_plane_isotropy.isotropy', level='INFO') as logs:
            isotropy_group(inner_derivation(self.poly("x")), TRANSCENDENTAL)
        self.assertTrue(any('inner_shortcut' in line for line in logs.output))

    def test_rejects_foreign_spec(self):
        """Test that the derivation must live under the given q."""
        with self.assertRaises(BadInput):
            isotropy_group(inner_derivation(self.poly("x")), R3)


class TestFiniteness(AlgebraTestBase):
    """Test cases for finiteness_check."""

    def test_examples(self):
        """Test the criterion on the documented examples."""
        self.assertTrue(finiteness_check(self.poly("x^3*y + x^2*y^2"), TRANSCENDENTAL))
        self.assertFalse(finiteness_check(self.poly("x^2*y^4 + x^3*y^6"), TRANSCENDENTAL))
        self.assertFalse(finiteness_check(self.poly("x^2 + x^4*y^4", R4), R4))

    def test_matches_classification(self):
        """Test finiteness_check ⟺ Finite on random w."""
        for spec in ALL_SPECS:
            helper = AlgebraTestHelper(spec)
            for _ in range(50):
                w = helper.random(self.rng, max_exponent=6, max_terms=4)
                report = isotropy_group(inner_derivation(w), spec).report
                self.assertEqual(finiteness_check(w, spec), report.is_finite, (str(w), str(spec)))


class TestCoprimeLcmSplit(unittest.TestCase):
    """Test cases for coprime_lcm_split."""

    def test_examples(self):
        """Test the documented splits."""
        self.assertEqual(coprime_lcm_split(12, 18), (4, 9))
        self.assertEqual(coprime_lcm_split(1, 1), (1, 1))
        self.assertEqual(coprime_lcm_split(8, 3), (8, 3))
        self.assertEqual(coprime_lcm_split(6, 6), (6, 1))

    def test_rejects_nonpositive(self):
        """Test the precondition."""
        with self.assertRaises(BadInput):
            coprime_lcm_split(0, 4)


class TestRealizeGroup(AlgebraTestBase):
    """Test cases for realize_group."""

    def test_transcendental(self):
        """Test Z12 + Z4 realized by x^12 + y^4."""
        verdict = realize_group(12, 4, TRANSCENDENTAL)
        self.assertEqual(verdict.status, RealizabilityStatus.REALIZABLE)
        self.assertEqual(verdict.witness, self.poly("x^12 + y^4"))
        self.assertEqual(verdict.group.torsion_invariants, (12, 4))

    def test_root_not_dividing(self):
        """Test Z6 + Z3 under q of order 5."""
        verdict = realize_group(6, 3, R5)
        self.assertEqual(verdict.status, RealizabilityStatus.REALIZABLE)
        self.assertTrue(group_matches(6, 3, verdict.group.torsion_invariants))

    def test_obstruction(self):
        """Test Z6 + Z3 under q of order 3: not realizable, with a central witness."""
        verdict = realize_group(6, 3, R3)
        self.assertEqual(verdict.status, RealizabilityStatus.NOT_REALIZABLE)
        self.assertIsNone(verdict.witness)
        self.assertEqual(verdict.central_witness.dx, QPoly.monomial(7, 0, R3))
        self.assertEqual(verdict.central_witness.dy, QPoly.monomial(0, 4, R3))
        report = isotropy_group(verdict.central_witness, R3).report
        self.assertEqual(report.torsion_invariants, (6, 3))

    def test_obstruction_sweep(self):
        """Test p·r, p·s for p in 3, 4, 5."""
        for p in (3, 4, 5):
            spec = QSpec.root_of_unity(p)
            for r, s in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3)]:
                self.assertEqual(realize_group(p * r, p * s, spec).status, RealizabilityStatus.NOT_REALIZABLE)

    def test_unknown_and_search(self):
        """Test the open case and the binomial search."""
        self.assertEqual(realize_group(3, 1, R3).status, RealizabilityStatus.UNKNOWN)
        verdict = realize_group(3, 1, R3, search_bound=3)
        self.assertEqual(verdict.status, RealizabilityStatus.REALIZABLE)
        self.assertEqual(verdict.group.torsion_invariants, (3, 1))

    def test_divisibility_precondition(self):
        """Test that n2 must divide n1."""
        with self.assertRaises(BadInput):
            realize_group(4, 3, TRANSCENDENTAL)
        with self.assertRaises(BadInput):
            realize_group(0, 1, TRANSCENDENTAL)

    def test_verdict_dict(self):
        """Test the JSON dict form."""
        data = realize_group(12, 4, TRANSCENDENTAL).to_dict()
        self.assertEqual(data['status'], 'realizable')
        self.assertEqual(data['witness'], 'x^12 + y^4')
        self.assertIn('central_witness', realize_group(3, 3, R3).to_dict())

    def test_verdict_scope(self):
        """Test that the obstruction is scoped to scalar coefficients and the central witness is not."""
        verdict = realize_group(6, 3, R3)
        self.assertEqual(verdict.scope, SCALAR_COEFFICIENTS)
        data = verdict.to_dict()
        self.assertEqual(data['scope'], 'scalar_coefficients')
        self.assertEqual(data['central_witness']['scope'], CENTRAL_COEFFICIENTS)
        self.assertEqual(realize_group(12, 4, TRANSCENDENTAL).to_dict()['scope'], 'scalar_coefficients')

    def test_central_witness_needs_root_of_unity(self):
        """Test that x^n·D_x + y^n·D_y is not a derivation for transcendental q."""
        with self.assertRaises(NotADerivation):
            central_witness(2, 2, TRANSCENDENTAL)


class TestObstruction(unittest.TestCase):
    """Test cases for isomorphism_obstruction and distinguish."""

    def test_examples(self):
        """Test the documented pairs."""
        self.assertEqual(isomorphism_obstruction(TRANSCENDENTAL, R5), 5)
        self.assertEqual(isomorphism_obstruction(R5, TRANSCENDENTAL), 5)
        self.assertIsNone(isomorphism_obstruction(R3, R3))
        self.assertIsNone(isomorphism_obstruction(TRANSCENDENTAL, TRANSCENDENTAL))
        self.assertEqual(isomorphism_obstruction(R4, QSpec.root_of_unity(6)), 6)
        self.assertEqual(isomorphism_obstruction(R3, QSpec.root_of_unity(6)), 3)

    def test_distinguish(self):
        """Test the verdict pair for Z5 + Z5."""
        distinction = distinguish(TRANSCENDENTAL, R5)
        self.assertEqual(distinction.n, 5)
        self.assertEqual(distinction.first_verdict.status, RealizabilityStatus.REALIZABLE)
        self.assertEqual(distinction.second_verdict.status, RealizabilityStatus.NOT_REALIZABLE)
        self.assertIsNone(distinguish(R3, R3).n)


if __name__ == '__main__':
    unittest.main()
