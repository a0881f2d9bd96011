"""
Test suite for geometry module.

Tests multiplicities at infinity against the Puiseux oracle, the Bezout
ledger and the affine intersection points.
"""

import unittest
from fractions import Fraction
from itertools import product
from math import gcd

from quantum_plane_isotropy.errors import BadInput, DegenerateSystem
from quantum_plane_isotropy.geometry import (affine_intersection_points, bezout_ledger,
                                             branch_decomposition, intersection_report,
                                             mult_at_infinity_coprime, mult_at_infinity_general,
                                             puiseux_order_oracle)
from quantum_plane_isotropy.models import BezoutLedger, TorsionPoint


class TestMultiplicityAtInfinity(unittest.TestCase):
    """Test cases for the multiplicity formulas."""

    def test_coprime_examples(self):
        """Test the irreducible case."""
        self.assertEqual(mult_at_infinity_coprime(1, 2, 1, 3), (3, 8))
        self.assertEqual(mult_at_infinity_coprime(3, 1, 1, 1), (4, 2))
        self.assertEqual(mult_at_infinity_coprime(1, 1, 1, 2), (2, 3))

    def test_coprime_matches_puiseux(self):
        """Test the formulas against the branch pullback."""
        for a, b, c, d in product(range(1, 6), repeat=4):
            if a * d == b * c or gcd(a, b) != 1 or gcd(c, d) != 1:
                continue
            m010, m100 = mult_at_infinity_coprime(a, b, c, d)
            self.assertEqual(puiseux_order_oracle(a, b, c, d, "010"), m010, (a, b, c, d))
            self.assertEqual(puiseux_order_oracle(a, b, c, d, "100"), m100, (a, b, c, d))

    def test_puiseux_rejects_bad_input(self):
        """Test non-coprime exponents, unknown points and shared branches."""
        with self.assertRaises(BadInput):
            puiseux_order_oracle(3, 1, 2, 2)
        with self.assertRaises(BadInput):
            puiseux_order_oracle(1, 2, 1, 3, "001")
        with self.assertRaises(DegenerateSystem):
            puiseux_order_oracle(1, 1, 1, 1)

    def test_coprime_preconditions(self):
        """Test that reducible curves need the general form."""
        with self.assertRaises(BadInput):
            mult_at_infinity_coprime(2, 2, 1, 1)
        with self.assertRaises(BadInput):
            mult_at_infinity_coprime(0, 1, 1, 2)

    def test_general_examples(self):
        """Test d1·d2 scaling."""
        self.assertEqual(mult_at_infinity_general(3, 1, 2, 2), (8, 4))
        self.assertEqual(mult_at_infinity_general(2, 4, 3, 9), (18, 48))

    def test_branch_decomposition(self):
        """Test the branch split of (2, 4, 3, 9)."""
        branches = branch_decomposition(2, 4, 3, 9)
        self.assertEqual((branches.d1, branches.d2), (2, 3))
        self.assertEqual(branches.primed, (1, 2, 1, 3))
        self.assertEqual(branches.per_branch, (3, 8))


class TestBezoutLedger(unittest.TestCase):
    """Test cases for bezout_ledger."""

    def test_examples(self):
        """Test the documented ledgers."""
        self.assertEqual(bezout_ledger(2, 4, 3, 9), BezoutLedger(72, 6, 18, 48))
        self.assertEqual(bezout_ledger(3, 1, 2, 2), BezoutLedger(16, 4, 8, 4))
        self.assertEqual(bezout_ledger(1, 1, 1, 2), BezoutLedger(6, 1, 2, 3))

    def test_balances_on_sweep(self):
        """Test (a+b)(c+d) = |ad − bc| + m010 + m100 on [1, 6]^4."""
        for a, b, c, d in product(range(1, 7), repeat=4):
            if a * d == b * c:
                continue
            self.assertTrue(bezout_ledger(a, b, c, d).balanced, (a, b, c, d))

    def test_degenerate(self):
        """Test that proportional exponents are rejected."""
        with self.assertRaises(DegenerateSystem):
            bezout_ledger(1, 2, 2, 4)

    def test_dict_form(self):
        """Test the JSON keys."""
        data = bezout_ledger(2, 4, 3, 9).to_dict()
        self.assertEqual(data, {'total': 72, 'affine': 6, 'at010': 18, 'at100': 48})
        self.assertEqual(BezoutLedger.from_dict(data), bezout_ledger(2, 4, 3, 9))


class TestAffinePoints(unittest.TestCase):
    """Test cases for affine_intersection_points."""

    def test_counts(self):
        """Test that the number of points is |ad − bc|."""
        self.assertEqual(len(affine_intersection_points(3, 1, 2, 2)), 4)
        self.assertEqual(len(affine_intersection_points(2, 4, 3, 9)), 6)

    def test_axis_lines(self):
        """Test x = 1, y = 1 meeting at a single point."""
        self.assertEqual(affine_intersection_points(1, 0, 0, 1), [TorsionPoint(Fraction(0), Fraction(0))])

    def test_rejections(self):
        """Test negative and degenerate exponents."""
        with self.assertRaises(BadInput):
            affine_intersection_points(-1, 1, 1, 2)
        with self.assertRaises(DegenerateSystem):
            affine_intersection_points(2, 2, 1, 1)


class TestIntersectionReport(unittest.TestCase):
    """Test cases for intersection_report."""

    def test_report(self):
        """Test the assembled report for (2, 4, 3, 9)."""
        report = intersection_report(2, 4, 3, 9)
        self.assertEqual(report.pair.degrees, (6, 12))
        self.assertEqual(len(report.points), report.ledger.affine_count)
        self.assertEqual(report.group.order, 6)
        data = report.to_dict()
        self.assertEqual(set(data), {'degrees', 'ledger', 'points', 'branch_decomposition', 'group'})
        self.assertEqual(data['branch_decomposition']['per_branch'], {'at010': 3, 'at100': 8})


if __name__ == '__main__':
    unittest.main()
