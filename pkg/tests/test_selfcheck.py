"""
Test suite for selfcheck module.
"""

import unittest

from quantum_plane_isotropy.models import CheckRow
from quantum_plane_isotropy.selfcheck import CHECKS, SweepOptions, run_selfcheck, sweep_quadruples
from tests.test_base import AlgebraTestBase


class TestSelfcheck(AlgebraTestBase):
    """Test cases for the built-in verification sweeps."""

    def assertAllPass(self, rows):
        for row in rows:
            self.assertTrue(row.passed, f"check {row.criterion} failed: {row.detail}")
            self.assertGreater(row.checked, 0)

    def test_fixed_checks(self):
        """Test the worked example, ledgers, table, realization and lcm split."""
        rows = run_selfcheck(SweepOptions(bound=3, samples=5), criteria=[1, 2, 3, 5, 9])
        self.assertEqual([row.criterion for row in rows], [1, 2, 3, 5, 9])
        self.assertAllPass(rows)

    def test_sampled_checks(self):
        """Test the random sweeps with few samples."""
        rows = run_selfcheck(SweepOptions(bound=3, samples=5, seed=7), criteria=[6, 7, 8])
        self.assertAllPass(rows)

    def test_three_routes_small_bound(self):
        """Test the quadruple sweep on [1, 3]^4."""
        rows = run_selfcheck(SweepOptions(bound=3), criteria=[4])
        self.assertAllPass(rows)
        checked, failures, _ = sweep_quadruples([2], 3, 10000)
        self.assertEqual(failures, [])
        self.assertEqual(checked, 22)

    def test_closed_form_mismatches_are_counted(self):
        """Test that (1, 2, 3, 2) is counted: closed form Z2 + Z2, group Z4."""
        self.assertEqual(sweep_quadruples([1], 3, 10000), (22, [], [(1, 2, 3, 2)]))
        rows = run_selfcheck(SweepOptions(bound=3), criteria=[4])
        self.assertTrue(rows[0].passed, rows[0].detail)
        self.assertRegex(rows[0].detail, r"closed form differs from the group on [1-9]\d* quadruples")
        self.assertIn("first (1, 2, 3, 2)", rows[0].detail)

    def test_algebra_check_default_counts(self):
        """Test 100 derivations with Leibniz triples, one rejected image pair and 500 product pairs."""
        rows = run_selfcheck(SweepOptions(), criteria=[8])
        self.assertAllPass(rows)
        self.assertEqual(rows[0].checked, 100 + 1 + 500)
        self.assertIn("100 Leibniz triples, 500 product pairs of degree <= 6", rows[0].detail)

    def test_checks_are_numbered(self):
        """Test that criteria are numbered 1..9 without gaps."""
        self.assertEqual([number for number, _, _ in CHECKS], list(range(1, 10)))

    def test_sample_count(self):
        """Test SweepOptions.count."""
        self.assertEqual(SweepOptions().count(100), 100)
        self.assertEqual(SweepOptions(samples=4).count(100), 4)

    def test_row_dict(self):
        """Test the JSON row form."""
        row = CheckRow(1, "example", True, 2)
        self.assertEqual(row.to_dict(), {'criterion': 1, 'name': 'example', 'passed': True, 'checked': 2, 'detail': ''})


if __name__ == '__main__':
    unittest.main()
