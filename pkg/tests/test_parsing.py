"""
Test suite for parsing module.

Tests the text grammar, JSON term records, q specifications, constraint
systems and isotropy input documents.
"""

import json
import os
import tempfile
import unittest
from fractions import Fraction

from quantum_plane_isotropy.errors import NotADerivation, ParseError
from quantum_plane_isotropy.models import Character
from quantum_plane_isotropy.parsing import (derivation_from_document, load_document,
                                            parse_characters, parse_poly, parse_qspec,
                                            parse_scalar, poly_from_json)
from quantum_plane_isotropy.qplane import QPoly
from quantum_plane_isotropy.scalar import QSpec, Scalar
from tests.test_base import TRANSCENDENTAL, AlgebraTestBase

R3 = QSpec.root_of_unity(3)


class TestTextGrammar(AlgebraTestBase):
    """Test cases for scalar and polynomial text."""

    def test_quantum_plane_evaluation(self):
        """Test that y*x reads as q·xy."""
        self.assertEqual(parse_poly("y*x", TRANSCENDENTAL), self.helper.mono(1, 1, Scalar.q(TRANSCENDENTAL)))

    def test_polynomial(self):
        """Test a mixed polynomial."""
        f = parse_poly("1/2*x - 3 + q^-1*x^2*y", TRANSCENDENTAL)
        self.assertEqual(f.coefficient(1, 0), Fraction(1, 2))
        self.assertEqual(f.coefficient(0, 0), -3)
        self.assertEqual(f.coefficient(2, 1), Scalar.q(TRANSCENDENTAL, -1))
        self.assertEqual(f.to_text(), parse_poly(f.to_text(), TRANSCENDENTAL).to_text())

    def test_scalars(self):
        """Test q powers and declared roots of unity."""
        self.assertEqual(parse_scalar("q^-1*q", TRANSCENDENTAL), 1)
        self.assertEqual(parse_scalar("conductor=4; z^2", TRANSCENDENTAL), -1)
        self.assertEqual(parse_scalar("q^3", R3), 1)

    def test_errors(self):
        """Test malformed text."""
        bad_scalars = ["x", "", "2 +", "1/0", "z", "conductor=0; 1", "(1", "1 $ 2", "3 4"]
        for text in bad_scalars:
            with self.assertRaises(ParseError, msg=text):
                parse_scalar(text, TRANSCENDENTAL)
        for text in ["x^-1", "x +", "x*y)"]:
            with self.assertRaises(ParseError, msg=text):
                parse_poly(text, TRANSCENDENTAL)


class TestJsonRecords(AlgebraTestBase):
    """Test cases for poly_from_json."""

    def test_records(self):
        """Test numeric and text coefficients."""
        records = [{'i': 1, 'j': 0, 'coeff': 2}, {'i': 0, 'j': 1, 'coeff': 'q'}]
        self.assertEqual(poly_from_json(records, TRANSCENDENTAL), self.poly("2*x + q*y"))
        self.assertEqual(poly_from_json("x + y", TRANSCENDENTAL), self.poly("x + y"))
        self.assertTrue(poly_from_json([], TRANSCENDENTAL).is_zero())

    def test_bad_records(self):
        """Test malformed term lists."""
        for records in ([{'i': -1, 'j': 0}], [{'i': 1}], [{'i': 1, 'j': 0, 'coeff': 1.5}], {}, [{'i': True, 'j': 0}]):
            with self.assertRaises(ParseError, msg=repr(records)):
                poly_from_json(records, TRANSCENDENTAL)


class TestQSpecParsing(unittest.TestCase):
    """Test cases for parse_qspec."""

    def test_forms(self):
        """Test the accepted forms."""
        self.assertEqual(parse_qspec("transcendental"), TRANSCENDENTAL)
        self.assertEqual(parse_qspec("root 5"), QSpec.root_of_unity(5))
        self.assertEqual(parse_qspec(['root', '5']), QSpec.root_of_unity(5))
        self.assertEqual(parse_qspec("ROOT 7"), QSpec.root_of_unity(7))
        self.assertEqual(parse_qspec("root:5"), QSpec.root_of_unity(5))
        self.assertEqual(parse_qspec({'type': 'root_of_unity', 'order': 4}), QSpec.root_of_unity(4))

    def test_bad_forms(self):
        """Test unknown forms."""
        for tokens in ("root x", "root:", "cube", {'type': 'bogus'}, {}):
            with self.assertRaises(ParseError, msg=repr(tokens)):
                parse_qspec(tokens)


class TestCharacters(unittest.TestCase):
    """Test cases for parse_characters."""

    def test_system(self):
        """Test a JSON constraint system."""
        self.assertEqual(parse_characters('[[3,1],[2,2]]'), [Character(3, 1), Character(2, 2)])
        self.assertEqual(parse_characters([[1, 0]]), [Character(1, 0)])

    def test_bad_systems(self):
        """Test malformed systems."""
        for data in ('[[1]]', '{', '{"a": 1}', '[[1, "2"]]'):
            with self.assertRaises(ParseError, msg=data):
                parse_characters(data)


class TestDocuments(AlgebraTestBase):
    """Test cases for derivation_from_document and load_document."""

    def test_inner_document(self):
        """Test the {q, w, a, b} shape."""
        spec, delta = derivation_from_document({'q': 'transcendental', 'w': 'x^3*y + x^2*y^2', 'b': 'q'})
        self.assertEqual(spec, TRANSCENDENTAL)
        self.assertEqual(delta.provenance.w, self.poly("x^3*y + x^2*y^2"))

    def test_images_document(self):
        """Test the {q, dx, dy} shape."""
        spec, delta = derivation_from_document({'q': {'type': 'root_of_unity', 'order': 3}, 'dx': 'x^4', 'dy': []})
        self.assertEqual(spec, R3)
        self.assertEqual(delta.dx, QPoly.monomial(4, 0, R3))
        self.assertIsNone(delta.provenance)

    def test_non_derivation(self):
        """Test that dx = y is rejected."""
        with self.assertRaises(NotADerivation):
            derivation_from_document({'dx': 'y', 'dy': '0'})

    def test_bad_documents(self):
        """Test missing, conflicting and malformed fields."""
        for document in ({'q': 'transcendental'}, {'w': 'x', 'dx': 'x'}, {'w': 'x', 'a': 1.5}, ['w']):
            with self.assertRaises(ParseError, msg=repr(document)):
                derivation_from_document(document)

    def test_load_inline_and_file(self):
        """Test inline JSON and a file path."""
        self.assertEqual(load_document('{"w": "x"}'), {'w': 'x'})
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, 'input.json')
            with open(path, 'w', encoding='utf-8') as f:
                json.dump({'dx': 'x', 'dy': '0'}, f)
            self.assertEqual(load_document(path), {'dx': 'x', 'dy': '0'})
            with self.assertRaises(ParseError):
                load_document(os.path.join(tmpdir, 'missing.json'))
        with self.assertRaises(ParseError):
            load_document('[1,')


if __name__ == '__main__':
    unittest.main()
