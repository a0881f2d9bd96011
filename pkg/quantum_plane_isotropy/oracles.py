"""
Independent reference computations built on sympy.

Each oracle reaches the same answer as the exact core by a different route:
word rewriting in the free algebra, sympy's Smith normal form and cyclotomic
polynomials, and polynomial division for binomial factors.
"""

from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix, Poly, Rational, expand, symbols
from sympy import cyclotomic_poly as sympy_cyclotomic_poly
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form
from sympy.polys.domains import ZZ

from .models import Character
from .qplane import QPoly
from .scalar import QSpec, Scalar, lcm

Q, Z, T, X, Y = symbols('q z t X Y')


def scalar_to_sympy(value: Scalar):
    """Σ c·q^k·z^j with z standing for ζ_conductor."""
    return sum(
        (Rational(c.numerator, c.denominator) * Q ** k * Z ** j for (k, j), c in value.terms.items()),
        Rational(0)
    )


def sympy_to_scalar(expr, spec: QSpec, conductor: int = 1) -> Scalar:
    """Read a Laurent polynomial in q, z back into a Scalar over ζ_conductor."""
    terms = []
    for monomial, coeff in expand(expr).as_coefficients_dict().items():
        powers = monomial.as_powers_dict()
        coeff = Rational(coeff)
        terms.append((int(powers.get(Q, 0)), int(powers.get(Z, 0)), Fraction(int(coeff.p), int(coeff.q))))
    return Scalar.from_terms(spec, conductor, terms)


def _rewrite(word: str) -> Tuple[int, str]:
    """Normal form of a word over {x, y} by repeated yx -> q·xy; returns (q-power, word)."""
    power = 0
    while 'yx' in word:
        index = word.index('yx')
        word = word[:index] + 'xy' + word[index + 2:]
        power += 1
    return power, word


def free_algebra_product(f: QPoly, g: QPoly) -> QPoly:
    """
    Product of f and g computed by concatenating words and rewriting.

    Coefficients are multiplied as sympy expressions in q and z.
    """
    spec = f.spec
    conductor = 1
    for poly in (f, g):
        for _, c in poly.items():
            conductor = lcm(conductor, c.conductor)

    collected: Dict[str, object] = {}
    for (i, j), c1 in f.items():
        for (k, l), c2 in g.items():
            power, word = _rewrite('x' * i + 'y' * j + 'x' * k + 'y' * l)
            term = scalar_to_sympy(c1.lift(conductor)) * scalar_to_sympy(c2.lift(conductor)) * Q ** power
            collected[word] = collected.get(word, 0) + term

    terms = {}
    for word, coeff in collected.items():
        key = (word.count('x'), word.count('y'))
        terms[key] = sympy_to_scalar(coeff, spec, conductor)
    return QPoly(spec, terms)


def cyclotomic_coefficients(n: int) -> Tuple[int, ...]:
    """Coefficients of Φ_n, lowest degree first."""
    coeffs = Poly(sympy_cyclotomic_poly(n, T), T).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def invariant_factors(chars: Sequence[Character]) -> Tuple[int, ...]:
    """
    Nonzero invariant factors of the character matrix via sympy, ascending.

    The diagonal is re-canonicalized with gcd/lcm so the result does not depend
    on the divisibility order sympy happens to produce.
    """
    active = [c for c in chars if not c.is_trivial]
    if not active:
        return ()
    diagonal = sympy_smith_normal_form(Matrix([[c.m, c.n] for c in active]), domain=ZZ)
    entries = [abs(int(diagonal[i, i])) for i in range(min(diagonal.shape))]
    entries = [e for e in entries if e]
    if len(entries) == 2:
        g = gcd(*entries)
        entries = [g, entries[0] * entries[1] // g]
    return tuple(entries)


def binomial_cofactor(common: Character, char: Character) -> List[Tuple[int, int]]:
    """
    Exponents of (X^m Y^n − 1) divided into (X^m_i Y^n_i − 1) by sympy,
    sorted; empty when the division leaves a remainder.

    Exponents must be nonnegative.
    """
    quotient, remainder = (X ** char.m * Y ** char.n - 1).as_poly(X, Y).div(
        (X ** common.m * Y ** common.n - 1).as_poly(X, Y)
    )
    if not remainder.is_zero:
        return []
    return sorted(quotient.monoms())
