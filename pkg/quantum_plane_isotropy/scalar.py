"""
Exact coefficient arithmetic.

Scalars are elements of Q(ζ_L)[q, q^-1]: rational combinations of q^k·ζ_L^j,
with ζ-powers reduced modulo the L-th cyclotomic polynomial. When q is
specialized to a primitive N-th root of unity, q is folded into ζ_L^(L/N)
and every stored q-power is 0.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .config import get_settings
from .errors import BadInput, ConductorCapExceeded, DomainError

Rational = Union[int, Fraction]
TermKey = Tuple[int, int]  # (power of q, power of ζ)


def lcm(a: int, b: int) -> int:
    """Least common multiple of two positive integers."""
    return a // gcd(a, b) * b


class QKind(Enum):
    """Arithmetic nature of the quantum parameter q."""
    TRANSCENDENTAL = "transcendental"
    ROOT_OF_UNITY = "root_of_unity"


@dataclass(frozen=True)
class QSpec:
    """
    Specification of q: formal (transcendental) or a primitive N-th root of unity.

    q² = 1 is excluded, so a root of unity must have order N ≥ 3.
    """
    kind: QKind
    order: Optional[int] = None

    def __post_init__(self):
        if self.kind is QKind.ROOT_OF_UNITY:
            if self.order is None or self.order < 3:
                raise BadInput(
                    f"q must be a root of unity of order at least 3 (q^2 != 1), got order {self.order}"
                )
        elif self.order is not None:
            raise BadInput("a transcendental q has no order")

    @classmethod
    def transcendental(cls) -> 'QSpec':
        return cls(QKind.TRANSCENDENTAL)

    @classmethod
    def root_of_unity(cls, order: int) -> 'QSpec':
        return cls(QKind.ROOT_OF_UNITY, order)

    @property
    def is_root_of_unity(self) -> bool:
        return self.kind is QKind.ROOT_OF_UNITY

    @property
    def base_conductor(self) -> int:
        """Smallest conductor able to hold q."""
        return self.order if self.is_root_of_unity else 1

    def to_dict(self) -> Dict[str, object]:
        if self.is_root_of_unity:
            return {'type': self.kind.value, 'order': self.order}
        return {'type': self.kind.value}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> 'QSpec':
        kind = QKind(data['type'])
        if kind is QKind.ROOT_OF_UNITY:
            return cls.root_of_unity(int(data['order']))
        return cls.transcendental()

    def __str__(self) -> str:
        if self.is_root_of_unity:
            return f"root {self.order}"
        return "transcendental"


def q_power_is_one(k: int, spec: QSpec) -> bool:
    """
    Decide whether q^k = 1.

    Args:
        k: exponent
        spec: specification of q

    Returns:
        True iff k = 0 (transcendental q) or N divides k (q of order N)
    """
    if spec.is_root_of_unity:
        return k % spec.order == 0
    return k == 0


def _check_conductor(n: int) -> None:
    cap = get_settings().max_conductor
    if n > cap:
        raise ConductorCapExceeded(n, cap)


def _poly_divide_exact(num: List[int], den: Tuple[int, ...]) -> List[int]:
    """Divide integer polynomials (low degree first) by a monic divisor; remainder must vanish."""
    num = list(num)
    dd = len(den) - 1
    quotient = [0] * (len(num) - dd)
    for e in range(len(num) - 1, dd - 1, -1):
        c = num[e]
        if c:
            quotient[e - dd] = c
            for t, dc in enumerate(den):
                num[e - dd + t] -= c * dc
    if any(num[:dd]):
        raise ArithmeticError("inexact cyclotomic division")
    return quotient


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> Tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, _cyclotomic(d))
    return tuple(poly)


def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """
    Compute the n-th cyclotomic polynomial.

    Obtained by dividing t^n − 1 by Φ_d for every proper divisor d of n.

    Args:
        n: positive integer

    Returns:
        Integer coefficients, lowest degree first; monic of degree φ(n)

    Raises:
        BadInput: if n < 1
        ConductorCapExceeded: if n exceeds the configured cap
    """
    if n < 1:
        raise BadInput(f"cyclotomic index must be positive, got {n}")
    _check_conductor(n)
    return _cyclotomic(n)


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


class Scalar:
    """
    Immutable element of Q(ζ_L)[q, q^-1] in canonical form.

    Terms map (power of q, power of ζ_L) to nonzero rationals; ζ-powers are
    below φ(L) after reduction modulo Φ_L.
    """

    __slots__ = ('spec', 'conductor', '_terms')

    def __init__(self, spec: QSpec, conductor: int, terms: Dict[TermKey, Rational]):
        conductor = lcm(conductor, spec.base_conductor)
        _check_conductor(conductor)
        step = conductor // spec.order if spec.is_root_of_unity else 0

        by_qpow: Dict[int, List[Fraction]] = {}
        for (k, j), c in terms.items():
            c = _as_fraction(c)
            if not c:
                continue
            if spec.is_root_of_unity:
                j, k = j + k * step, 0
            row = by_qpow.setdefault(k, [Fraction(0)] * conductor)
            row[j % conductor] += c

        phi = _cyclotomic(conductor)
        deg = len(phi) - 1
        canonical: Dict[TermKey, Fraction] = {}
        for k, row in by_qpow.items():
            for e in range(conductor - 1, deg - 1, -1):
                c = row[e]
                if c:
                    for t, pc in enumerate(phi):
                        row[e - deg + t] -= c * pc
            for j in range(deg):
                if row[j]:
                    canonical[(k, j)] = row[j]

        object.__setattr__(self, 'spec', spec)
        object.__setattr__(self, 'conductor', conductor)
        object.__setattr__(self, '_terms', tuple(sorted(canonical.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # Constructors

    @classmethod
    def zero(cls, spec: QSpec) -> 'Scalar':
        return cls(spec, 1, {})

    @classmethod
    def rational(cls, value: Rational, spec: QSpec) -> 'Scalar':
        return cls(spec, 1, {(0, 0): value})

    @classmethod
    def q(cls, spec: QSpec, power: int = 1) -> 'Scalar':
        """The element q^power."""
        return cls(spec, 1, {(power, 0): 1})

    @classmethod
    def zeta(cls, conductor: int, power: int, spec: QSpec) -> 'Scalar':
        """The element ζ_conductor^power."""
        return cls(spec, conductor, {(0, power % conductor): 1})

    @classmethod
    def root_of_unity(cls, angle: Fraction, spec: QSpec) -> 'Scalar':
        """The element e(angle) = ζ_den^num for a rational angle."""
        angle = _as_fraction(angle)
        return cls.zeta(angle.denominator, angle.numerator, spec)

    @classmethod
    def from_terms(cls, spec: QSpec, conductor: int, terms: Iterable[Tuple[int, int, Rational]]) -> 'Scalar':
        """Build from (q-power, ζ-power, coefficient) triples, summing repeats."""
        collected: Dict[TermKey, Fraction] = {}
        for k, j, c in terms:
            collected[(k, j)] = collected.get((k, j), Fraction(0)) + _as_fraction(c)
        return cls(spec, conductor, collected)

    # Views

    @property
    def terms(self) -> Dict[TermKey, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(key == (0, 0) for key, _ in self._terms)

    def rational_value(self) -> Fraction:
        """Rational value; raises DomainError if the scalar is not rational."""
        if not self.is_rational():
            raise DomainError(f"{self.to_text()} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def lift(self, conductor: int) -> 'Scalar':
        """Re-express over ζ_conductor; the current conductor must divide it."""
        if conductor % self.conductor:
            raise BadInput(f"cannot lift conductor {self.conductor} to {conductor}")
        if conductor == self.conductor:
            return self
        factor = conductor // self.conductor
        return Scalar(self.spec, conductor, {(k, j * factor): c for (k, j), c in self._terms})

    # Arithmetic

    def _coerce(self, other) -> 'Scalar':
        if isinstance(other, Scalar):
            if other.spec != self.spec:
                raise DomainError(f"cannot combine scalars under {self.spec} and {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other, self.spec)
        return NotImplemented

    def _common(self, other: 'Scalar') -> Tuple[int, Dict[TermKey, Fraction], Dict[TermKey, Fraction]]:
        conductor = lcm(self.conductor, other.conductor)
        _check_conductor(conductor)
        left = self.lift(conductor)
        right = other.lift(conductor)
        return conductor, left.terms, right.terms

    def __add__(self, other) -> 'Scalar':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        conductor, left, right = self._common(other)
        for key, c in right.items():
            left[key] = left.get(key, Fraction(0)) + c
        return Scalar(self.spec, conductor, left)

    __radd__ = __add__

    def __neg__(self) -> 'Scalar':
        return Scalar(self.spec, self.conductor, {key: -c for key, c in self._terms})

    def __sub__(self, other) -> 'Scalar':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'Scalar':
        return (-self) + other

    def __mul__(self, other) -> 'Scalar':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        conductor, left, right = self._common(other)
        product: Dict[TermKey, Fraction] = {}
        for (k1, j1), c1 in left.items():
            for (k2, j2), c2 in right.items():
                key = (k1 + k2, j1 + j2)
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return Scalar(self.spec, conductor, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'Scalar':
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = Scalar.rational(1, self.spec)
        e = abs(exponent)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> 'Scalar':
        """
        Invert a unit of the form c·q^k·ζ^j.

        Raises:
            DomainError: if the scalar is zero or not of that form
        """
        qpows = {k for (k, _), _ in self._terms}
        if len(qpows) != 1:
            raise DomainError(f"{self.to_text()} is not an invertible monomial scalar")
        k = qpows.pop()
        base = self * Scalar.q(self.spec, -k) if k else self
        for r in range(self.conductor):
            rotated = base * Scalar.zeta(self.conductor, r, self.spec)
            if rotated.is_rational():
                c = rotated.rational_value()
                zeta = Scalar.zeta(self.conductor, r, self.spec)
                qinv = Scalar.q(self.spec, -k) if k else Scalar.rational(1, self.spec)
                return zeta * qinv * (1 / c)
        raise DomainError(f"{self.to_text()} is not an invertible monomial scalar")

    # Comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.spec != self.spec:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # Text form

    def term_text(self) -> str:
        """Terms without the conductor declaration, e.g. '1/2*q^-1*z^3 + 2'."""
        if not self._terms:
            return "0"
        pieces = []
        for index, ((k, j), c) in enumerate(sorted(self._terms, key=lambda t: (-t[0][0], -t[0][1]))):
            magnitude = abs(c)
            factors = []
            if magnitude != 1 or (k == 0 and j == 0):
                factors.append(str(magnitude))
            if k:
                factors.append("q" if k == 1 else f"q^{k}")
            if j:
                factors.append("z" if j == 1 else f"z^{j}")
            body = "*".join(factors)
            if index == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def to_text(self) -> str:
        """Full text form with conductor, e.g. 'conductor=12; 1/2*q^-1*z^3 + 2'."""
        return f"conductor={self.conductor}; {self.term_text()}"

    def __str__(self) -> str:
        return self.term_text()

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()!r}, spec={self.spec})"
