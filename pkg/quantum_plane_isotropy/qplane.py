"""
Normal-form arithmetic in the quantum plane k_q[x, y] (yx = qxy).

Provides polynomials in normal form Σ c_ij x^i y^j, derivations given by
their generator images, diagonal automorphisms and the commutation test
ρδ = δρ.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .errors import BadInput, DomainError, InternalConsistencyError, NotADerivation
from .models import TorsionPoint
from .scalar import QSpec, Scalar, lcm

Monomial = Tuple[int, int]
Coefficient = Union[Scalar, int, Fraction]

MAX_EXPONENT = 2 ** 31 - 1


def _to_scalar(value: Coefficient, spec: QSpec) -> Scalar:
    if isinstance(value, Scalar):
        if value.spec != spec:
            raise DomainError(f"coefficient lives under {value.spec}, expected {spec}")
        return value
    return Scalar.rational(value, spec)


def _check_exponent(e: int) -> None:
    if isinstance(e, bool) or not isinstance(e, int):
        raise BadInput(f"exponents must be integers, got {e!r}")
    if e < 0:
        raise BadInput(f"exponents must be nonnegative, got {e}")
    if e > MAX_EXPONENT:
        raise BadInput(f"exponent {e} overflows the supported range")


class QPoly:
    """
    Immutable element Σ c_ij x^i y^j of the quantum plane, in normal form.

    No zero coefficients are stored.
    """

    __slots__ = ('spec', '_terms')

    def __init__(self, spec: QSpec, terms: Optional[Dict[Monomial, Coefficient]] = None):
        cleaned: Dict[Monomial, Scalar] = {}
        for (i, j), c in (terms or {}).items():
            _check_exponent(i)
            _check_exponent(j)
            c = _to_scalar(c, spec)
            if not c.is_zero():
                cleaned[(i, j)] = c
        object.__setattr__(self, 'spec', spec)
        object.__setattr__(self, '_terms', cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def zero(cls, spec: QSpec) -> 'QPoly':
        return cls(spec)

    @classmethod
    def constant(cls, value: Coefficient, spec: QSpec) -> 'QPoly':
        return cls(spec, {(0, 0): value})

    @classmethod
    def monomial(cls, i: int, j: int, spec: QSpec, coeff: Coefficient = 1) -> 'QPoly':
        return cls(spec, {(i, j): coeff})

    @classmethod
    def x(cls, spec: QSpec) -> 'QPoly':
        return cls.monomial(1, 0, spec)

    @classmethod
    def y(cls, spec: QSpec) -> 'QPoly':
        return cls.monomial(0, 1, spec)

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(sorted(self._terms.items()))

    def support(self) -> List[Monomial]:
        return sorted(self._terms)

    def coefficient(self, i: int, j: int) -> Scalar:
        return self._terms.get((i, j), Scalar.zero(self.spec))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def _coerce(self, other) -> 'QPoly':
        if isinstance(other, QPoly):
            if other.spec != self.spec:
                raise DomainError(f"cannot combine polynomials under {self.spec} and {other.spec}")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return QPoly.constant(other, self.spec)
        return NotImplemented

    def __add__(self, other) -> 'QPoly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for key, c in other._terms.items():
            result[key] = result[key] + c if key in result else c
        return QPoly(self.spec, result)

    __radd__ = __add__

    def __neg__(self) -> 'QPoly':
        return QPoly(self.spec, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other) -> 'QPoly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'QPoly':
        return (-self) + other

    def scale(self, c: Coefficient) -> 'QPoly':
        """Multiply by a (central) scalar."""
        c = _to_scalar(c, self.spec)
        return QPoly(self.spec, {key: c * v for key, v in self._terms.items()})

    def __mul__(self, other) -> 'QPoly':
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other, self.spec)

    def __rmul__(self, other) -> 'QPoly':
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> 'QPoly':
        if not isinstance(exponent, int) or exponent < 0:
            raise BadInput(f"polynomials only take nonnegative integer powers, got {exponent!r}")
        result = QPoly.constant(1, self.spec)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (Scalar, int, Fraction)):
            other = QPoly.constant(other, self.spec)
        if not isinstance(other, QPoly):
            return NotImplemented
        if other.spec != self.spec or set(self._terms) != set(other._terms):
            return False
        return all(self._terms[key] == other._terms[key] for key in self._terms)

    __hash__ = None

    def to_text(self) -> str:
        """Text form 'c*x^i*y^j + ...', prefixed with the conductor when ζ appears."""
        conductor = 1
        for c in self._terms.values():
            conductor = lcm(conductor, c.conductor)
        body = self._term_text(conductor)
        if conductor > 1:
            return f"conductor={conductor}; {body}"
        return body

    def _term_text(self, conductor: int) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        pieces = []
        for index, ((i, j), c) in enumerate(ordered):
            c = c.lift(conductor)
            negative = False
            if len(c.terms) == 1:
                (key, value), = c.terms.items()
                negative = value < 0
                coeff_text = (-c if negative else c).term_text()
            else:
                coeff_text = f"({c.term_text()})"
            factors = []
            if coeff_text != "1" or (i == 0 and j == 0):
                factors.append(coeff_text)
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            body = "*".join(factors)
            if index == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def to_json(self) -> List[Dict[str, object]]:
        """Term-list form [{i, j, coeff}], coefficients in scalar text form."""
        records = []
        for (i, j), c in self.items():
            coeff = c.to_text() if c.conductor > 1 else c.term_text()
            records.append({'i': i, 'j': j, 'coeff': coeff})
        return records

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QPoly({self.to_text()!r}, spec={self.spec})"


def multiply(f: QPoly, g: QPoly, spec: QSpec) -> QPoly:
    """
    Normal-form product using (x^i y^j)(x^k y^l) = q^(jk) x^(i+k) y^(j+l).

    Args:
        f: left factor
        g: right factor
        spec: specification of q

    Returns:
        The product in normal form
    """
    if f.spec != spec or g.spec != spec:
        raise DomainError("operands must share the q specification")
    q_powers: Dict[int, Scalar] = {}
    product: Dict[Monomial, Scalar] = {}
    for (i, j), c1 in f.items():
        for (k, l), c2 in g.items():
            twist = j * k
            if twist not in q_powers:
                q_powers[twist] = Scalar.q(spec, twist)
            c = c1 * c2 * q_powers[twist]
            key = (i + k, j + l)
            product[key] = product[key] + c if key in product else c
    return QPoly(spec, product)


def commutator(w: QPoly, u: QPoly, spec: QSpec) -> QPoly:
    """Return wu − uw."""
    return multiply(w, u, spec) - multiply(u, w, spec)


def relation_residual(dx: QPoly, dy: QPoly, spec: QSpec) -> QPoly:
    """
    Residual of the defining relation under the candidate images.

    Returns:
        δ(y)x + yδ(x) − q(δ(x)y + xδ(y)); zero iff the images define a derivation
    """
    x = QPoly.x(spec)
    y = QPoly.y(spec)
    left = multiply(dy, x, spec) + multiply(y, dx, spec)
    right = multiply(dx, y, spec) + multiply(x, dy, spec)
    return left - right.scale(Scalar.q(spec))


@dataclass(frozen=True)
class InnerDecomposition:
    """δ = ad_w + a·D_x + b·D_y with scalar a, b."""
    w: QPoly
    a: Scalar
    b: Scalar


@dataclass(frozen=True, eq=False)
class Derivation:
    """
    A derivation of k_q[x, y], given by its images on the generators.
    """
    dx: QPoly
    dy: QPoly
    provenance: Optional[InnerDecomposition] = None

    @property
    def spec(self) -> QSpec:
        return self.dx.spec

    def same_images(self, other: 'Derivation') -> bool:
        return self.dx == other.dx and self.dy == other.dy


def make_derivation(w: QPoly, a: Coefficient, b: Coefficient, spec: QSpec) -> Derivation:
    """
    Build δ = ad_w + a·D_x + b·D_y.

    Args:
        w: inner part
        a: scalar coefficient of D_x = x∂_x
        b: scalar coefficient of D_y = y∂_y
        spec: specification of q

    Returns:
        Derivation with provenance recorded
    """
    a = _to_scalar(a, spec)
    b = _to_scalar(b, spec)
    x = QPoly.x(spec)
    y = QPoly.y(spec)
    dx = commutator(w, x, spec) + x.scale(a)
    dy = commutator(w, y, spec) + y.scale(b)
    residual = relation_residual(dx, dy, spec)
    if not residual.is_zero():
        raise InternalConsistencyError(f"ad_w + aD_x + bD_y failed the defining relation: {residual}")
    return Derivation(dx, dy, InnerDecomposition(w, a, b))


def make_derivation_from_images(dx: QPoly, dy: QPoly, spec: QSpec) -> Derivation:
    """
    Build a derivation from arbitrary generator images.

    Raises:
        NotADerivation: if δ(y)x + yδ(x) ≠ q(δ(x)y + xδ(y)); carries the residual
    """
    if dx.spec != spec or dy.spec != spec:
        raise DomainError("images must share the q specification")
    residual = relation_residual(dx, dy, spec)
    if not residual.is_zero():
        raise NotADerivation(
            f"images δ(x) = {dx}, δ(y) = {dy} violate yx = qxy; residual {residual}",
            residual=residual
        )
    return Derivation(dx, dy)


def inner_derivation(w: QPoly) -> Derivation:
    """ad_w."""
    return make_derivation(w, 0, 0, w.spec)


def apply_derivation(delta: Derivation, f: QPoly) -> QPoly:
    """
    Extend δ from the generator images to f by linearity and the Leibniz rule.

    Each normal-form monomial x^i y^j is treated as the word x…x y…y.
    """
    spec = delta.spec
    x = QPoly.x(spec)
    y = QPoly.y(spec)
    result = QPoly.zero(spec)
    for (i, j), c in f.items():
        total = QPoly.zero(spec)
        for t in range(i):
            total = total + multiply(multiply(x ** t, delta.dx, spec), QPoly.monomial(i - 1 - t, j, spec), spec)
        prefix = QPoly.monomial(i, 0, spec)
        for t in range(j):
            total = total + multiply(multiply(prefix * y ** t, delta.dy, spec), y ** (j - 1 - t), spec)
        result = result + total.scale(c)
    return result


@dataclass(frozen=True, eq=False)
class DiagonalAutomorphism:
    """ρ(x) = µ1·x, ρ(y) = µ2·y with µ1, µ2 units."""
    mu1: Scalar
    mu2: Scalar

    def __post_init__(self):
        for mu in (self.mu1, self.mu2):
            if mu.is_zero():
                raise DomainError("diagonal automorphism entries must be units")

    @property
    def spec(self) -> QSpec:
        return self.mu1.spec

    @classmethod
    def identity(cls, spec: QSpec) -> 'DiagonalAutomorphism':
        one = Scalar.rational(1, spec)
        return cls(one, one)

    @classmethod
    def from_torsion_point(cls, point: TorsionPoint, spec: QSpec) -> 'DiagonalAutomorphism':
        """Realize (e(u), e(v)) with exact root-of-unity scalars."""
        return cls(Scalar.root_of_unity(point.u, spec), Scalar.root_of_unity(point.v, spec))

    def apply(self, f: QPoly) -> QPoly:
        """ρ(x^i y^j) = µ1^i µ2^j x^i y^j."""
        return QPoly(f.spec, {(i, j): c * self.mu1 ** i * self.mu2 ** j for (i, j), c in f.items()})

    def inverse(self) -> 'DiagonalAutomorphism':
        return DiagonalAutomorphism(self.mu1.inverse(), self.mu2.inverse())


def commutes(rho: DiagonalAutomorphism, delta: Derivation, spec: QSpec) -> bool:
    """
    Test ρδ = δρ on both generators.

    Returns:
        True iff ρ(δ(x)) = µ1·δ(x) and ρ(δ(y)) = µ2·δ(y)
    """
    if rho.spec != spec or delta.spec != spec:
        raise DomainError("automorphism and derivation must share the q specification")
    residual_x = rho.apply(delta.dx) - delta.dx.scale(rho.mu1)
    if not residual_x.is_zero():
        return False
    residual_y = rho.apply(delta.dy) - delta.dy.scale(rho.mu2)
    return residual_y.is_zero()


def conjugate(rho: DiagonalAutomorphism, delta: Derivation) -> Derivation:
    """
    The derivation ρδρ⁻¹.

    On generators: x ↦ µ1⁻¹·ρ(δ(x)) and y ↦ µ2⁻¹·ρ(δ(y)).
    """
    inverse = rho.inverse()
    dx = rho.apply(apply_derivation(delta, inverse.apply(QPoly.x(delta.spec))))
    dy = rho.apply(apply_derivation(delta, inverse.apply(QPoly.y(delta.spec))))
    return make_derivation_from_images(dx, dy, delta.spec)
