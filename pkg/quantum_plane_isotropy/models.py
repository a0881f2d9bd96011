"""
Data models shared across modules.

Provides the records for torus characters, torsion points, group reports,
isotropy results, realizability verdicts and intersection ledgers.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from .errors import ParseError

# Derivation classes a realizability verdict can refer to.
SCALAR_COEFFICIENTS = "scalar_coefficients"
CENTRAL_COEFFICIENTS = "central_coefficients"


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True, order=True)
class Character:
    """
    The torus equation µ1^m µ2^n = 1.

    A character and its negation have the same kernel; `normalized()` picks
    the representative whose first nonzero entry is positive.
    """
    m: int
    n: int

    @property
    def is_trivial(self) -> bool:
        return self.m == 0 and self.n == 0

    def normalized(self) -> 'Character':
        if self.m < 0 or (self.m == 0 and self.n < 0):
            return Character(-self.m, -self.n)
        return self

    def to_list(self) -> List[int]:
        return [self.m, self.n]

    @classmethod
    def from_list(cls, data: Any) -> 'Character':
        """
        Create a Character from a [m, n] pair.

        Raises:
            ParseError: if data is not a pair of integers
        """
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ParseError(f"a character must be a pair [m, n], got {data!r}")
        m, n = data
        if isinstance(m, bool) or isinstance(n, bool) or not isinstance(m, int) or not isinstance(n, int):
            raise ParseError(f"character exponents must be integers, got {data!r}")
        return cls(m, n)

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


@dataclass(frozen=True)
class TorsionPoint:
    """
    A pair of roots of unity (e(u), e(v)), stored as rationals reduced into [0, 1).
    """
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'u', Fraction(self.u) % 1)
        object.__setattr__(self, 'v', Fraction(self.v) % 1)

    @property
    def order(self) -> int:
        return _lcm(self.u.denominator, self.v.denominator)

    @property
    def is_identity(self) -> bool:
        return self.u == 0 and self.v == 0

    def __add__(self, other: 'TorsionPoint') -> 'TorsionPoint':
        return TorsionPoint(self.u + other.u, self.v + other.v)

    def __neg__(self) -> 'TorsionPoint':
        return TorsionPoint(-self.u, -self.v)

    def __mul__(self, k: int) -> 'TorsionPoint':
        return TorsionPoint(self.u * k, self.v * k)

    __rmul__ = __mul__

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.u, self.v)

    def to_dict(self) -> Dict[str, int]:
        """Common-denominator form {num1, num2, den}."""
        den = self.order
        return {
            'num1': int(self.u * den),
            'num2': int(self.v * den),
            'den': den
        }

    @classmethod
    def from_dict(cls, data: Dict[str, int]) -> 'TorsionPoint':
        den = data['den']
        return cls(Fraction(data['num1'], den), Fraction(data['num2'], den))

    def __str__(self) -> str:
        return f"({self.u}, {self.v})"


class Classification(Enum):
    """Shape of an isotropy group inside the torus."""
    FULL_TORUS = "full_torus"
    INFINITE = "infinite"
    FINITE = "finite"


@dataclass
class GroupReport:
    """
    Classification of the solution group of a character system.

    torsion_invariants are (d1, d2) with d2 | d1. For an infinite group they
    describe the torsion factor Z_g as (g, 1).
    """
    classification: Classification
    torus_rank: int
    torsion_invariants: Tuple[int, int]
    order: Optional[int] = None
    generators: List[TorsionPoint] = field(default_factory=list)
    primitive_character: Optional[Character] = None

    @property
    def is_finite(self) -> bool:
        return self.classification is Classification.FINITE

    def structure_text(self) -> str:
        """Human-readable isomorphism type, e.g. 'Z4', 'Z2 + Z2', 'Z3 x k*'."""
        d1, d2 = self.torsion_invariants
        torsion = [f"Z{d}" for d in (d1, d2) if d > 1]
        if self.classification is Classification.FULL_TORUS:
            return "k* x k*"
        if self.classification is Classification.INFINITE:
            return " x ".join(torsion + ["k*"])
        return " + ".join(torsion) if torsion else "trivial"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'classification': self.classification.value,
            'torus_rank': self.torus_rank,
            'invariants': list(self.torsion_invariants),
            'order': self.order,
            'generators': [g.to_dict() for g in self.generators],
            'primitive_character': self.primitive_character.to_list() if self.primitive_character else None
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GroupReport':
        primitive = data.get('primitive_character')
        return cls(
            classification=Classification(data['classification']),
            torus_rank=data['torus_rank'],
            torsion_invariants=tuple(data['invariants']),
            order=data.get('order'),
            generators=[TorsionPoint.from_dict(g) for g in data.get('generators', [])],
            primitive_character=Character.from_list(primitive) if primitive is not None else None
        )


@dataclass(frozen=True)
class SmithForm:
    """
    Smith normal form of a character matrix (rows = characters, 2 columns).

    invariants are (s1, s2) with s1 | s2, padded with 0 beyond the rank.
    transform is the unimodular 2×2 column transform V with U·A·V diagonal.
    """
    rank: int
    invariants: Tuple[int, int]
    transform: Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass
class TwoEquationStructure:
    """
    Structure of {x^a y^b = 1, x^c y^d = 1}.

    closed_form is the pair (k·r·|p|, k·s); invariants is the invariant-factor
    form (|ad − bc| / k, k), which is what the group actually is.
    """
    a: int
    b: int
    c: int
    d: int
    k: int
    r: int
    s: int
    p: int
    closed_form: Tuple[int, int]
    invariants: Tuple[int, int]
    closed_form_isomorphic: bool
    z1: TorsionPoint
    z2: TorsionPoint
    closed_form_generators_complete: bool
    generators: List[TorsionPoint]
    order: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'exponents': [self.a, self.b, self.c, self.d],
            'k': self.k,
            'r': self.r,
            's': self.s,
            'p': self.p,
            'closed_form': list(self.closed_form),
            'invariants': list(self.invariants),
            'closed_form_isomorphic': self.closed_form_isomorphic,
            'z1': self.z1.to_dict(),
            'z2': self.z2.to_dict(),
            'closed_form_generators_complete': self.closed_form_generators_complete,
            'generators': [g.to_dict() for g in self.generators],
            'order': self.order
        }


class IsotropyPath(Enum):
    """Which route produced the constraint set."""
    INNER_SHORTCUT = "inner_shortcut"
    GENERAL_IMAGES = "general_images"


@dataclass
class IsotropyResult:
    """Aut_δ(A) together with the constraints it was solved from."""
    report: GroupReport
    constraints: List[Character]
    path: IsotropyPath

    def to_dict(self) -> Dict[str, Any]:
        return {
            'path': self.path.value,
            'constraints': [c.to_list() for c in self.constraints],
            'report': self.report.to_dict()
        }


class RealizabilityStatus(Enum):
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not_realizable"
    UNKNOWN = "unknown"


@dataclass
class RealizabilityVerdict:
    """
    Whether Z_n1 + Z_n2 is the isotropy group of some derivation.

    status is decided over scope, the derivations ad_w + a·D_x + b·D_y with
    scalar a, b. witness is the inner polynomial w (δ = ad_w) when one is
    known; central_witness lies outside scope: a derivation with central
    (nonscalar) coefficients that realizes the group anyway.
    """
    status: RealizabilityStatus
    reason: str
    witness: Optional[Any] = None
    group: Optional[GroupReport] = None
    central_witness: Optional[Any] = None
    scope: str = SCALAR_COEFFICIENTS

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'status': self.status.value,
            'scope': self.scope,
            'reason': self.reason,
            'witness': self.witness.to_text() if self.witness is not None else None,
            'group': self.group.to_dict() if self.group is not None else None
        }
        if self.central_witness is not None:
            data['central_witness'] = {
                'scope': CENTRAL_COEFFICIENTS,
                'dx': self.central_witness.dx.to_text(),
                'dy': self.central_witness.dy.to_text()
            }
        return data


@dataclass(frozen=True)
class CurvePair:
    """The binomial curves F: x^a y^b = 1 and G: x^c y^d = 1."""
    a: int
    b: int
    c: int
    d: int

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def degrees(self) -> Tuple[int, int]:
        return (self.a + self.b, self.c + self.d)


@dataclass(frozen=True)
class BezoutLedger:
    """
    Bezout count for a curve pair: total = affine_count + mult_at_010 + mult_at_100.
    """
    total: int
    affine_count: int
    mult_at_010: int
    mult_at_100: int

    @property
    def balanced(self) -> bool:
        return self.total == self.affine_count + self.mult_at_010 + self.mult_at_100

    def to_dict(self) -> Dict[str, int]:
        return {
            'total': self.total,
            'affine': self.affine_count,
            'at010': self.mult_at_010,
            'at100': self.mult_at_100
        }

    @classmethod
    def from_dict(cls, data: Dict[str, int]) -> 'BezoutLedger':
        return cls(
            total=data['total'],
            affine_count=data['affine'],
            mult_at_010=data['at010'],
            mult_at_100=data['at100']
        )


@dataclass
class Distinction:
    """
    A group Z_n + Z_n that is an isotropy group over one q and not over the other.

    n is None when no such n exists (both q transcendental, or equal orders).
    """
    first: Any
    second: Any
    n: Optional[int]
    first_verdict: Optional[RealizabilityVerdict] = None
    second_verdict: Optional[RealizabilityVerdict] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'q1': self.first.to_dict(),
            'q2': self.second.to_dict(),
            'n': self.n,
            'q1_verdict': self.first_verdict.to_dict() if self.first_verdict else None,
            'q2_verdict': self.second_verdict.to_dict() if self.second_verdict else None
        }


@dataclass(frozen=True)
class BranchDecomposition:
    """
    F splits into d1 branches and G into d2 branches of the coprime curves
    x^a' y^b' = ζ, x^c' y^d' = ζ'; per_branch holds the multiplicities
    (at (0:1:0), at (1:0:0)) of one branch pair.
    """
    d1: int
    d2: int
    primed: Tuple[int, int, int, int]
    per_branch: Tuple[int, int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'd1': self.d1,
            'd2': self.d2,
            'primed': list(self.primed),
            'per_branch': {'at010': self.per_branch[0], 'at100': self.per_branch[1]}
        }


@dataclass
class IntersectionReport:
    """Everything the intersect command reports for a curve pair."""
    pair: CurvePair
    ledger: BezoutLedger
    points: List[TorsionPoint]
    branches: BranchDecomposition
    group: GroupReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degrees': list(self.pair.degrees),
            'ledger': self.ledger.to_dict(),
            'points': [p.to_dict() for p in self.points],
            'branch_decomposition': self.branches.to_dict(),
            'group': self.group.to_dict()
        }


@dataclass
class CheckRow:
    """One line of the selfcheck table."""
    criterion: int
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'criterion': self.criterion,
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'detail': self.detail
        }
