"""
Intersections of the binomial curves F: x^a y^b = 1 and G: x^c y^d = 1.

Multiplicities at the two points at infinity, affine points and the Bezout
ledger (a+b)(c+d) = |ad − bc| + m(0:1:0) + m(1:0:0).
"""

import logging
from math import gcd
from typing import List, Tuple

from sympy import Poly, Symbol

from .errors import BadInput, DegenerateSystem, InternalConsistencyError
from .models import (BezoutLedger, BranchDecomposition, Character, CurvePair,
                     IntersectionReport, TorsionPoint)
from .scalar import QSpec, Scalar
from .torus import enumerate_group, solve_constraints

logger = logging.getLogger(__name__)

POINTS_AT_INFINITY = ("010", "100")


def _check_positive(a: int, b: int, c: int, d: int) -> None:
    if min(a, b, c, d) < 1:
        raise BadInput(f"curve exponents must be positive, got {(a, b, c, d)}")


def _check_nondegenerate(a: int, b: int, c: int, d: int) -> None:
    if a * d == b * c:
        raise DegenerateSystem(f"ad - bc = 0 for {(a, b, c, d)}: the curves share a component")


def _check_coprime(a: int, b: int, c: int, d: int) -> None:
    if gcd(a, b) != 1 or gcd(c, d) != 1:
        raise BadInput(f"{(a, b, c, d)} needs gcd(a, b) = gcd(c, d) = 1; use the general form")


def mult_at_infinity_coprime(a: int, b: int, c: int, d: int) -> Tuple[int, int]:
    """
    Intersection multiplicities of irreducible F, G at (0:1:0) and (1:0:0).

    Returns:
        (ac + min(bc, ad), bd + min(ad, bc))

    Raises:
        BadInput: if gcd(a, b) or gcd(c, d) is not 1
        DegenerateSystem: if ad = bc
    """
    _check_positive(a, b, c, d)
    _check_coprime(a, b, c, d)
    _check_nondegenerate(a, b, c, d)
    low = min(b * c, a * d)
    return a * c + low, b * d + low


def puiseux_order_oracle(a: int, b: int, c: int, d: int, at_point: str = "010") -> int:
    """
    Order in t of G pulled back along the branch of F through a point at infinity.

    At (0:1:0) the branch is (x, z) = (t^(a+b), t^a) in the chart y = 1; at
    (1:0:0) it is (y, z) = (t^(a+b), t^b) in the chart x = 1.

    Raises:
        BadInput: on non-coprime exponents or an unknown point
        DegenerateSystem: if the pullback vanishes identically
    """
    _check_positive(a, b, c, d)
    _check_coprime(a, b, c, d)
    if at_point not in POINTS_AT_INFINITY:
        raise BadInput(f"at_point must be one of {POINTS_AT_INFINITY}, got {at_point!r}")
    t = Symbol('t')
    if at_point == "010":
        pullback = (t ** (a + b)) ** c - (t ** a) ** (c + d)
    else:
        pullback = (t ** (a + b)) ** d - (t ** b) ** (c + d)
    poly = Poly(pullback, t)
    if poly.is_zero:
        raise DegenerateSystem(f"G contains the branch of F for {(a, b, c, d)}")
    return min(m[0] for m in poly.monoms())


def branch_decomposition(a: int, b: int, c: int, d: int) -> BranchDecomposition:
    """
    Split F and G into their branches over the coprime exponents.

    Raises:
        DegenerateSystem: if ad = bc
    """
    _check_positive(a, b, c, d)
    _check_nondegenerate(a, b, c, d)
    d1, d2 = gcd(a, b), gcd(c, d)
    primed = (a // d1, b // d1, c // d2, d // d2)
    return BranchDecomposition(d1, d2, primed, mult_at_infinity_coprime(*primed))


def mult_at_infinity_general(a: int, b: int, c: int, d: int) -> Tuple[int, int]:
    """
    Multiplicities at (0:1:0) and (1:0:0) for arbitrary positive exponents:
    d1·d2 times the coprime value of the primed exponents.

    Raises:
        DegenerateSystem: if ad = bc
    """
    branches = branch_decomposition(a, b, c, d)
    scale = branches.d1 * branches.d2
    m010, m100 = branches.per_branch
    return scale * m010, scale * m100


def bezout_ledger(a: int, b: int, c: int, d: int) -> BezoutLedger:
    """
    Assemble the Bezout count for F and G.

    Raises:
        DegenerateSystem: if ad = bc
        InternalConsistencyError: if the ledger does not balance
    """
    m010, m100 = mult_at_infinity_general(a, b, c, d)
    ledger = BezoutLedger(
        total=(a + b) * (c + d),
        affine_count=abs(a * d - b * c),
        mult_at_010=m010,
        mult_at_100=m100
    )
    if not ledger.balanced:
        raise InternalConsistencyError(f"bezout ledger does not balance for {(a, b, c, d)}: {ledger.to_dict()}")
    return ledger


def _transversal(point: TorsionPoint, a: int, b: int, c: int, d: int) -> bool:
    spec = QSpec.transcendental()
    x0 = Scalar.root_of_unity(point.u, spec)
    y0 = Scalar.root_of_unity(point.v, spec)
    on_f = x0 ** a * y0 ** b == 1
    on_g = x0 ** c * y0 ** d == 1
    jacobian = (x0 ** (a + c - 1) * y0 ** (b + d - 1)) * (a * d - b * c)
    return on_f and on_g and not jacobian.is_zero()


def affine_intersection_points(a: int, b: int, c: int, d: int) -> List[TorsionPoint]:
    """
    All affine points of F ∩ G, each checked to lie on both curves and to be
    a transversal crossing in exact cyclotomic arithmetic.

    Raises:
        BadInput: on negative exponents
        DegenerateSystem: if ad = bc
        InternalConsistencyError: if the count differs from |ad − bc| or a
            point fails the exact check
    """
    if min(a, b, c, d) < 0:
        raise BadInput(f"curve exponents must be nonnegative, got {(a, b, c, d)}")
    _check_nondegenerate(a, b, c, d)
    report = solve_constraints([Character(a, b), Character(c, d)])
    points = enumerate_group(report.generators)
    if len(points) != abs(a * d - b * c):
        raise InternalConsistencyError(f"found {len(points)} affine points for {(a, b, c, d)}, expected {abs(a * d - b * c)}")
    for point in points:
        if not _transversal(point, a, b, c, d):
            raise InternalConsistencyError(f"{point} is not a transversal intersection of {(a, b, c, d)}")
    return points


def intersection_report(a: int, b: int, c: int, d: int) -> IntersectionReport:
    """Ledger, affine points, branch split and group structure for one curve pair."""
    pair = CurvePair(a, b, c, d)
    ledger = bezout_ledger(a, b, c, d)
    points = affine_intersection_points(a, b, c, d)
    branches = branch_decomposition(a, b, c, d)
    group = solve_constraints([Character(a, b), Character(c, d)])
    logger.info("intersection %s: %d affine points, %d at (0:1:0), %d at (1:0:0)",
                (a, b, c, d), ledger.affine_count, ledger.mult_at_010, ledger.mult_at_100)
    return IntersectionReport(pair, ledger, points, branches, group)
