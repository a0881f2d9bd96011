"""
Isotropy groups of derivations of the quantum plane.

From a derivation and a q specification to the subgroup of diagonal
automorphisms commuting with it; finiteness; which finite groups arise.
"""

import logging
from itertools import product
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from sympy import factorint

from .config import get_settings
from .errors import BadInput, InternalConsistencyError
from .models import (Character, Distinction, IsotropyPath, IsotropyResult,
                     RealizabilityStatus, RealizabilityVerdict)
from .qplane import (Coefficient, DiagonalAutomorphism, Derivation, QPoly, commutes,
                     inner_derivation, make_derivation, make_derivation_from_images)
from .scalar import QSpec, q_power_is_one
from .torus import canonical_invariants, normalize_characters, solve_constraints

logger = logging.getLogger(__name__)

InnerTriple = Tuple[QPoly, Coefficient, Coefficient]


def _is_central(i: int, j: int, spec: QSpec) -> bool:
    return q_power_is_one(i, spec) and q_power_is_one(j, spec)


def constraints_from_inner(w: QPoly, spec: QSpec) -> List[Character]:
    """
    Characters cut out by ad_w: one (i, j) per non-central monomial of w.

    Args:
        w: inner part of the derivation
        spec: specification of q

    Returns:
        Normalized characters; central monomials (q^i = q^j = 1) contribute none
    """
    return normalize_characters(
        Character(i, j) for (i, j) in w.support() if not _is_central(i, j, spec)
    )


def constraints_from_images(delta: Derivation) -> List[Character]:
    """
    Characters read off the images: (i−1, j) for x^i y^j in δ(x) and
    (i, j−1) for x^i y^j in δ(y).
    """
    chars = [Character(i - 1, j) for (i, j) in delta.dx.support()]
    chars += [Character(i, j - 1) for (i, j) in delta.dy.support()]
    return normalize_characters(chars)


def _verify_generators(result: IsotropyResult, delta: Derivation, spec: QSpec) -> None:
    for point in result.report.generators:
        rho = DiagonalAutomorphism.from_torsion_point(point, spec)
        if not commutes(rho, delta, spec):
            raise InternalConsistencyError(f"generator {point} does not commute with the derivation")
        logger.debug("generator %s commutes", point)


def isotropy_group(delta: Union[Derivation, InnerTriple], spec: QSpec) -> IsotropyResult:
    """
    Compute Aut_δ(A) inside the diagonal torus.

    Args:
        delta: a Derivation, or a (w, a, b) triple for ad_w + a·D_x + b·D_y
        spec: specification of q

    Returns:
        IsotropyResult; the InnerShortcut path is used when the derivation
        carries its inner decomposition, and then both paths must agree

    Raises:
        InternalConsistencyError: if the two paths disagree or a generator
            fails the commutation check
    """
    if isinstance(delta, tuple):
        w, a, b = delta
        delta = make_derivation(w, a, b, spec)
    if delta.spec != spec:
        raise BadInput(f"derivation lives under {delta.spec}, expected {spec}")

    from_images = constraints_from_images(delta)
    if delta.provenance is not None:
        constraints = constraints_from_inner(delta.provenance.w, spec)
        path = IsotropyPath.INNER_SHORTCUT
        if constraints != from_images:
            raise InternalConsistencyError(
                f"inner constraints {list(map(str, constraints))} disagree with "
                f"image constraints {list(map(str, from_images))}"
            )
    else:
        constraints = from_images
        path = IsotropyPath.GENERAL_IMAGES
    logger.debug("constraints via %s: %s", path.value, [str(c) for c in constraints])

    result = IsotropyResult(solve_constraints(constraints), constraints, path)
    logger.info("isotropy group (%s): %s", path.value, result.report.structure_text())
    if get_settings().verify_generators:
        _verify_generators(result, delta, spec)
    return result


def finiteness_check(w: QPoly, spec: QSpec) -> bool:
    """
    True iff two non-central support points (i, j), (r, s) of w have is − rj ≠ 0.
    """
    points = [(i, j) for (i, j) in w.support() if not _is_central(i, j, spec)]
    return any(
        i * s - r * j != 0
        for n, (i, j) in enumerate(points)
        for (r, s) in points[n + 1:]
    )


def coprime_lcm_split(r: int, s: int) -> Tuple[int, int]:
    """
    Split lcm(r, s) into coprime factors r' | r and s' | s.

    Each prime goes to the side holding its larger exponent; ties go to r'.

    Raises:
        BadInput: if r or s is not positive
    """
    if r < 1 or s < 1:
        raise BadInput(f"r and s must be positive, got {(r, s)}")
    r_exponents = factorint(r)
    s_exponents = factorint(s)
    r_part, s_part = 1, 1
    for p in set(r_exponents) | set(s_exponents):
        er, es = r_exponents.get(p, 0), s_exponents.get(p, 0)
        if er >= es:
            r_part *= p ** er
        else:
            s_part *= p ** es
    return r_part, s_part


def central_witness(n1: int, n2: int, spec: QSpec) -> Derivation:
    """
    The derivation x^n1·D_x + y^n2·D_y (δ(x) = x^(n1+1), δ(y) = y^(n2+1)).

    Well defined exactly when q^n1 = q^n2 = 1.

    Raises:
        NotADerivation: otherwise
    """
    return make_derivation_from_images(QPoly.monomial(n1 + 1, 0, spec), QPoly.monomial(0, n2 + 1, spec), spec)


def _search_binomial(n1: int, n2: int, spec: QSpec, bound: int) -> Optional[QPoly]:
    target = canonical_invariants(n1, n2)
    order = n1 * n2
    exponents = [(i, j) for i, j in product(range(bound + 1), repeat=2) if not _is_central(i, j, spec)]
    for n, (a, b) in enumerate(exponents):
        for (c, d) in exponents[n + 1:]:
            delta = a * d - b * c
            if abs(delta) != order:
                continue
            k = gcd(gcd(a, b), gcd(c, d))
            if (order // k, k) == target:
                return QPoly.monomial(a, b, spec) + QPoly.monomial(c, d, spec)
    return None


def realize_group(n1: int, n2: int, spec: QSpec, search_bound: int = 0) -> RealizabilityVerdict:
    """
    Decide whether Z_n1 + Z_n2 is the isotropy group of some derivation.

    Args:
        n1: first invariant
        n2: second invariant, dividing n1
        spec: specification of q
        search_bound: when positive, try binomial witnesses w with exponents up to
            this bound in the cases without a closed answer

    Returns:
        Realizable with witness x^n1 + y^n2 when q^n1 ≠ 1; NotRealizable when q
        has order p dividing n1 and n2 (for ad_w + a·D_x + b·D_y with scalar a, b;
        central_witness is attached); Unknown otherwise

    Raises:
        BadInput: if n1, n2 are not positive or n2 does not divide n1
    """
    if n1 < 1 or n2 < 1:
        raise BadInput(f"invariants must be positive, got {(n1, n2)}")
    if n1 % n2:
        raise BadInput(f"{n2} does not divide {n1}")

    if not q_power_is_one(n1, spec):
        w = QPoly.monomial(n1, 0, spec) + QPoly.monomial(0, n2, spec)
        report = isotropy_group(inner_derivation(w), spec).report
        if not report.is_finite or not group_matches(n1, n2, report.torsion_invariants):
            raise InternalConsistencyError(
                f"witness {w} gives {report.structure_text()}, expected Z{n1} + Z{n2}"
            )
        return RealizabilityVerdict(
            RealizabilityStatus.REALIZABLE,
            f"q^{n1} != 1, so ad_w with w = x^{n1} + y^{n2} has this isotropy group",
            witness=w,
            group=report
        )

    if spec.is_root_of_unity and n1 % spec.order == 0 and n2 % spec.order == 0:
        witness = central_witness(n1, n2, spec)
        report = isotropy_group(witness, spec).report
        if not group_matches(n1, n2, report.torsion_invariants):
            raise InternalConsistencyError(
                f"central witness gives {report.structure_text()}, expected Z{n1} + Z{n2}"
            )
        return RealizabilityVerdict(
            RealizabilityStatus.NOT_REALIZABLE,
            f"q has order {spec.order} dividing {n1} and {n2}: no ad_w + a*D_x + b*D_y with scalar a, b "
            f"realizes it (the central-coefficient derivation does)",
            central_witness=witness
        )

    if search_bound > 0:
        w = _search_binomial(n1, n2, spec, search_bound)
        if w is not None:
            report = isotropy_group(inner_derivation(w), spec).report
            if report.is_finite and group_matches(n1, n2, report.torsion_invariants):
                logger.info("binomial search found %s for Z%d + Z%d", w.to_text(), n1, n2)
                return RealizabilityVerdict(
                    RealizabilityStatus.REALIZABLE,
                    f"binomial search within exponent bound {search_bound}",
                    witness=w,
                    group=report
                )
    return RealizabilityVerdict(
        RealizabilityStatus.UNKNOWN,
        f"q^{n1} = 1 and the order of q does not divide both invariants; no closed answer"
    )


def _one_way_obstruction(first: QSpec, second: QSpec) -> Optional[int]:
    """Least n with q1^n ≠ 1 and q2^n = 1."""
    if not second.is_root_of_unity:
        return None
    if not first.is_root_of_unity or second.order % first.order:
        return second.order
    return None


def isomorphism_obstruction(first: QSpec, second: QSpec) -> Optional[int]:
    """
    Least n with q1^n ≠ 1 and q2^n = 1, else the same with the roles swapped.

    Returns:
        n, or None when both are transcendental or the orders are equal
    """
    n = _one_way_obstruction(first, second)
    return n if n is not None else _one_way_obstruction(second, first)


def distinguish(first: QSpec, second: QSpec) -> Distinction:
    """Obstruction n together with the verdicts for Z_n + Z_n under each q."""
    n = isomorphism_obstruction(first, second)
    if n is None:
        return Distinction(first, second, None)
    return Distinction(first, second, n, realize_group(n, n, first), realize_group(n, n, second))


def group_matches(n1: int, n2: int, invariants: Sequence[int]) -> bool:
    """True iff the invariant factors describe Z_n1 + Z_n2."""
    return tuple(invariants) == canonical_invariants(n1, n2)
