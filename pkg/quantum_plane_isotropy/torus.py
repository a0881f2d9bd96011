"""
Character systems µ1^m µ2^n = 1 on the 2-torus.

Solutions are torsion points of (Q/Z)^2. Provides the common-factor criterion,
Smith normal form structure theory, the closed form for two equations, and a
brute-force enumeration oracle.
"""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import BadInput, DegenerateSystem, InternalConsistencyError
from .models import (Character, Classification, GroupReport, SmithForm,
                     TorsionPoint, TwoEquationStructure)

logger = logging.getLogger(__name__)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclidean algorithm.

    Returns:
        (g, m, n) with a·m + b·n = g = gcd(a, b) ≥ 0
    """
    if a == 0:
        return (abs(b), 0, 1 if b >= 0 else -1)
    g, y, x = extended_gcd(b % a, a)
    return g, x - (b // a) * y, y


def canonical_invariants(n1: int, n2: int) -> Tuple[int, int]:
    """Invariant-factor form (d1, d2), d2 | d1, of Z_n1 + Z_n2."""
    g = gcd(n1, n2)
    if g == 0:
        return (0, 0)
    return (n1 // g * n2, g)


def normalize_characters(chars: Iterable[Character]) -> List[Character]:
    """Drop trivial characters, sign-normalize, deduplicate and sort."""
    return sorted({c.normalized() for c in chars if not c.is_trivial})


def char_eval(c: Character, p: TorsionPoint) -> bool:
    """True iff m·u + n·v is an integer, i.e. µ1^m µ2^n = 1 at p."""
    return (c.m * p.u + c.n * p.v).denominator == 1


def minors_all_zero(chars: Sequence[Character]) -> bool:
    """
    True iff every 2×2 minor m_i n_j − m_j n_i of the exponent rows vanishes.

    Raises:
        BadInput: if chars is empty
    """
    if not chars:
        raise BadInput("character list cannot be empty")
    return all(
        chars[i].m * chars[j].n - chars[j].m * chars[i].n == 0
        for i in range(len(chars))
        for j in range(i + 1, len(chars))
    )


def common_binomial_factor(chars: Sequence[Character]) -> Optional[Character]:
    """
    The common factor µ1^m µ2^n − 1 of a colinear system.

    Args:
        chars: nonempty, sign-normalized characters

    Returns:
        (gcd of the m_i, gcd of the n_i), with the sign of the family, or None
        when some minor is nonzero
    """
    if not minors_all_zero(chars):
        return None
    active = [c for c in chars if not c.is_trivial]
    if not active:
        return Character(0, 0)
    m = reduce(gcd, (c.m for c in active))
    n = reduce(gcd, (c.n for c in active))
    if active[0].n < 0:
        n = -n
    return Character(m, n)


def divisibility_cofactor(common: Character, c: Character) -> List[Tuple[int, int]]:
    """
    Exponents of the cofactor Σ_{l<b} µ1^(l·m) µ2^(l·n) with
    (µ1^m µ2^n − 1)·cofactor = µ1^m_i µ2^n_i − 1.

    Raises:
        BadInput: if common is trivial or c is not a positive multiple of it
    """
    if common.is_trivial:
        raise BadInput("the common factor must be nontrivial")
    b = c.m // common.m if common.m else c.n // common.n
    if b <= 0 or Character(b * common.m, b * common.n) != c:
        raise BadInput(f"{c} is not a positive multiple of {common}")
    return [(l * common.m, l * common.n) for l in range(b)]


def smith_normal_form(chars: Sequence[Character]) -> SmithForm:
    """
    Smith normal form of the character matrix (rows = characters).

    Pivots are chosen deterministically: smallest absolute nonzero entry,
    row-major on ties. Only the column transform V is tracked.

    Returns:
        SmithForm(rank, (s1, s2) with s1 | s2 padded by 0, V)
    """
    rows = [[c.m, c.n] for c in chars if not c.is_trivial]
    V = [[1, 0], [0, 1]]
    invariants: List[int] = []

    def swap_columns(i: int, j: int) -> None:
        for row in rows + V:
            row[i], row[j] = row[j], row[i]

    def add_column(target: int, source: int, factor: int) -> None:
        for row in rows + V:
            row[target] += factor * row[source]

    for t in range(2):
        pivot = None
        while True:
            entries = [
                (abs(rows[r][c]), r, c)
                for r in range(t, len(rows))
                for c in range(t, 2)
                if rows[r][c]
            ]
            if not entries:
                break
            _, pr, pc = min(entries)
            rows[t], rows[pr] = rows[pr], rows[t]
            if pc != t:
                swap_columns(t, pc)
            pivot = rows[t][t]
            clean = True
            for r in range(t + 1, len(rows)):
                factor = rows[r][t] // pivot
                if factor:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[t])]
                if rows[r][t]:
                    clean = False
            for c in range(t + 1, 2):
                factor = rows[t][c] // pivot
                if factor:
                    add_column(c, t, -factor)
                if rows[t][c]:
                    clean = False
            if not clean:
                continue
            stray = [r for r in range(t + 1, len(rows)) for c in range(t + 1, 2) if rows[r][c] % pivot]
            if stray:
                rows[t] = [a + b for a, b in zip(rows[t], rows[stray[0]])]
                continue
            invariants.append(abs(pivot))
            break
        if len(invariants) <= t:
            break

    rank = len(invariants)
    padded = tuple(invariants + [0] * (2 - rank))
    transform = (tuple(V[0]), tuple(V[1]))
    logger.debug("smith form of %s: rank %d, invariants %s, V %s", list(map(str, chars)), rank, padded, transform)
    return SmithForm(rank=rank, invariants=padded, transform=transform)


def _snf_generators(form: SmithForm) -> List[TorsionPoint]:
    """V·(e_i / s_i) for each nontrivial finite invariant."""
    V = form.transform
    points = []
    for i in range(form.rank):
        s = form.invariants[i]
        if s > 1:
            points.append(TorsionPoint(Fraction(V[0][i], s), Fraction(V[1][i], s)))
    return points


def solve_constraints(chars: Sequence[Character]) -> GroupReport:
    """
    Solve µ1^m_i µ2^n_i = 1 over the algebraic closure.

    Returns:
        FullTorus for an empty system, Infinite (torus rank 1, torsion Z_g,
        primitive character) for colinear systems, Finite with invariant
        factors and generators otherwise
    """
    active = normalize_characters(chars)
    if not active:
        return GroupReport(Classification.FULL_TORUS, torus_rank=2, torsion_invariants=(1, 1))

    form = smith_normal_form(active)
    generators = _snf_generators(form)
    if form.rank == 1:
        g = form.invariants[0]
        common = common_binomial_factor(active)
        if common is None:
            raise InternalConsistencyError(f"rank-1 system {active} has a nonzero minor")
        if gcd(common.m, common.n) != g:
            raise InternalConsistencyError(f"common factor {common} disagrees with smith invariant {g}")
        report = GroupReport(
            Classification.INFINITE,
            torus_rank=1,
            torsion_invariants=(g, 1),
            generators=generators,
            primitive_character=Character(common.m // g, common.n // g)
        )
    else:
        s1, s2 = form.invariants
        report = GroupReport(
            Classification.FINITE,
            torus_rank=0,
            torsion_invariants=(s2, s1),
            order=s1 * s2,
            generators=generators
        )

    for point in report.generators:
        failing = [c for c in active if not char_eval(c, point)]
        if failing:
            raise InternalConsistencyError(f"generator {point} violates {failing[0]}")
    return report


def brute_force_solutions(chars: Sequence[Character], bound: int) -> List[TorsionPoint]:
    """
    All (u/M, v/M), 0 ≤ u, v < M, satisfying every character.

    Raises:
        BadInput: if bound < 1
    """
    if bound < 1:
        raise BadInput(f"brute-force bound must be positive, got {bound}")
    rows = [(c.m % bound, c.n % bound) for c in chars]
    hits = []
    for u in range(bound):
        for v in range(bound):
            if all((m * u + n * v) % bound == 0 for m, n in rows):
                hits.append(TorsionPoint(Fraction(u, bound), Fraction(v, bound)))
    return hits


def enumerate_group(generators: Iterable[TorsionPoint], limit: int = 1_000_000) -> List[TorsionPoint]:
    """
    Closure of the generators under addition in (Q/Z)^2, sorted.

    Raises:
        BadInput: if the group exceeds limit elements
    """
    identity = TorsionPoint(Fraction(0), Fraction(0))
    gens = [g for g in generators if not g.is_identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for point in frontier:
            for g in gens:
                candidate = point + g
                if candidate not in seen:
                    seen.add(candidate)
                    nxt.append(candidate)
                    if len(seen) > limit:
                        raise BadInput(f"group exceeds {limit} elements")
        frontier = nxt
    return sorted(seen, key=TorsionPoint.sort_key)


def two_equation_structure(a: int, b: int, c: int, d: int) -> TwoEquationStructure:
    """
    Closed-form structure of {x^a y^b = 1, x^c y^d = 1}.

    With k = gcd(a, b, c, d), r = gcd(a/k, c/k), s = gcd(b/k, d/k) and
    p = (ad − bc)/(k²rs), the closed form is Z_krp + Z_ks and the generators
    z1, z2 follow the explicit construction from Bézout coefficients of
    a/(kr) and c/(kr). The group itself is Z_k + Z_(|ad−bc|/k); the closed
    form matches it exactly when gcd(p, s) = 1.

    Raises:
        BadInput: on negative exponents
        DegenerateSystem: if ad = bc
    """
    if min(a, b, c, d) < 0:
        raise BadInput(f"exponents must be nonnegative, got {(a, b, c, d)}")
    delta = a * d - b * c
    if delta == 0:
        raise DegenerateSystem(f"ad - bc = 0 for {(a, b, c, d)}: the curves share a component")

    k = reduce(gcd, (a, b, c, d))
    r = gcd(a // k, c // k)
    s = gcd(b // k, d // k)
    p = delta // (k * k * r * s)
    a1, c1 = a // (k * r), c // (k * r)
    b1, d1 = b // (k * s), d // (k * s)
    _, m, n = extended_gcd(a1, c1)
    l = -m * b1 - n * d1

    z1 = TorsionPoint(Fraction(1, k * r) + Fraction(s * l, k * r * p), Fraction(s, k * s * p))
    z2 = TorsionPoint(Fraction(r, k * r), Fraction(1, k * s))
    system = [Character(a, b), Character(c, d)]
    for z in (z1, z2):
        if not all(char_eval(ch, z) for ch in system):
            raise InternalConsistencyError(f"closed-form generator {z} does not solve {(a, b, c, d)}")

    order = abs(delta)
    closed_form = (k * r * abs(p), k * s)
    invariants = (order // k, k)
    closed_form_complete = len(enumerate_group([z1, z2])) == order
    if closed_form_complete:
        generators = [z1, z2]
    else:
        generators = [TorsionPoint(Fraction(d, delta), Fraction(-c, delta)),
                      TorsionPoint(Fraction(-b, delta), Fraction(a, delta))]
        logger.info("closed-form generators incomplete for %s; using adjugate columns", (a, b, c, d))

    if __debug__:
        form = smith_normal_form(system)
        snf_invariants = (form.invariants[1], form.invariants[0])
        if snf_invariants != invariants:
            raise InternalConsistencyError(
                f"closed form {invariants} disagrees with smith form {snf_invariants} for {(a, b, c, d)}"
            )

    return TwoEquationStructure(
        a=a, b=b, c=c, d=d, k=k, r=r, s=s, p=p,
        closed_form=closed_form,
        invariants=invariants,
        closed_form_isomorphic=canonical_invariants(*closed_form) == invariants,
        z1=z1,
        z2=z2,
        closed_form_generators_complete=closed_form_complete,
        generators=generators,
        order=order
    )
