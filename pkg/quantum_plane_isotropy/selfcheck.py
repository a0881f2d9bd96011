"""
Built-in verification sweeps.

Each check reproduces one acceptance criterion and reports a CheckRow with the
number of cases examined and the first few failures.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from .config import configure, get_settings
from .errors import NotADerivation, QPIError
from .geometry import bezout_ledger, branch_decomposition, mult_at_infinity_coprime
from .isotropy import (constraints_from_images, coprime_lcm_split, isotropy_group,
                       realize_group)
from .models import (CheckRow, Classification, Character, RealizabilityStatus,
                     TorsionPoint)
from .oracles import free_algebra_product
from .qplane import (DiagonalAutomorphism, QPoly, apply_derivation, commutes,
                     inner_derivation, make_derivation, make_derivation_from_images,
                     multiply, relation_residual)
from .scalar import QSpec, Scalar, lcm, q_power_is_one
from .torus import (brute_force_solutions, canonical_invariants, enumerate_group,
                    smith_normal_form, solve_constraints, two_equation_structure)

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 8
REALIZATION_BOUND = 12
SWEEP_SPECS = (
    QSpec.transcendental(),
    QSpec.root_of_unity(3),
    QSpec.root_of_unity(4),
    QSpec.root_of_unity(5),
)
MAX_FAILURES_SHOWN = 3
ORACLE_DEGREE = 6


@dataclass
class SweepOptions:
    """
    Attributes:
        bound: exponent bound for the quadruple sweep
        samples: random instances per sampled check (None keeps each check's default)
        workers: processes for the quadruple sweep
        seed: base seed; each check draws from its own generator
    """
    bound: int = DEFAULT_BOUND
    samples: Optional[int] = None
    workers: int = 1
    seed: int = 0

    def count(self, default: int) -> int:
        return default if self.samples is None else self.samples


class CheckResult(NamedTuple):
    """Cases examined, failure messages and an optional note for the row detail."""
    checked: int
    failures: List[str]
    note: str = ""


Quadruple = Tuple[int, int, int, int]


def random_poly(rng: random.Random, spec: QSpec, max_exponent: int = 4, max_terms: int = 3,
                twisted: bool = False) -> QPoly:
    """
    A random nonzero polynomial with small integer coefficients.

    Args:
        twisted: multiply each coefficient by q^k, k in {-1, 0, 1}
    """
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randint(0, max_exponent), rng.randint(0, max_exponent))
        coeff = Scalar.rational(rng.choice([-3, -2, -1, 1, 2, 3]), spec)
        if twisted:
            coeff = coeff * Scalar.q(spec, rng.randint(-1, 1))
        terms[key] = coeff
    return QPoly(spec, terms)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def check_worked_example(options: SweepOptions, rng: random.Random) -> CheckResult:
    """ad_w for w = x^3 y + x^2 y^2 has isotropy Z4; its curves meet as 16 = 4 + 8 + 4."""
    failures = []
    spec = QSpec.transcendental()
    w = QPoly.monomial(3, 1, spec) + QPoly.monomial(2, 2, spec)
    report = isotropy_group(inner_derivation(w), spec).report
    if not (report.is_finite and report.order == 4 and report.torsion_invariants == (4, 1)):
        failures.append(f"isotropy of {w} is {report.structure_text()}")
    ledger = bezout_ledger(3, 1, 2, 2).to_dict()
    if ledger != {'total': 16, 'affine': 4, 'at010': 8, 'at100': 4}:
        failures.append(f"ledger for (3,1,2,2) is {ledger}")
    return 2, failures


def check_curve_ledgers(options: SweepOptions, rng: random.Random) -> CheckResult:
    """Ledger {72, 6, 18, 48} for (2,4,3,9) and branch multiplicities (3, 8)."""
    failures = []
    ledger = bezout_ledger(2, 4, 3, 9).to_dict()
    if ledger != {'total': 72, 'affine': 6, 'at010': 18, 'at100': 48}:
        failures.append(f"ledger for (2,4,3,9) is {ledger}")
    if mult_at_infinity_coprime(1, 2, 1, 3) != (3, 8):
        failures.append(f"branch multiplicities for (1,2,1,3) are {mult_at_infinity_coprime(1, 2, 1, 3)}")
    if branch_decomposition(2, 4, 3, 9).per_branch != (3, 8):
        failures.append("branch decomposition of (2,4,3,9) disagrees with (1,2,1,3)")
    return 3, failures


def check_inner_table(options: SweepOptions, rng: random.Random) -> CheckResult:
    """Isotropy of ad_w for w = x, x^m, x^m + y^n, single monomials and constants."""
    spec = QSpec.transcendental()
    failures = []
    checked = 0

    def expect(w: QPoly, classification: Classification, invariants: Tuple[int, int]) -> None:
        nonlocal checked
        checked += 1
        report = isotropy_group(inner_derivation(w), spec).report
        if report.classification is not classification or report.torsion_invariants != invariants:
            failures.append(f"w = {w}: {report.structure_text()} ({report.classification.value})")

    for m in range(1, 11):
        expect(QPoly.monomial(m, 0, spec), Classification.INFINITE, (m, 1))
        for n in range(1, 11):
            expect(QPoly.monomial(m, 0, spec) + QPoly.monomial(0, n, spec), Classification.FINITE,
                   canonical_invariants(m, n))
    for i, j in product(range(6), repeat=2):
        if i or j:
            expect(QPoly.monomial(i, j, spec), Classification.INFINITE, (gcd(i, j), 1))
    expect(QPoly.constant(7, spec), Classification.FULL_TORUS, (1, 1))
    return checked, failures


def _check_quadruple(a: int, b: int, c: int, d: int) -> Tuple[Optional[str], bool]:
    """
    Compare the closed form, the Smith form and brute force on one quadruple.

    Returns:
        (problem or None, whether the closed form differs from the group)
    """
    quad = (a, b, c, d)
    order = abs(a * d - b * c)
    system = [Character(a, b), Character(c, d)]
    closed = two_equation_structure(a, b, c, d)
    form = smith_normal_form(system)
    smith = (form.invariants[1], form.invariants[0])
    hits = brute_force_solutions(system, order)
    exponent = max(point.order for point in hits)
    brute = (exponent, len(hits) // exponent)
    if not (closed.invariants == smith == brute and len(hits) == order):
        return f"{quad}: invariants {closed.invariants}, smith {smith}, brute force {brute} of {len(hits)}", False

    closed_canonical = canonical_invariants(*closed.closed_form)
    differs = closed_canonical != smith
    if differs != (gcd(closed.p, closed.s) != 1):
        return f"{quad}: closed form {closed.closed_form} vs smith {smith} with p = {closed.p}, s = {closed.s}", differs
    if closed.closed_form_isomorphic == differs:
        return f"{quad}: closed_form_isomorphic is {closed.closed_form_isomorphic}", differs
    if len(enumerate_group(closed.generators)) != order:
        return f"{quad}: generators do not span the group", differs
    if not bezout_ledger(a, b, c, d).balanced:
        return f"{quad}: bezout ledger unbalanced", differs
    return None, differs


def sweep_quadruples(first_exponents: Sequence[int], bound: int,
                     max_conductor: int) -> Tuple[int, List[str], List[Quadruple]]:
    """
    Closed form vs Smith form vs brute force, for every a in first_exponents.

    Returns:
        (cases checked, failures, quadruples whose closed form is not the group)
    """
    configure(max_conductor=max_conductor)
    checked = 0
    failures = []
    differing = []
    for a in first_exponents:
        for b, c, d in product(range(1, bound + 1), repeat=3):
            if a * d == b * c:
                continue
            checked += 1
            try:
                problem, differs = _check_quadruple(a, b, c, d)
            except QPIError as e:
                problem, differs = f"{(a, b, c, d)}: {e}", False
            if problem:
                failures.append(problem)
            if differs:
                differing.append((a, b, c, d))
    return checked, failures, differing


def check_three_routes(options: SweepOptions, rng: random.Random) -> CheckResult:
    """
    All quadruples in [1, bound]^4 with ad ≠ bc.

    Smith form and brute force must agree with the group. The closed form
    Z_krp + Z_ks must agree exactly when gcd(p, s) = 1; the number of
    quadruples where it does not is reported in the row detail.
    """
    chunks = [[a] for a in range(1, options.bound + 1)]
    cap = get_settings().max_conductor
    if options.workers > 1:
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(sweep_quadruples, chunks, [options.bound] * len(chunks), [cap] * len(chunks)))
    else:
        results = [sweep_quadruples(chunk, options.bound, cap) for chunk in chunks]
    checked = sum(r[0] for r in results)
    failures = sorted(f for r in results for f in r[1])
    differing = sorted(q for r in results for q in r[2])
    note = f"closed form differs from the group on {len(differing)} quadruples (all with gcd(p, s) > 1)"
    if differing:
        note += f", first {differing[0]}"
    return CheckResult(checked, failures, note)


def check_realization(options: SweepOptions, rng: random.Random) -> CheckResult:
    """x^n1 + y^n2 realizes Z_n1 + Z_n2 whenever q^n1 ≠ 1."""
    failures = []
    checked = 0
    for spec in (QSpec.transcendental(), QSpec.root_of_unity(5), QSpec.root_of_unity(7)):
        for n1 in range(1, REALIZATION_BOUND + 1):
            if q_power_is_one(n1, spec):
                continue
            for n2 in range(1, n1 + 1):
                if n1 % n2:
                    continue
                checked += 1
                verdict = realize_group(n1, n2, spec)
                if verdict.status is not RealizabilityStatus.REALIZABLE or \
                        verdict.group.torsion_invariants != canonical_invariants(n1, n2):
                    failures.append(f"Z{n1} + Z{n2} under {spec}: {verdict.status.value}")
    return checked, failures


def check_root_obstruction(options: SweepOptions, rng: random.Random) -> CheckResult:
    """
    With q of order p, Z_pr + Z_ps is never the isotropy group of ad_w + a·D_x + b·D_y.

    A finite group contains Z_pr + Z_ps only if p divides its smaller invariant,
    so random derivations are checked against that.
    """
    failures = []
    checked = 0
    for p in (3, 4, 5):
        spec = QSpec.root_of_unity(p)
        for r, s in product(range(1, 4), repeat=2):
            if r % s:
                continue
            checked += 1
            verdict = realize_group(p * r, p * s, spec)
            if verdict.status is not RealizabilityStatus.NOT_REALIZABLE:
                failures.append(f"Z{p * r} + Z{p * s} under {spec}: {verdict.status.value}")
        for _ in range(options.count(500)):
            checked += 1
            w = random_poly(rng, spec, max_exponent=6, max_terms=4)
            delta = make_derivation(w, _random_rational(rng), _random_rational(rng), spec)
            report = solve_constraints(constraints_from_images(delta))
            if report.is_finite and report.torsion_invariants[1] % p == 0:
                failures.append(f"w = {w} under {spec} gives {report.structure_text()}")
    return checked, failures


def _non_member(rng: random.Random, members: set, exponent: int) -> TorsionPoint:
    grid = 2 * exponent
    candidates = [
        TorsionPoint(Fraction(u, grid), Fraction(v, grid))
        for u, v in product(range(grid), repeat=2)
    ]
    return rng.choice([p for p in candidates if p not in members])


def check_commutation(options: SweepOptions, rng: random.Random) -> CheckResult:
    """Generators commute with δ symbolically; a non-member does not."""
    failures = []
    found = 0
    target = options.count(100)
    attempts = 0
    while found < target and attempts < 20 * target:
        attempts += 1
        spec = SWEEP_SPECS[attempts % len(SWEEP_SPECS)]
        w = random_poly(rng, spec)
        delta = inner_derivation(w)
        report = isotropy_group(delta, spec).report
        if not report.is_finite:
            continue
        found += 1
        for point in report.generators:
            if not commutes(DiagonalAutomorphism.from_torsion_point(point, spec), delta, spec):
                failures.append(f"generator {point} of w = {w} under {spec} does not commute")
        members = set(enumerate_group(report.generators))
        outsider = _non_member(rng, members, report.torsion_invariants[0])
        if commutes(DiagonalAutomorphism.from_torsion_point(outsider, spec), delta, spec):
            failures.append(f"non-member {outsider} commutes with w = {w} under {spec}")
    if found < target:
        failures.append(f"only {found} of {target} random instances were finite")
    return found, failures


def check_algebra(options: SweepOptions, rng: random.Random) -> CheckResult:
    """Constructed derivations are well defined, dx = y is not, products match word rewriting."""
    failures = []
    checked = 0
    derivations = options.count(100)
    for n in range(derivations):
        checked += 1
        spec = SWEEP_SPECS[n % len(SWEEP_SPECS)]
        w = random_poly(rng, spec, twisted=True)
        delta = make_derivation(w, _random_rational(rng), _random_rational(rng), spec)
        if not relation_residual(delta.dx, delta.dy, spec).is_zero():
            failures.append(f"ad_w for w = {w} under {spec} is not well defined")
        f = random_poly(rng, spec, max_exponent=3, twisted=True)
        g = random_poly(rng, spec, max_exponent=3, twisted=True)
        lhs = apply_derivation(delta, multiply(f, g, spec))
        rhs = multiply(apply_derivation(delta, f), g, spec) + multiply(f, apply_derivation(delta, g), spec)
        if lhs != rhs:
            failures.append(f"Leibniz rule fails for w = {w}, f = {f}, g = {g}")

    checked += 1
    spec = QSpec.transcendental()
    try:
        make_derivation_from_images(QPoly.y(spec), QPoly.zero(spec), spec)
        failures.append("dx = y, dy = 0 was accepted as a derivation")
    except NotADerivation:
        pass

    pairs = 5 * derivations
    for n in range(pairs):
        checked += 1
        spec = SWEEP_SPECS[n % len(SWEEP_SPECS)]
        f = random_poly(rng, spec, max_exponent=ORACLE_DEGREE, twisted=True)
        g = random_poly(rng, spec, max_exponent=ORACLE_DEGREE, twisted=True)
        if multiply(f, g, spec) != free_algebra_product(f, g):
            failures.append(f"({f})*({g}) disagrees with word rewriting under {spec}")
    note = f"{derivations} Leibniz triples, {pairs} product pairs of degree <= {ORACLE_DEGREE}"
    return CheckResult(checked, failures, note)


def check_lcm_split(options: SweepOptions, rng: random.Random) -> CheckResult:
    """coprime_lcm_split postconditions and ord(ζ_r^(r/r')·ζ_s^(s/s')) = lcm(r, s)."""
    failures = []
    checked = 0
    for r, s in product(range(1, 51), repeat=2):
        checked += 1
        r_part, s_part = coprime_lcm_split(r, s)
        point_order = (Fraction(1, r_part) + Fraction(1, s_part)).denominator
        if gcd(r_part, s_part) != 1 or r_part * s_part != lcm(r, s) or r % r_part or s % s_part \
                or point_order != lcm(r, s):
            failures.append(f"({r}, {s}) -> ({r_part}, {s_part})")
    return checked, failures


CHECKS: List[Tuple[int, str, Callable[[SweepOptions, random.Random], CheckResult]]] = [
    (1, "worked example: isotropy Z4 and ledger 16 = 4 + 8 + 4", check_worked_example),
    (2, "ledger (2,4,3,9) and branch multiplicities", check_curve_ledgers),
    (3, "isotropy table for monomial and binomial w", check_inner_table),
    (4, "smith form and brute force give the group; closed form iff gcd(p, s) = 1", check_three_routes),
    (5, "realization of Z_n1 + Z_n2 by x^n1 + y^n2", check_realization),
    (6, "root-of-unity obstruction", check_root_obstruction),
    (7, "generators commute, non-members do not", check_commutation),
    (8, "derivation relation, Leibniz rule and product oracle", check_algebra),
    (9, "coprime lcm split", check_lcm_split),
]


def run_selfcheck(options: Optional[SweepOptions] = None, criteria: Optional[Sequence[int]] = None) -> List[CheckRow]:
    """
    Run the selected checks (all by default) and return one row per check.

    Domain and resource errors raised inside a check fail that row; they do not
    abort the run.
    """
    options = options or SweepOptions()
    rows = []
    for number, name, check in CHECKS:
        if criteria and number not in criteria:
            continue
        rng = random.Random(options.seed * 1000 + number)
        try:
            checked, failures, note = CheckResult(*check(options, rng))
        except QPIError as e:
            rows.append(CheckRow(number, name, False, 0, f"{e.category}: {e}"))
            logger.warning("check %d aborted: %s", number, e)
            continue
        detail = "; ".join(failures[:MAX_FAILURES_SHOWN])
        if len(failures) > MAX_FAILURES_SHOWN:
            detail += f" (+{len(failures) - MAX_FAILURES_SHOWN} more)"
        if note:
            detail = f"{detail}; {note}" if detail else note
        rows.append(CheckRow(number, name, not failures, checked, detail))
        logger.info("check %d: %s over %d cases", number, "pass" if not failures else "FAIL", checked)
    return rows
