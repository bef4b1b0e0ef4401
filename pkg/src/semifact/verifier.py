"""Independent brute-force oracles and cross-checks for the optimized engines.

Each check returns a CheckReport; status is Fail exactly when a concrete
violation was found, and Inconclusive is first-class (never downgraded to
Pass when an oracle could not conclude).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, Inconclusive
from .rationals import format_rat, primes_upto
from .semialgebras import (
    Bounds,
    DEFAULT_BOUNDS,
    Semialgebra,
    accp_probe,
    add_atoms,
    add_divisors,
    add_factorizations,
    canonical_digits,
    contains,
    is_add_atom,
    mult_atoms,
    parse_semialgebra,
)
from .matrix_monoids import (
    UTMatrix,
    _solve_left,
    identity,
    is_matrix_atom,
    is_regular,
    make_matrix,
    mat_mul,
    format_matrix,
    rigid_factorizations,
    sigma,
    weight,
)


@dataclass
class CheckReport:
    check_name: str
    instances_tested: int
    violations: list[str]
    status: str  # Pass | Fail | Inconclusive
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "check_name": self.check_name,
                "instances_tested": self.instances_tested,
                "violations": self.violations,
                "status": self.status,
                "seed": self.seed,
            },
            sort_keys=True,
        )


def _report(name, tested, violations, inconclusive=False, seed=None) -> CheckReport:
    if violations:
        status = "Fail"
    elif inconclusive:
        status = "Inconclusive"
    else:
        status = "Pass"
    return CheckReport(name, tested, violations, status, seed)


# -- matrix atom oracle ----------------------------------------------------------


def _enumerate_ut_matrices(S: Semialgebra, n: int, entry_bound: int):
    """All regular upper triangular matrices over integer entries <= bound."""
    diag_choices = range(1, entry_bound + 1)
    off_choices = range(0, entry_bound + 1)
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    pools = [diag_choices if i == j else off_choices for i, j in positions]
    for combo in itertools.product(*pools):
        rows = [[0] * n for _ in range(n)]
        for (i, j), v in zip(positions, combo):
            rows[i][j] = v
        yield make_matrix(S, rows)


def brute_force_matrix_atom(A: UTMatrix, entry_bound: int) -> bool:
    """Exhaustive decomposition search: false iff A = B*C with B, C != I."""
    if A.S.kind != "nat":
        raise DomainError("brute force oracle needs a fully enumerable descriptor")
    if not is_regular(A):
        raise DomainError("A must be regular")
    I = identity(A.S, A.n)
    if A == I:
        return False
    for B in _enumerate_ut_matrices(A.S, A.n, entry_bound):
        if B == I:
            continue
        C_rows = _solve_left(B, A)
        ok = True
        for i in range(A.n):
            for j in range(i, A.n):
                v = C_rows[i][j]
                if v < 0 or v.denominator != 1:
                    ok = False
                    break
            if not ok or C_rows[i][i] == 0:
                ok = False
                break
        if ok:
            C = make_matrix(A.S, C_rows)
            if C != I:
                return False
    return True


def check_atom_characterization(n: int, entry_bound: int) -> CheckReport:
    S = parse_semialgebra("nat")
    tested = 0
    violations = []
    for A in _enumerate_ut_matrices(S, n, entry_bound):
        tested += 1
        fast = is_matrix_atom(A)
        slow = brute_force_matrix_atom(A, entry_bound)
        if fast != slow:
            violations.append(format_matrix(A))
    return _report(f"atom_characterization(n={n},bound={entry_bound})", tested, violations)


def check_sigma_superadditivity(samples: int, seed: int) -> CheckReport:
    S = parse_semialgebra("nat")
    rng = random.Random(seed)
    tested = 0
    violations = []
    for k in range(samples):
        n = 2 if k % 2 == 0 else 3
        def rand_matrix():
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    rows[i][j] = rng.randint(1, 4) if i == j else rng.randint(0, 4)
            return make_matrix(S, rows)
        A, B = rand_matrix(), rand_matrix()
        tested += 1
        if sigma(mat_mul(A, B)) < sigma(A) + sigma(B):
            violations.append(f"{format_matrix(A)} * {format_matrix(B)}")
    return _report("sigma_superadditivity", tested, violations, seed=seed)


# -- finiteness equivalence -------------------------------------------------------


def check_divisor_atom_factorization_equivalence(
    S: Semialgebra, sample_set, bounds: Bounds = DEFAULT_BOUNDS
) -> CheckReport:
    """Divisor set, dividing-atom set and factorization set should carry the
    same finiteness verdict; with bounded engines we can certify finiteness
    (complete=true) but never infiniteness, so one-sided gaps are
    Inconclusive, not violations."""
    tested = 0
    violations = []
    inconclusive = False
    for x in sample_set:
        tested += 1
        try:
            dv = add_divisors(S, x, bounds)
            fz = add_factorizations(S, x, bounds)
        except Inconclusive:
            inconclusive = True
            continue
        if not (dv.complete and fz.complete):
            inconclusive = True
        # consistency: every atom used by a factorization divides x
        div_set = set(dv.items)
        for f in fz.items:
            for a, _ in f.atoms:
                if dv.complete and a not in div_set:
                    violations.append(
                        f"x={format_rat(x)}: atom {format_rat(a)} missing from divisors"
                    )
    return _report(f"divisor_atom_factorization_equivalence({S})", tested, violations, inconclusive)


# -- transfer diagram --------------------------------------------------------------


_SAMPLE_ENTRIES = {
    "nat": [Fraction(0), Fraction(1), Fraction(2), Fraction(3)],
    "cyclic:2/3": [Fraction(0), Fraction(2, 3), Fraction(1), Fraction(4, 3)],
    "cyclic:3/2": [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(5, 2)],
    "conducted:2": [Fraction(0), Fraction(1), Fraction(2), Fraction(5, 2)],
}

_ACCP_EXPECT = {"nat": False, "cyclic:2/3": True, "cyclic:3/2": False, "conducted:2": False}


def _sample_matrices(S: Semialgebra, n: int, limit: int = 10):
    pool = _SAMPLE_ENTRIES.get(str(S))
    if pool is None:
        raise DomainError(f"no sample pool for {S}")
    nz = [v for v in pool if v != 0]
    out = []
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    pools = [nz if i == j else pool for i, j in positions]
    for combo in itertools.product(*pools):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(positions, combo):
            rows[i][j] = v
        out.append(make_matrix(S, rows))
        if len(out) >= limit:
            break
    return out


def check_transfer_diagram(
    S: Semialgebra, n: int, bounds: Bounds = DEFAULT_BOUNDS
) -> CheckReport:
    tested = 0
    violations = []
    conclusive = 0
    for B in _sample_matrices(S, n):
        tested += 1
        entry_complete = True
        for i in range(n):
            for j in range(i + 1, n):
                entry_complete &= add_factorizations(S, B.rows[i][j], bounds).complete
        try:
            w = weight(B, bounds)
        except Inconclusive:
            w = None
            entry_complete = False
        res = rigid_factorizations(B, bounds)
        if entry_complete and w is not None:
            conclusive += 1
            if not res.complete or not res.items:
                violations.append(f"{format_matrix(B)}: rigid enumeration not complete+nonempty")
        if w is not None:
            for f in res.items:
                if f.length > w:
                    violations.append(f"{format_matrix(B)}: length {f.length} > weight {w}")
    inconclusive = conclusive == 0
    key = str(S)
    if key in _ACCP_EXPECT:
        start = Fraction(2) if key == "cyclic:2/3" else Fraction(3)
        got = accp_probe(S, "add", start, bounds.depth, bounds)
        found = got is not None
        if found != _ACCP_EXPECT[key]:
            violations.append(
                f"accp probe at depth {bounds.depth}: found={found}, expected={_ACCP_EXPECT[key]}"
            )
        tested += 1
    return _report(f"transfer_diagram({S},n={n})", tested, violations, inconclusive)


# -- atom census --------------------------------------------------------------------


def check_atom_census(S: Semialgebra, bound: int) -> CheckReport:
    tested = 0
    violations = []
    inconclusive = False
    kind = S.kind
    if kind == "nat" or (kind == "cyclic" and not S.d_gt_1):
        # single additive atom: the monoid must look like the integers
        for num in range(0, 2 * bound + 1):
            for den in (1, 2, 3):
                x = Fraction(num, den)
                tested += 1
                if contains(S, x) != (x.denominator == 1):
                    violations.append(format_rat(x))
        small = len(primes_upto(bound))
        large = len(primes_upto(2 * bound))
        tested += 1
        if not large > small:
            violations.append(f"prime census {small} !< {large}")
    elif kind == "cyclic" and S.n_gt_1 and S.d_gt_1:
        b = Bounds(max_exp=bound)
        b2 = Bounds(max_exp=2 * bound)
        small = len(add_atoms(S, b).items)
        large = len(add_atoms(S, b2).items)
        tested += 1
        if not (small == bound + 1 and large > small):
            violations.append(f"additive census {small} -> {large}")
        ms = len(mult_atoms(S, DEFAULT_BOUNDS, below=Fraction(4)).items)
        ml = len(mult_atoms(S, DEFAULT_BOUNDS, below=Fraction(8)).items)
        tested += 1
        if not ml > ms:
            violations.append(f"multiplicative census {ms} !< {ml}")
    elif kind == "conducted" and S.r >= 1:
        small = len(add_atoms(S, Bounds(max_den=bound)).items)
        large = len(add_atoms(S, Bounds(max_den=2 * bound)).items)
        tested += 1
        if not large > small:
            violations.append(f"additive census {small} !< {large}")
        if S.r > 1:
            ms = len(mult_atoms(S, Bounds(max_den=bound)).items)
            ml = len(mult_atoms(S, Bounds(max_den=2 * bound)).items)
            tested += 1
            if not ml > ms:
                violations.append(f"multiplicative census {ms} !< {ml}")
    else:
        # antimatter rows (qnn, conducted r < 1, cyclic with unit numerator)
        inconclusive = True
    return _report(f"atom_census({S},bound={bound})", tested, violations, inconclusive)


# -- suite --------------------------------------------------------------------------


def run_all(seed: int = 1, bounds: Bounds | None = None) -> list[CheckReport]:
    fast = Bounds(max_len=8, max_exp=8, max_den=24, max_count=2000, depth=6)
    b = bounds or fast
    reports = [
        check_atom_census(parse_semialgebra("nat"), 100),
        check_atom_census(parse_semialgebra("cyclic:2/3"), 10),
        check_atom_census(parse_semialgebra("cyclic:3/2"), 10),
        check_atom_census(parse_semialgebra("conducted:2"), 8),
        check_atom_census(parse_semialgebra("qnn"), 8),
        check_atom_characterization(2, 4),
        check_atom_characterization(3, 2),
        check_sigma_superadditivity(300, seed),
        check_divisor_atom_factorization_equivalence(
            parse_semialgebra("nat"), [Fraction(k) for k in range(1, 21)], b
        ),
        check_divisor_atom_factorization_equivalence(
            parse_semialgebra("cyclic:3/2"),
            sorted(
                {Fraction(i) + Fraction(3, 2) * j for i in range(3) for j in range(3)}
                - {Fraction(0)}
            )[:15],
            b,
        ),
        check_divisor_atom_factorization_equivalence(
            parse_semialgebra("conducted:2"), [Fraction(9, 2), Fraction(7, 2), Fraction(4)], b
        ),
        check_transfer_diagram(parse_semialgebra("nat"), 2, b),
        check_transfer_diagram(parse_semialgebra("cyclic:2/3"), 2, b),
        check_transfer_diagram(parse_semialgebra("cyclic:3/2"), 2, b),
        check_transfer_diagram(parse_semialgebra("conducted:2"), 2, b),
    ]
    for r in reports:
        if r.seed is None:
            r.seed = seed
    return reports
