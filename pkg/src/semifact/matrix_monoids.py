"""Upper triangular matrix monoids over a rational semialgebra.

Matrices are square, upper triangular, with entries that are members of the
carrier semialgebra.  The regular ones (all diagonal entries nonzero) form a
cancellative multiplicative monoid; its atoms split into additive type
(identity plus one additive atom above the diagonal) and multiplicative type
(identity with one diagonal entry replaced by a multiplicative atom).

Indices in the public API and serialized output are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, Inconclusive, Unsupported
from .rationals import Rat, format_rat, parse_rat
from .semialgebras import (
    EXP,
    Bounds,
    DEFAULT_BOUNDS,
    Semialgebra,
    add_divisors,
    add_length_set,
    contains,
    is_add_atom,
    is_mult_atom,
    mult_divisors,
    mult_factorizations,
    mult_length_set,
)


@dataclass(frozen=True)
class UTMatrix:
    S: Semialgebra
    rows: tuple[tuple[Rat, ...], ...]

    def __post_init__(self):
        if self.S.kind == EXP:
            raise Unsupported("matrix monoids are restricted to rational semialgebras")
        n = len(self.rows)
        if n < 1:
            raise DomainError("dimension must be >= 1")
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DomainError("matrix must be square")
            for j, v in enumerate(row):
                if j < i and v != 0:
                    raise DomainError("matrix must be upper triangular")
                if not contains(self.S, v):
                    raise DomainError(f"entry {format_rat(v)} is not in {self.S}")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Rat:
        return self.rows[i - 1][j - 1]

    def __str__(self):
        return format_matrix(self)


def make_matrix(S: Semialgebra, rows) -> UTMatrix:
    return UTMatrix(S, tuple(tuple(Fraction(v) for v in row) for row in rows))


def identity(S: Semialgebra, n: int) -> UTMatrix:
    return make_matrix(
        S, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    )


def parse_matrix(text: str, S: Semialgebra) -> UTMatrix:
    rows = [
        [parse_rat(cell) for cell in row.split(",")] for row in text.strip().split(";")
    ]
    return make_matrix(S, rows)


def format_matrix(A: UTMatrix) -> str:
    return ";".join(",".join(format_rat(v) for v in row) for row in A.rows)


def mat_mul(A: UTMatrix, B: UTMatrix) -> UTMatrix:
    if A.n != B.n or A.S != B.S:
        raise DomainError("dimension or semialgebra mismatch")
    n = A.n
    rows = [
        [
            sum((A.rows[i][k] * B.rows[k][j] for k in range(i, j + 1)), Fraction(0))
            if j >= i
            else Fraction(0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return make_matrix(A.S, rows)


def is_regular(A: UTMatrix) -> bool:
    return all(A.rows[i][i] != 0 for i in range(A.n))


def det(A: UTMatrix) -> Rat:
    p = Fraction(1)
    for i in range(A.n):
        p *= A.rows[i][i]
    return p


def _solve_left(B: UTMatrix, A: UTMatrix) -> list[list[Fraction]]:
    """The unique rational C with B * C = A, for regular B (back substitution
    down the rows; C is automatically upper triangular)."""
    n = A.n
    C = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for i in range(j, -1, -1):
            acc = A.rows[i][j]
            for k in range(i + 1, j + 1):
                acc -= B.rows[i][k] * C[k][j]
            C[i][j] = acc / B.rows[i][i]
    return C


def _atom_shape(A: UTMatrix):
    """Classify as ("add", i, j, a) or ("mult", i, a) or None (1-based)."""
    n = A.n
    off = [(i, j) for i in range(n) for j in range(i + 1, n) if A.rows[i][j] != 0]
    diag = [i for i in range(n) if A.rows[i][i] != 1]
    if len(off) == 1 and not diag:
        i, j = off[0]
        return ("add", i + 1, j + 1, A.rows[i][j])
    if not off and len(diag) == 1:
        i = diag[0]
        return ("mult", i + 1, A.rows[i][i])
    return None


def is_matrix_atom(A: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    if not is_regular(A):
        raise DomainError("atom test requires a regular matrix")
    shape = _atom_shape(A)
    if shape is None:
        return False
    if shape[0] == "add":
        return is_add_atom(A.S, shape[3], bounds)
    return is_mult_atom(A.S, shape[2], bounds)


def embed_additive(S: Semialgebra, s: Rat, i: int, j: int, n: int) -> UTMatrix:
    if not (1 <= i < j <= n):
        raise DomainError("need 1 <= i < j <= n")
    rows = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    rows[i - 1][j - 1] = Fraction(s)
    return make_matrix(S, rows)


def embed_multiplicative(S: Semialgebra, s: Rat, i: int, n: int) -> UTMatrix:
    if not (1 <= i <= n):
        raise DomainError("index out of range")
    if s == 0:
        raise DomainError("diagonal embedding needs s != 0")
    rows = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
    rows[i - 1][i - 1] = Fraction(s)
    return make_matrix(S, rows)


def sigma(A: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS) -> int:
    """Sum over strictly-upper entries of the maximum additive length."""
    total = 0
    for i in range(A.n):
        for j in range(i + 1, A.n):
            lengths, complete = add_length_set(A.S, A.rows[i][j], bounds)
            if not complete:
                raise Inconclusive(
                    f"additive length set of entry ({i+1},{j+1}) is incomplete", bounds
                )
            total += max(lengths) if lengths else 0
    return total


def weight(A: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS) -> int:
    """sigma(A) plus the maximum multiplicative length of det(A); an upper
    bound on every rigid factorization length."""
    s = sigma(A, bounds)
    lengths, complete = mult_length_set(A.S, det(A), bounds)
    if not complete:
        raise Inconclusive("multiplicative length set of det is incomplete", bounds)
    return s + (max(lengths) if lengths else 0)


def left_divide(A: UTMatrix, B: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS):
    """The unique C with B = A * C, iff C lives in the monoid; else None."""
    if not is_matrix_atom(A, bounds):
        raise DomainError("left divisor must be a matrix atom")
    if not is_regular(B):
        raise DomainError("B must be regular")
    C = _solve_left(A, B)
    for i in range(B.n):
        for j in range(i, B.n):
            v = C[i][j]
            if v < 0 or not contains(B.S, v, bounds):
                return None
        if C[i][i] == 0:
            return None
    return make_matrix(B.S, C)


def _add_atom_candidates_for_entry(S, x, bounds):
    """Additive atoms that multiplicatively divide some nonzero additive
    divisor of x; returns (atoms, complete)."""
    if x == 0:
        return [], True
    res_d = add_divisors(S, x, bounds)
    complete = res_d.complete
    atoms = set()
    for d in res_d.items:
        if d == 0:
            continue
        res_m = mult_divisors(S, d, bounds)
        complete = complete and res_m.complete
        for a in res_m.items:
            try:
                if is_add_atom(S, a, bounds):
                    atoms.add(a)
            except Inconclusive:
                complete = False
    return sorted(atoms), complete


def _mult_atom_candidates_for_det(S, dval, bounds):
    try:
        from .semialgebras import is_mult_unit

        if is_mult_unit(S, dval, bounds):
            return [], True
    except Inconclusive:
        return [], False
    res = mult_divisors(S, dval, bounds)
    complete = res.complete
    atoms = []
    for a in res.items:
        try:
            if is_mult_atom(S, a, bounds):
                atoms.append(a)
        except Inconclusive:
            complete = False
    return sorted(atoms), complete


def atom_candidates(
    B: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS, restrict_unit_triangular: bool = False
) -> tuple[list[UTMatrix], bool]:
    """Finite superset of the atoms that can left-divide B, with a
    completeness flag.  Ordered additive-type first (row-major position, then
    value), then multiplicative type (position, then value)."""
    if not is_regular(B):
        raise DomainError("candidates need a regular matrix")
    S, n = B.S, B.n
    out: list[UTMatrix] = []
    complete = True
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            atoms, comp = _add_atom_candidates_for_entry(S, B.entry(i, j), bounds)
            complete = complete and comp
            for a in atoms:
                out.append(embed_additive(S, a, i, j, n))
    if not restrict_unit_triangular:
        datoms, comp = _mult_atom_candidates_for_det(S, det(B), bounds)
        complete = complete and comp
        for i in range(1, n + 1):
            for a in datoms:
                out.append(embed_multiplicative(S, a, i, n))
    return out, complete


@dataclass(frozen=True)
class RigidFactorization:
    """Ordered sequence of matrix atoms whose product is the target."""

    factors: tuple[UTMatrix, ...]

    @property
    def length(self) -> int:
        return len(self.factors)

    def sort_key(self):
        return tuple(
            (shape[0] != "add",) + shape[1:] for shape in map(_atom_shape, self.factors)
        )


@dataclass
class RigidEnumeration:
    items: list[RigidFactorization]
    complete: bool
    bounds: Bounds = field(default_factory=Bounds)


def rigid_factorizations(
    B: UTMatrix,
    bounds: Bounds = DEFAULT_BOUNDS,
    restrict_unit_triangular: bool = False,
) -> RigidEnumeration:
    """DFS over leftmost atoms; leaves at the identity.  complete=true iff
    the candidate sets were complete at every node and no truncation by
    max_len / max_count occurred."""
    if not is_regular(B):
        raise DomainError("rigid factorization needs a regular matrix")
    I = identity(B.S, B.n)
    items: list[RigidFactorization] = []
    complete = True

    def rec(cur: UTMatrix, seq: tuple):
        nonlocal complete
        if cur == I:
            items.append(RigidFactorization(seq))
            return
        if len(seq) >= bounds.max_len or len(items) >= bounds.max_count:
            complete = False
            return
        cands, comp = atom_candidates(cur, bounds, restrict_unit_triangular)
        if not comp:
            complete = False
        for A in cands:
            try:
                C = left_divide(A, cur, bounds)
            except Inconclusive:
                complete = False
                continue
            if C is not None:
                rec(C, seq + (A,))

    rec(B, ())
    items.sort(key=RigidFactorization.sort_key)
    return RigidEnumeration(items, complete, bounds)


def rigid_length_set(
    B: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS, restrict_unit_triangular=False
) -> tuple[set[int], bool]:
    res = rigid_factorizations(B, bounds, restrict_unit_triangular)
    return {f.length for f in res.items}, res.complete


def divides_up_to_permutation(
    A: UTMatrix, B: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS
) -> bool:
    """True iff A occurs as a factor of some rigid factorization of B.
    Raises Inconclusive when the enumeration is incomplete and no witness
    appeared."""
    if not is_matrix_atom(A, bounds):
        raise DomainError("A must be a matrix atom")
    res = rigid_factorizations(B, bounds)
    for f in res.items:
        if A in f.factors:
            return True
    if res.complete:
        return False
    raise Inconclusive("incomplete rigid enumeration without a witness", bounds)


def hfm_counterexample(S: Semialgebra, m: int, bounds: Bounds = DEFAULT_BOUNDS):
    """A matrix with two rigid factorizations whose lengths differ by m - 1,
    from the identity diag(1,m) * U^m = U * diag(1,m) with U = I + E12.

    diag(1,m) is split into atomic diagonal factors when m is composite.
    """
    if m < 2:
        raise DomainError("m must be >= 2")
    U = embed_additive(S, Fraction(1), 1, 2, 2)
    res = mult_factorizations(S, Fraction(m), bounds)
    if not res.items:
        raise DomainError(f"{m} admits no multiplicative factorization in {S}")
    d_atoms: list[Rat] = []
    for a, c in res.items[0].atoms:
        d_atoms.extend([a] * c)
    D_chain = tuple(embed_multiplicative(S, a, 2, 2) for a in d_atoms)
    long_fact = RigidFactorization(D_chain + (U,) * m)
    short_fact = RigidFactorization((U,) + D_chain)
    A = identity(S, 2)
    for F in long_fact.factors:
        A = mat_mul(A, F)
    check = identity(S, 2)
    for F in short_fact.factors:
        check = mat_mul(check, F)
    if A != check:
        raise DomainError("internal error: the two products disagree")
    return A, long_fact, short_fact


def almost_prime_like_probe(A: UTMatrix, bounds: Bounds = DEFAULT_BOUNDS):
    """Search bounded products X*Y with A dividing XY up to permutation but
    dividing neither X nor Y.  Returns (X, Y) or None (inconclusive).

    The candidate pool holds multiplicative-type atoms first, then
    additive-type, each in value order.
    """
    if not is_matrix_atom(A, bounds):
        raise DomainError("A must be a matrix atom")
    S, n = A.S, A.n
    from .semialgebras import add_atoms, mult_atoms

    pool: list[UTMatrix] = []
    small = Fraction(4)
    mres = mult_atoms(S, bounds, below=small)
    for a in mres.items[:4]:
        for i in range(1, n + 1):
            pool.append(embed_multiplicative(S, a, i, n))
    ares = add_atoms(S, bounds, below=small)
    add_vals = sorted(ares.items)[-4:] if len(ares.items) > 4 else ares.items
    for a in sorted(add_vals):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                pool.append(embed_additive(S, a, i, j, n))

    def divides(M: UTMatrix) -> bool:
        try:
            return divides_up_to_permutation(A, M, bounds)
        except Inconclusive:
            return False

    for X in pool:
        if divides(X):
            continue
        for Y in pool:
            if divides(Y):
                continue
            if divides(mat_mul(X, Y)):
                return X, Y
    return None
