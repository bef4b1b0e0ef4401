"""The five concrete information semialgebras and their factorization engines.

Supported kinds (descriptor syntax in parentheses):

* ``nat``            -- the nonnegative integers
* ``qnn``            -- all nonnegative rationals
* ``cyclic:N/D``     -- the subsemiring generated by the powers of r = N/D
* ``conducted:N/D``  -- the subsemiring generated by all rationals >= r
* ``exp``            -- formal exponential sums with exponents in the monoid
                        generated by the reciprocals of the primes

Rational kinds carry elements as ``Fraction``; ``exp`` carries ``ExpSum``.
Every enumeration takes explicit ``Bounds`` and reports a ``complete`` flag
that is only set when a finiteness argument actually applies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DomainError, Inconclusive, NotMember, Unsupported
from .rationals import (
    Rat,
    format_rat,
    is_prime,
    is_squarefree,
    parse_rat,
    prime_factors,
    primes_upto,
    support,
)

NAT = "nat"
QNN = "qnn"
CYCLIC = "cyclic"
CONDUCTED = "conducted"
EXP = "exp"


@dataclass(frozen=True)
class Bounds:
    """Explicit enumeration bounds; every result records the bounds used."""

    max_len: int = 12
    max_exp: int = 12
    max_den: int = 64
    max_count: int = 10000
    depth: int = 8

    def as_dict(self):
        return {
            "max_len": self.max_len,
            "max_exp": self.max_exp,
            "max_den": self.max_den,
            "max_count": self.max_count,
            "depth": self.depth,
        }


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class Semialgebra:
    """Tagged descriptor of one of the five supported semialgebras."""

    kind: str
    r: Rat | None = None

    def __post_init__(self):
        if self.kind not in (NAT, QNN, CYCLIC, CONDUCTED, EXP):
            raise DomainError(f"unknown semialgebra kind {self.kind!r}")
        if self.kind == CYCLIC:
            if self.r is None or self.r <= 0 or self.r == 1:
                raise DomainError("cyclic semialgebra needs r > 0, r != 1")
        elif self.kind == CONDUCTED:
            if self.r is None or self.r < 0:
                raise DomainError("conducted semialgebra needs r >= 0")
        elif self.r is not None:
            raise DomainError(f"{self.kind} takes no parameter")

    @property
    def r_num(self) -> int:
        return self.r.numerator

    @property
    def r_den(self) -> int:
        return self.r.denominator

    @property
    def n_gt_1(self) -> bool:
        return self.r_num > 1

    @property
    def d_gt_1(self) -> bool:
        return self.r_den > 1

    @property
    def d_prime(self) -> bool:
        return is_prime(self.r_den)

    def __str__(self):
        if self.kind in (CYCLIC, CONDUCTED):
            return f"{self.kind}:{format_rat(self.r)}"
        return self.kind


def parse_semialgebra(text: str) -> Semialgebra:
    text = text.strip()
    if ":" in text:
        kind, arg = text.split(":", 1)
        return Semialgebra(kind, parse_rat(arg))
    return Semialgebra(text)


# -- elements -----------------------------------------------------------------


@dataclass(frozen=True)
class ExpSum:
    """Formal sum of exponentials with positive integer coefficients.

    ``terms`` maps exponents (members of the prime-reciprocal monoid) to
    coefficients; it is kept sorted and free of zero coefficients so equality
    is structural.
    """

    terms: tuple[tuple[Rat, int], ...]

    def __post_init__(self):
        seen = set()
        for q, c in self.terms:
            if c <= 0:
                raise DomainError("ExpSum coefficients must be positive")
            if q in seen:
                raise DomainError("ExpSum exponents must be distinct")
            seen.add(q)
            if not mem_M(q):
                raise DomainError(f"exponent {q} is not in the prime-reciprocal monoid")
        object.__setattr__(self, "terms", tuple(sorted(self.terms)))

    @staticmethod
    def single(q: Rat, c: int = 1) -> "ExpSum":
        return ExpSum(((q, c),))

    @staticmethod
    def zero() -> "ExpSum":
        return ExpSum(())

    @staticmethod
    def one() -> "ExpSum":
        return ExpSum.single(Fraction(0), 1)

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "ExpSum") -> "ExpSum":
        acc = dict(self.terms)
        for q, c in other.terms:
            acc[q] = acc.get(q, 0) + c
        return ExpSum(tuple(acc.items()))

    def mul(self, other: "ExpSum") -> "ExpSum":
        acc: dict[Rat, int] = {}
        for q1, c1 in self.terms:
            for q2, c2 in other.terms:
                q = q1 + q2
                acc[q] = acc.get(q, 0) + c1 * c2
        return ExpSum(tuple(acc.items()))

    def length(self) -> int:
        return sum(c for _, c in self.terms)

    def __str__(self):
        inner = ",".join(f"{format_rat(q)}:{c}" for q, c in self.terms)
        return f"e:{{{inner}}}"


Element = Fraction | ExpSum


def elem_key(x: Element):
    """Total deterministic order: rationals by value, ExpSums by term list."""
    if isinstance(x, ExpSum):
        return (1, x.terms)
    return (0, x)


def parse_element(text: str) -> Element:
    text = text.strip()
    if text.startswith("e:"):
        body = text[2:].strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise DomainError(f"bad ExpSum literal {text!r}")
        inner = body[1:-1].strip()
        if not inner:
            return ExpSum.zero()
        terms = []
        for part in inner.split(","):
            q_str, c_str = part.rsplit(":", 1)
            terms.append((parse_rat(q_str), int(c_str)))
        return ExpSum(tuple(terms))
    return parse_rat(text)


def format_element(x: Element) -> str:
    if isinstance(x, ExpSum):
        return str(x)
    return format_rat(x)


@dataclass(frozen=True)
class Factorization:
    """Multiset of atoms; ``mode`` is "add" or "mult"."""

    atoms: tuple[tuple[Element, int], ...]
    mode: str

    def __post_init__(self):
        object.__setattr__(
            self, "atoms", tuple(sorted(self.atoms, key=lambda t: elem_key(t[0])))
        )

    @property
    def length(self) -> int:
        return sum(c for _, c in self.atoms)

    def expanded(self) -> tuple:
        out = []
        for a, c in self.atoms:
            out.extend([a] * c)
        return tuple(out)

    def sort_key(self):
        return tuple(elem_key(a) for a in self.expanded())


@dataclass
class EnumerationResult:
    items: list
    complete: bool
    bounds: Bounds = field(default_factory=Bounds)


# -- prime-reciprocal monoid M = <1/p : p prime> ------------------------------


def mem_M(q: Rat) -> bool:
    """Membership in the additive monoid generated by reciprocals of primes.

    The denominator must be squarefree, say d = p_1 ... p_k; then q = n/d
    lies in the monoid iff n is representable by the numerical semigroup
    generated by d/p_1, ..., d/p_k.  Above the Frobenius-style bound
    representability is automatic, below it a table settles it.
    """
    if q < 0:
        raise DomainError("mem_M expects q >= 0")
    if q == 0:
        return True
    d = q.denominator
    if d == 1:
        return True  # n = 2n * (1/2)
    if not is_squarefree(d):
        return False
    gens = sorted(d // p for p in prime_factors(d))
    if gens[0] == 1:
        return True
    n = q.numerator
    if n >= (gens[0] - 1) * (gens[-1] - 1):
        return True
    reach = bytearray(n + 1)
    reach[0] = 1
    for g in gens:
        for v in range(g, n + 1):
            if reach[v - g]:
                reach[v] = 1
    return bool(reach[n])


# -- membership ---------------------------------------------------------------


def _check_type(S: Semialgebra, x: Element):
    if S.kind == EXP:
        if not isinstance(x, ExpSum):
            raise DomainError("FormalExp elements must be ExpSums")
    else:
        if isinstance(x, ExpSum):
            raise DomainError(f"{S.kind} elements must be rationals")
        if x < 0:
            raise DomainError("elements must be nonnegative")


def canonical_digits(S: Semialgebra, x: Rat) -> tuple[int, ...]:
    """Digit vector (c_0, ..., c_m) with sum c_i r^i = x and 0 <= c_i < d(r)
    for i >= 1; unique when the denominator of r is prime.

    Raises NotMember when the top-down congruence reduction fails.
    """
    if S.kind != CYCLIC or not S.d_prime or not S.n_gt_1:
        raise Unsupported("canonical digits need a cyclic kind with prime denominator")
    if x < 0:
        raise DomainError("x must be nonnegative")
    if x == 0:
        return (0,)
    n, d = S.r_num, S.r_den
    den = x.denominator
    m, t = 0, den
    while t % d == 0:
        t //= d
        m += 1
    if t != 1:
        raise NotMember(f"{format_rat(x)} has denominator outside powers of {d}")
    # x = X / d^m with X = numerator; solve sum_{i<=m} c_i n^i d^(m-i) = X
    X = x.numerator
    inv_n = pow(n, -1, d)
    digits = [0] * (m + 1)
    for i in range(m, 0, -1):
        c = (X * pow(inv_n, i, d)) % d
        X -= c * pow(n, i)
        if X < 0:
            raise NotMember(f"digit reduction went negative for {format_rat(x)}")
        X //= d
        digits[i] = c
    digits[0] = X
    return tuple(digits)


def _digits_value(S: Semialgebra, digits) -> Rat:
    return sum((c * S.r**i for i, c in enumerate(digits)), Fraction(0))


def _cyclic_rep_exists(S: Semialgebra, x: Rat, max_exp: int) -> bool:
    """Is x a sum of powers r^0..r^max_exp with nonnegative coefficients?

    Exhaustive over that exponent window (top digit is forced modulo d at
    each level, leaving a one-dimensional branch).
    """
    n, d = S.r_num, S.r_den
    scaled = x * d**max_exp
    if scaled.denominator != 1:
        return False
    inv_n = pow(n, -1, d)

    def rec(i: int, X: int) -> bool:
        if X == 0:
            return True
        if i == 0:
            return True  # c_0 = X
        base = (X * pow(inv_n, i, d)) % d
        w = pow(n, i)
        c = base
        while c * w <= X:
            if rec(i - 1, (X - c * w) // d):
                return True
            c += d
        # also allow skipping this exponent entirely when base == 0
        return False

    return rec(max_exp, scaled.numerator)


def contains(S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    """Exact membership test; raises Inconclusive where only a bounded
    search is available (cyclic kind, r < 1, composite denominator)."""
    _check_type(S, x)
    if S.kind == NAT:
        return x.denominator == 1
    if S.kind == QNN:
        return True
    if S.kind == EXP:
        return True  # exponents were validated at construction
    if S.kind == CONDUCTED:
        r = S.r
        if r < 1:
            return True
        if r == 1:
            return x == 0 or x >= 1
        return x.denominator == 1 or x >= r
    # cyclic
    if not S.d_gt_1:
        return x.denominator == 1
    if x == 0:
        return True
    if not S.n_gt_1:
        return set(prime_factors(x.denominator)) <= set(prime_factors(S.r_den))
    if not set(prime_factors(x.denominator)) <= set(prime_factors(S.r_den)):
        return False
    if S.d_prime:
        try:
            canonical_digits(S, x)
            return True
        except NotMember:
            return False
    if S.r > 1:
        # representations only ever use exponents with r^k <= x
        k = 0
        while S.r ** (k + 1) <= x:
            k += 1
        return _cyclic_rep_exists(S, x, k)
    if _cyclic_rep_exists(S, x, bounds.max_exp):
        return True
    raise Inconclusive(
        f"membership in {S} undecided within exponent {bounds.max_exp}", bounds
    )


def _require_member(S, x, bounds):
    if not contains(S, x, bounds):
        raise DomainError(f"{format_element(x)} is not a member of {S}")


# -- units and atoms ----------------------------------------------------------


def is_mult_unit(S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        return x == ExpSum.one()
    if x == 0:
        raise DomainError("0 is not in the multiplicative monoid")
    if S.kind == QNN:
        return True
    if S.kind == CONDUCTED and S.r < 1:
        return True
    if S.kind == CYCLIC and S.d_gt_1 and not S.n_gt_1:
        return x == 1 or support(x) <= support(S.r)
    return x == 1


def is_add_atom(S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        return len(x.terms) == 1 and x.terms[0][1] == 1
    if S.kind == NAT:
        return x == 1
    if S.kind == QNN:
        return False
    if S.kind == CONDUCTED:
        r = S.r
        if r < 1:
            return False
        if r == 1:
            return 1 <= x < 2
        ceil_r = -((-r.numerator) // r.denominator)
        return x == 1 or (r <= x < r + 1 and x != ceil_r)
    # cyclic
    if not S.d_gt_1:
        return x == 1
    if not S.n_gt_1:
        return False
    if x == 0:
        return False
    if x == 1:
        return True
    n, d = S.r_num, S.r_den
    xd = x.denominator
    k, t = 0, xd
    while t % d == 0:
        t //= d
        k += 1
    if t != 1:
        return False
    if S.r > 1:
        # r^k has numerator n^k, denominator d^k; for r > 1 recover k from num
        xn = x.numerator
        k = 0
        v = 1
        while v < xn:
            v *= n
            k += 1
        return v == xn and x.denominator == d**k
    return k >= 1 and x.numerator == n**k or (k == 0 and x == 1)


def _conducted_no_prime_cofactor(S, x, bounds):
    for p in primes_upto(max(2, int(x))):
        if Fraction(p) >= x:
            break
        y = x / p
        if y > 1 and contains(S, y, bounds):
            return False
    return True


def is_mult_atom(S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        return _is_mult_atom_exp(x, bounds)
    if x == 0:
        raise DomainError("0 is not in the multiplicative monoid")
    if S.kind == QNN:
        return False
    if S.kind == NAT:
        return is_prime(x.numerator)
    if S.kind == CONDUCTED:
        r = S.r
        if r <= 1:
            return False  # antimatter
        r2 = r * r
        in_window = (x.denominator == 1 and is_prime(x.numerator) and x < r2) or (
            r <= x < r2
        )
        return in_window and _conducted_no_prime_cofactor(S, x, bounds)
    # cyclic
    if not S.d_gt_1:
        return is_prime(x.numerator) if x.denominator == 1 else False
    if not S.n_gt_1:
        core = 1
        sup = set(prime_factors(S.r_den))
        for p, e in prime_factors(x.numerator).items():
            if p not in sup:
                core *= p**e
        return is_prime(core)
    if is_mult_unit(S, x, bounds):
        return False
    res = mult_divisors(S, x, bounds)
    for y in res.items:
        if not is_mult_unit(S, y, bounds) and y != x:
            return False
    if res.complete:
        return True
    raise Inconclusive(f"no divisor of {format_rat(x)} found within bounds", bounds)


def _bounded_M_elements(limit: Rat, max_den: int) -> list[Rat]:
    out = []
    for b in range(1, max_den + 1):
        top = (limit * b).numerator // (limit * b).denominator
        for a in range(0, top + 1):
            q = Fraction(a, b)
            if q <= limit and mem_M(q):
                out.append(q)
    return sorted(set(out))


def _is_mult_atom_exp(x: ExpSum, bounds: Bounds) -> bool:
    if x.is_zero():
        raise DomainError("0 is not in the multiplicative monoid")
    if x == ExpSum.one():
        return False
    if len(x.terms) == 1:
        q, c = x.terms[0]
        if q == 0:
            return is_prime(c)
        if c > 1:
            return False  # c e^q = (c e^0)(e^q)
        # e^q: atom iff q has no split into two nonzero monoid members
        for a in _bounded_M_elements(q, bounds.max_den):
            if 0 < a < q and mem_M(q - a):
                return False
        raise Inconclusive("no decomposition of the exponent found within bounds", bounds)
    # multi-term: bounded search over single-term divisors
    top = max(q for q, _ in x.terms)
    for a in _bounded_M_elements(top, bounds.max_den):
        if a == 0:
            continue
        quot = _exp_div(x, ExpSum.single(a, 1))
        if quot is not None and quot != ExpSum.one():
            return False
    raise Inconclusive("no divisor of the exponential sum found within bounds", bounds)


def _exp_div(x: ExpSum, y: ExpSum) -> ExpSum | None:
    """Exact quotient x / y in the exponential semiring, or None.

    Greedy on the least exponent: the least term of the quotient is forced,
    so the division is deterministic and complete.
    """
    if y.is_zero():
        return None
    rem = dict(x.terms)
    out: dict[Rat, int] = {}
    y_terms = y.terms
    qy, cy = y_terms[0]
    while rem:
        qx = min(rem)
        cx = rem[qx]
        qz = qx - qy
        if qz < 0 or cx % cy != 0 or not mem_M(qz):
            return None
        cz = cx // cy
        out[qz] = out.get(qz, 0) + cz
        for qt, ct in y_terms:
            k = qt + qz
            have = rem.get(k, 0) - ct * cz
            if have < 0:
                return None
            if have == 0:
                rem.pop(k, None)
            else:
                rem[k] = have
    return ExpSum(tuple(out.items())) if out else None


# -- atom enumeration ----------------------------------------------------------


def _ceil(q: Rat) -> int:
    return -((-q.numerator) // q.denominator)


def _conducted_dense_atoms(S: Semialgebra, max_den: int, hi: Rat | None = None):
    """Non-unit-interval atoms of a conducted kind, denominator-capped."""
    r = S.r
    lo, up = r, r + 1
    out = []
    for b in range(1, max_den + 1):
        a0 = _ceil(lo * b)
        a1 = _ceil(up * b)  # exclusive
        for a in range(a0, a1):
            q = Fraction(a, b)
            if hi is not None and q > hi:
                continue
            if is_add_atom(S, q):
                out.append(q)
    return sorted(set(out))


def add_atoms(
    S: Semialgebra, bounds: Bounds = DEFAULT_BOUNDS, below: Rat | None = None
) -> EnumerationResult:
    """Additive atoms, enumerated within bounds (value cap ``below``)."""
    if S.kind == NAT:
        return EnumerationResult([Fraction(1)], True, bounds)
    if S.kind == QNN:
        return EnumerationResult([], True, bounds)
    if S.kind == CONDUCTED:
        if S.r < 1:
            return EnumerationResult([], True, bounds)
        items = _conducted_dense_atoms(S, bounds.max_den, below)
        if S.r > 1 and (below is None or below >= 1):
            items = [Fraction(1)] + [q for q in items if q != 1]
        return EnumerationResult(items, False, bounds)
    if S.kind == CYCLIC:
        if not S.d_gt_1:
            return EnumerationResult([Fraction(1)], True, bounds)
        if not S.n_gt_1:
            return EnumerationResult([], True, bounds)
        items = []
        for k in range(bounds.max_exp + 1):
            a = S.r**k
            if below is None or a <= below:
                items.append(a)
        return EnumerationResult(sorted(items), False, bounds)
    # exp: atoms are all e^q; enumerate exponents with capped denominators
    cap = below if below is not None else Fraction(2)
    items = [ExpSum.single(q, 1) for q in _bounded_M_elements(cap, bounds.max_den)]
    return EnumerationResult(items, False, bounds)


def _cyclic_members_upto(S: Semialgebra, cap: Rat, bounds: Bounds) -> list[Rat]:
    """All members <= cap.  Complete for r > 1; bounded (digit window) for
    r < 1 with prime denominator."""
    if S.r > 1:
        atoms = []
        k = 0
        while S.r**k <= cap:
            atoms.append(S.r**k)
            k += 1
        vals = {Fraction(0)}
        for a in atoms:
            frontier = set(vals)
            while frontier:
                new = {v + a for v in frontier}
                new = {v for v in new if v <= cap} - vals
                vals |= new
                frontier = new
        return sorted(vals)
    # r < 1: digit vectors over a bounded exponent window
    d = S.r_den
    out = set()
    m = 0
    while d**m <= bounds.max_den:
        m += 1
    m = max(m - 1, 0)
    c0_top = int(cap)
    ranges = [range(c0_top + 1)] + [range(d)] * m
    for digits in itertools.product(*ranges):
        v = _digits_value(S, digits)
        if v <= cap:
            out.add(v)
    return sorted(out)


def mult_atoms(
    S: Semialgebra, bounds: Bounds = DEFAULT_BOUNDS, below: Rat | None = None
) -> EnumerationResult:
    """Multiplicative atoms within bounds (value cap ``below``)."""
    cap = below if below is not None else Fraction(bounds.max_den)
    if S.kind in (NAT,) or (S.kind == CYCLIC and not S.d_gt_1):
        return EnumerationResult(
            [Fraction(p) for p in primes_upto(int(cap))], below is not None, bounds
        )
    if S.kind == QNN or (S.kind == CONDUCTED and S.r <= 1):
        return EnumerationResult([], True, bounds)
    if S.kind == CONDUCTED:
        r2 = S.r * S.r
        cands = {Fraction(p) for p in primes_upto(int(min(cap, r2)))}
        for b in range(1, bounds.max_den + 1):
            for a in range(_ceil(S.r * b), _ceil(r2 * b)):
                q = Fraction(a, b)
                if q <= cap:
                    cands.add(q)
        items = sorted(q for q in cands if q < r2 and is_mult_atom(S, q, bounds))
        return EnumerationResult(items, False, bounds)
    if S.kind == CYCLIC:
        if not S.n_gt_1:
            sup = set(prime_factors(S.r_den))
            items = [Fraction(p) for p in primes_upto(int(cap)) if p not in sup]
            return EnumerationResult(items, False, bounds)
        items = []
        for v in _cyclic_members_upto(S, cap, bounds):
            if v == 0:
                continue
            try:
                if is_mult_atom(S, v, bounds):
                    items.append(v)
            except Inconclusive:
                pass
        return EnumerationResult(items, False, bounds)
    # exp: the reciprocal-of-a-prime exponentials at desk scale
    items = [ExpSum.single(Fraction(1, p), 1) for p in primes_upto(bounds.max_den)]
    return EnumerationResult(items, False, bounds)


# -- additive factorizations ----------------------------------------------------


def _multiset_sums(atoms: list[Rat], target: Rat, bounds: Bounds):
    """All multisets over ``atoms`` summing to target.  Returns (items,
    truncated); items are tuples of (atom, count)."""
    atoms = sorted(set(atoms), reverse=True)
    items: list[tuple] = []
    truncated = False

    def rec(i: int, rem: Rat, used: int, acc: list):
        nonlocal truncated
        if rem == 0:
            items.append(tuple(acc))
            if len(items) >= bounds.max_count:
                truncated = True
            return
        if i >= len(atoms) or len(items) >= bounds.max_count:
            return
        a = atoms[i]
        top = int(rem / a)
        if used + 1 > bounds.max_len and top > 0:
            truncated = True
            return
        for c in range(top, -1, -1):
            if c and used + c > bounds.max_len:
                truncated = True
                continue
            if c:
                acc.append((a, c))
            rec(i + 1, rem - c * a, used + c, acc)
            if c:
                acc.pop()

    rec(0, target, 0, [])
    return items, truncated


def _conducted_add_engine(S: Semialgebra, x: Rat, bounds: Bounds):
    """Knapsack over the conducted atom set; complete exactly when no
    integer shift of x falls strictly inside a j-fold sum window (j >= 2)
    of the dense atom interval."""
    r = S.r
    incomplete = False
    for j in range(2, int(x / r) + 1):
        for k in range(int(x) + 1):
            v = x - k
            if j * r < v < j * (r + 1):
                incomplete = True
                break
        if incomplete:
            break
    if incomplete:
        atoms = list(_conducted_dense_atoms(S, bounds.max_den, x))
        if S.r > 1:
            atoms.append(Fraction(1))
        items, _ = _multiset_sums(atoms, x, bounds)
        return items, False
    # finite atom participation: 1 (if an atom), r, and x - k for integer k
    atoms = set()
    if S.r > 1:
        atoms.add(Fraction(1))
    if r <= x and is_add_atom(S, r):
        atoms.add(r)
    for k in range(int(x) + 1):
        v = x - k
        if v > 0 and contains(S, v) and is_add_atom(S, v):
            atoms.add(v)
    items, trunc = _multiset_sums(sorted(atoms), x, bounds)
    return items, not trunc


def _cyclic_rewrite_closure(S: Semialgebra, seed: dict[int, int], bounds: Bounds):
    """Closure of a digit multiset under the relation trading n(r) copies of
    r^i for d(r) copies of r^(i+1), both directions."""
    n, d = S.r_num, S.r_den
    start = tuple(sorted((i, c) for i, c in seed.items() if c))
    seen = {start}
    queue = [start]
    truncated = False
    while queue:
        cur = queue.pop()
        cur_d = dict(cur)
        for i, c in list(cur_d.items()):
            if c >= n:
                if i + 1 > bounds.max_exp:
                    truncated = True
                else:
                    nxt = dict(cur_d)
                    nxt[i] = c - n
                    nxt[i + 1] = nxt.get(i + 1, 0) + d
                    state = tuple(sorted((k, v) for k, v in nxt.items() if v))
                    if sum(v for _, v in state) > bounds.max_len:
                        truncated = True
                    elif state not in seen:
                        seen.add(state)
                        queue.append(state)
            if i >= 1 and c >= d:
                nxt = dict(cur_d)
                nxt[i] = c - d
                nxt[i - 1] = nxt.get(i - 1, 0) + n
                state = tuple(sorted((k, v) for k, v in nxt.items() if v))
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
        if len(seen) >= bounds.max_count:
            truncated = True
            break
    return seen, truncated


def add_factorizations(
    S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS
) -> EnumerationResult:
    """All additive factorizations of x within bounds."""
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        if x.is_zero():
            return EnumerationResult([Factorization((), "add")], True, bounds)
        atoms = tuple((ExpSum.single(q, 1), c) for q, c in x.terms)
        return EnumerationResult([Factorization(atoms, "add")], True, bounds)
    if x == 0:
        return EnumerationResult([Factorization((), "add")], True, bounds)
    if S.kind == NAT or (S.kind == CYCLIC and not S.d_gt_1):
        fact = Factorization(((Fraction(1), x.numerator),), "add")
        return EnumerationResult([fact], True, bounds)
    if S.kind == QNN or (S.kind == CONDUCTED and S.r < 1):
        return EnumerationResult([], True, bounds)  # antimatter
    if S.kind == CYCLIC and not S.n_gt_1:
        return EnumerationResult([], True, bounds)  # antimatter
    if S.kind == CONDUCTED:
        items, complete = _conducted_add_engine(S, x, bounds)
        facts = sorted(
            (Factorization(it, "add") for it in items), key=Factorization.sort_key
        )
        return EnumerationResult(facts, complete, bounds)
    # cyclic, n > 1, d > 1
    if S.r > 1:
        atoms = []
        k = 0
        while S.r**k <= x:
            atoms.append(S.r**k)
            k += 1
        items, trunc = _multiset_sums(atoms, x, bounds)
        facts = sorted(
            (Factorization(it, "add") for it in items), key=Factorization.sort_key
        )
        return EnumerationResult(facts, not trunc, bounds)
    if S.d_prime:
        digits = canonical_digits(S, x)
        seed = {i: c for i, c in enumerate(digits) if c}
        states, truncated = _cyclic_rewrite_closure(S, seed, bounds)
        facts = []
        for state in states:
            if sum(c for _, c in state) <= bounds.max_len:
                facts.append(
                    Factorization(tuple((S.r**i, c) for i, c in state), "add")
                )
            else:
                truncated = True
        facts.sort(key=Factorization.sort_key)
        return EnumerationResult(facts, not truncated, bounds)
    # composite denominator, r < 1: bounded digit search for seeds
    seeds = _cyclic_reps_bounded(S, x, bounds)
    all_states: set = set()
    truncated = True  # never provably complete here
    for seed in seeds:
        states, _ = _cyclic_rewrite_closure(S, seed, bounds)
        all_states |= states
    facts = sorted(
        (
            Factorization(tuple((S.r**i, c) for i, c in state), "add")
            for state in all_states
            if sum(c for _, c in state) <= bounds.max_len
        ),
        key=Factorization.sort_key,
    )
    return EnumerationResult(facts, False, bounds)


def _cyclic_reps_bounded(S: Semialgebra, x: Rat, bounds: Bounds):
    """All coefficient vectors over exponents <= max_exp representing x."""
    n, d = S.r_num, S.r_den
    M = bounds.max_exp
    scaled = x * d**M
    if scaled.denominator != 1:
        return []
    inv_n = pow(n, -1, d)
    out = []

    def rec(i: int, X: int, acc: dict):
        if i == 0:
            if X >= 0:
                acc2 = dict(acc)
                if X:
                    acc2[0] = X
                out.append(acc2)
            return
        base = (X * pow(inv_n, i, d)) % d
        w = pow(n, i)
        c = base
        while c * w <= X:
            if c:
                acc[i] = c
            rec(i - 1, (X - c * w) // d, acc)
            acc.pop(i, None)
            c += d
        if base == 0:
            return

    rec(M, scaled.numerator, {})
    return out


def add_length_set(
    S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS
) -> tuple[set[int], bool]:
    res = add_factorizations(S, x, bounds)
    return {f.length for f in res.items}, res.complete


# -- divisor enumeration ---------------------------------------------------------


def add_divisors(
    S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS
) -> EnumerationResult:
    """Elements d of S with x - d in S."""
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        items = []
        coeff_ranges = [range(c + 1) for _, c in x.terms]
        truncated = False
        for combo in itertools.product(*coeff_ranges):
            if len(items) >= bounds.max_count:
                truncated = True
                break
            terms = tuple(
                (q, c) for (q, _), c in zip(x.terms, combo) if c
            )
            items.append(ExpSum(terms))
        items.sort(key=elem_key)
        return EnumerationResult(items, not truncated, bounds)
    if S.kind == NAT or (S.kind == CYCLIC and not S.d_gt_1):
        items = [Fraction(k) for k in range(x.numerator + 1)]
        return EnumerationResult(items, True, bounds)
    if S.kind == QNN or (S.kind == CONDUCTED and S.r < 1):
        items = _den_scan(x, bounds.max_den)
        return EnumerationResult(items, False, bounds)
    if S.kind == CONDUCTED:
        return _conducted_add_divisors(S, x, bounds)
    # cyclic
    if S.r > 1 and S.n_gt_1:
        members = _cyclic_members_upto(S, x, bounds)
        items = [v for v in members if contains(S, x - v)]
        return EnumerationResult(items, True, bounds)
    # r < 1: in the atomic cases every divisor is a sub-multiset sum of some
    # factorization, so a complete factorization closure gives complete divisors
    if S.n_gt_1:
        fz = add_factorizations(S, x, bounds)
        if fz.complete:
            sums = set()
            for f in fz.items:
                partial = {Fraction(0)}
                for a, c in f.atoms:
                    partial = {p + k * a for p in partial for k in range(c + 1)}
                sums |= partial
            return EnumerationResult(sorted(sums), True, bounds)
    items = []
    sup = set(prime_factors(S.r_den))
    dens = [
        b
        for b in range(1, bounds.max_den + 1)
        if set(prime_factors(b)) <= sup
    ]
    seen = set()
    for b in dens:
        for a in range(int(x * b) + 1):
            v = Fraction(a, b)
            if v in seen:
                continue
            seen.add(v)
            try:
                if contains(S, v, bounds) and contains(S, x - v, bounds):
                    items.append(v)
            except Inconclusive:
                pass
    return EnumerationResult(sorted(set(items)), False, bounds)


def _den_scan(x: Rat, max_den: int) -> list[Rat]:
    out = set()
    for b in range(1, max_den + 1):
        for a in range(int(x * b) + 1):
            out.add(Fraction(a, b))
    return sorted(out)


def _conducted_add_divisors(S: Semialgebra, x: Rat, bounds: Bounds):
    r = S.r
    items = set()
    for k in range(int(x) + 1):
        if contains(S, x - Fraction(k)):
            items.add(Fraction(k))
        v = x - k
        if v > 0 and v.denominator > 1 and v >= r:
            items.add(v)  # cofactor is the integer k
    lo, hi = r, x - r
    complete = not (hi > lo)
    if hi == lo and contains(S, r) and contains(S, x - r):
        items.add(r)
    if hi > lo:
        for b in range(1, bounds.max_den + 1):
            for a in range(_ceil(lo * b), int(hi * b) + 1):
                v = Fraction(a, b)
                if lo <= v <= hi and contains(S, v) and contains(S, x - v):
                    items.add(v)
    return EnumerationResult(sorted(items), complete, bounds)


def mult_divisors(
    S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS
) -> EnumerationResult:
    """Nonzero members d with x / d in S."""
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        return _exp_mult_divisors(x, bounds)
    if x == 0:
        raise DomainError("0 is excluded from multiplicative operations")
    if S.kind == NAT or (S.kind == CYCLIC and not S.d_gt_1):
        n = x.numerator
        items = [Fraction(k) for k in range(1, n + 1) if n % k == 0]
        return EnumerationResult(items, True, bounds)
    if S.kind == QNN or (S.kind == CONDUCTED and S.r < 1):
        items = [v for v in _den_scan(x, bounds.max_den) if v > 0]
        return EnumerationResult(items, False, bounds)
    if S.kind == CONDUCTED and S.r == 1:
        items = [
            v
            for v in _den_scan(x, bounds.max_den)
            if v > 0 and contains(S, v) and contains(S, x / v)
        ]
        return EnumerationResult(items, False, bounds)
    if S.kind == CONDUCTED:
        return _conducted_mult_divisors(S, x, bounds)
    # cyclic
    if not S.n_gt_1:
        # divisors are x/s for members s; bounded scan with capped denominators
        items = set()
        sup = set(prime_factors(S.r_den))
        dens = [
            b for b in range(1, bounds.max_den + 1) if set(prime_factors(b)) <= sup
        ]
        cap = x * bounds.max_den
        for b in dens:
            top = (cap * b).numerator // (cap * b).denominator
            for a in range(1, top + 1):
                v = Fraction(a, b)
                if contains(S, v, bounds) and contains(S, x / v, bounds):
                    items.add(v)
        return EnumerationResult(sorted(items), False, bounds)
    if S.r > 1:
        members = _cyclic_members_upto(S, x, bounds)
        items = [v for v in members if v > 0 and contains(S, x / v)]
        return EnumerationResult(items, True, bounds)
    if S.d_prime:
        # candidate divisors have digit vectors capped by the top index of x
        digits = canonical_digits(S, x)
        m0 = max((i for i, c in enumerate(digits) if c), default=0)
        d = S.r_den
        b0_top = int(x / S.r**m0)
        items = []
        ranges = [range(b0_top + 1)] + [range(d)] * m0
        for vec in itertools.product(*ranges):
            v = _digits_value(S, vec)
            if v == 0:
                continue
            q = x / v
            try:
                if contains(S, q):
                    items.append(v)
            except Inconclusive:
                pass
        return EnumerationResult(sorted(set(items)), True, bounds)
    # composite denominator, r < 1: bounded scan
    items = set()
    d = S.r_den
    M = 0
    while d ** (M + 1) <= bounds.max_den:
        M += 1
    cap = max(int(x / S.r**M), int(x) + 1)
    for b_exp in range(M + 1):
        den = d**b_exp
        for a in range(1, cap * den + 1):
            v = Fraction(a, den)
            try:
                if contains(S, v, bounds) and contains(S, x / v, bounds):
                    items.add(v)
            except Inconclusive:
                pass
    return EnumerationResult(sorted(items), False, bounds)


def _conducted_mult_divisors(S: Semialgebra, x: Rat, bounds: Bounds):
    r = S.r
    r2 = r * r
    items = set()
    for k in range(1, int(x) + 1):
        if contains(S, Fraction(k)) and contains(S, x / k):
            items.add(Fraction(k))
        v = x / k
        if v.denominator > 1 and contains(S, v):
            items.add(v)  # cofactor k is an integer member
    for v in (r, x / r):
        if v > 0 and contains(S, v) and contains(S, x / v):
            items.add(v)
    complete = x <= r2
    if not complete:
        lo, hi = r, x / r
        for b in range(1, bounds.max_den + 1):
            for a in range(_ceil(lo * b), int(hi * b) + 1):
                v = Fraction(a, b)
                if v > 0 and contains(S, v) and contains(S, x / v):
                    items.add(v)
    return EnumerationResult(sorted(items), complete, bounds)


def _exp_mult_divisors(x: ExpSum, bounds: Bounds):
    items = {ExpSum.one()}
    top = max((q for q, _ in x.terms), default=Fraction(0))
    coeff_cap = max((c for _, c in x.terms), default=1)
    for q in _bounded_M_elements(top, bounds.max_den):
        for c in range(1, coeff_cap + 1):
            y = ExpSum.single(q, c)
            if _exp_div(x, y) is not None:
                items.add(y)
    if _exp_div(x, x) is not None:
        items.add(x)
    return EnumerationResult(sorted(items, key=elem_key), False, bounds)


# -- multiplicative factorizations ---------------------------------------------


def mult_factorizations(
    S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS
) -> EnumerationResult:
    _require_member(S, x, bounds)
    if isinstance(x, ExpSum):
        return _exp_mult_factorizations(x, bounds)
    if x == 0:
        raise DomainError("0 is excluded from multiplicative operations")
    if is_mult_unit(S, x, bounds):
        raise DomainError("units have no multiplicative factorizations")
    if S.kind == NAT or (S.kind == CYCLIC and not S.d_gt_1):
        atoms = tuple(
            (Fraction(p), e) for p, e in sorted(prime_factors(x.numerator).items())
        )
        return EnumerationResult([Factorization(atoms, "mult")], True, bounds)
    if S.kind == QNN or (S.kind == CONDUCTED and S.r <= 1):
        return EnumerationResult([], True, bounds)  # antimatter
    # generic DFS over atom divisors
    complete_flag = True
    items: list[Factorization] = []

    def atom_divisors(v):
        nonlocal complete_flag
        res = mult_divisors(S, v, bounds)
        if not res.complete:
            complete_flag = False
        out = []
        for y in res.items:
            try:
                if is_mult_atom(S, y, bounds):
                    out.append(y)
            except Inconclusive:
                complete_flag = False
        return out

    def rec(v, last, acc, used):
        nonlocal complete_flag
        if is_mult_unit(S, v, bounds):
            if v == 1:
                ms: dict = {}
                for a in acc:
                    ms[a] = ms.get(a, 0) + 1
                items.append(Factorization(tuple(ms.items()), "mult"))
            else:
                complete_flag = False  # non-trivial unit left over
            return
        if used >= bounds.max_len or len(items) >= bounds.max_count:
            complete_flag = False
            return
        for a in atom_divisors(v):
            if last is not None and elem_key(a) < elem_key(last):
                continue
            q = v / a
            try:
                if contains(S, q, bounds):
                    rec(q, a, acc + [a], used + 1)
            except Inconclusive:
                complete_flag = False

    rec(x, None, [], 0)
    uniq = sorted(set(items), key=Factorization.sort_key)
    return EnumerationResult(uniq, complete_flag, bounds)


def _exp_mult_factorizations(x: ExpSum, bounds: Bounds):
    if len(x.terms) != 1:
        raise Unsupported("multiplicative factorization only for single-term inputs")
    q, c = x.terms[0]
    if q == 0 and c == 1:
        raise DomainError("units have no multiplicative factorizations")
    int_atoms = tuple(
        (ExpSum.single(Fraction(0), p), e) for p, e in sorted(prime_factors(c).items())
    )
    if q == 0:
        return EnumerationResult([Factorization(int_atoms, "mult")], True, bounds)
    gens = [Fraction(1, p) for p in primes_upto(bounds.max_den)]
    combos, _ = _multiset_sums(gens, q, bounds)
    items = []
    for combo in combos:
        atoms = tuple((ExpSum.single(g, 1), k) for g, k in combo) + int_atoms
        items.append(Factorization(atoms, "mult"))
    items.sort(key=Factorization.sort_key)
    return EnumerationResult(items, False, bounds)


def mult_length_set(
    S: Semialgebra, x: Element, bounds: Bounds = DEFAULT_BOUNDS
) -> tuple[set[int], bool]:
    if not isinstance(x, ExpSum) and is_mult_unit(S, x, bounds):
        return {0}, True
    res = mult_factorizations(S, x, bounds)
    return {f.length for f in res.items}, res.complete


# -- ACCP probe -----------------------------------------------------------------


@dataclass
class ChainReport:
    """A strictly ascending chain of principal ideals, or None when the
    bounded greedy search found nothing (which proves nothing)."""

    chain: list
    cofactors: list
    mode: str


def _add_successors(S: Semialgebra, x: Element, bounds: Bounds):
    """Candidate next elements x' with x - x' a nonzero member."""
    if isinstance(x, ExpSum):
        out = []
        for q, c in x.terms:
            rest = tuple((qq, cc) for qq, cc in x.terms if qq != q) + (
                ((q, c - 1),) if c > 1 else ()
            )
            y = ExpSum(tuple(t for t in rest if t[1] > 0))
            out.append((y, ExpSum.single(q, 1)))
        return out
    out = []
    if S.kind == QNN or (S.kind == CONDUCTED and S.r < 1):
        if x > 0:
            out.append((x / 2, x / 2))
        return out
    if S.kind == CYCLIC and S.d_gt_1 and S.r < 1 and x > 0:
        # the shrink-by-r descent: x = x*r + x*(1-r) whenever the cofactor
        # stays inside S; this is the non-stabilizing chain shape
        cof = x * (1 - S.r)
        try:
            if contains(S, cof, bounds) and contains(S, x * S.r, bounds):
                out.append((x * S.r, cof))
        except Inconclusive:
            pass
        if not S.n_gt_1:
            return out
    atoms = add_atoms(S, bounds, below=x).items
    for a in sorted(atoms, reverse=True):
        y = x - a
        if y < 0 or y == x:
            continue
        try:
            if contains(S, y, bounds):
                out.append((y, a))
        except Inconclusive:
            pass
    return out


def _mult_successors(S: Semialgebra, x: Element, bounds: Bounds):
    out = []
    if isinstance(x, ExpSum):
        res = _exp_mult_divisors(x, bounds)
        for y in res.items:
            z = _exp_div(x, y)
            if z is not None and y != x and z != ExpSum.one():
                out.append((y, z))
        return out
    res = mult_divisors(S, x, bounds)
    for y in sorted(res.items, reverse=True):
        z = x / y
        try:
            if y != x and not is_mult_unit(S, z, bounds):
                out.append((y, z))
        except (Inconclusive, DomainError):
            pass
    return out


def _is_unit_for_mode(S, x, mode, bounds):
    if mode == "add":
        return (x == 0) if not isinstance(x, ExpSum) else x.is_zero()
    try:
        return is_mult_unit(S, x, bounds)
    except DomainError:
        return False


def accp_probe(
    S: Semialgebra,
    mode: str,
    start: Element,
    depth: int,
    bounds: Bounds = DEFAULT_BOUNDS,
) -> ChainReport | None:
    """Search for a strictly ascending chain of principal ideals with
    ``depth`` proper-divisibility steps (depth+1 elements, all non-units).

    A result of None is inconclusive and never a proof of the ACCP.
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    _require_member(S, start, bounds)
    succ = _add_successors if mode == "add" else _mult_successors

    # in these kinds every nonzero member is >= 1, so an additive chain from
    # x has at most x - 1 steps
    sparse = S.kind == NAT or (
        S.kind == CONDUCTED and S.r >= 1
    ) or (S.kind == CYCLIC and S.r > 1)

    def rec(x, chain, cofs):
        if len(chain) > depth:
            return chain, cofs
        need = depth + 1 - len(chain)
        if mode == "add" and sparse and not isinstance(x, ExpSum) and need > x - 1:
            return None
        for y, z in succ(S, x, bounds):
            if _is_unit_for_mode(S, y, mode, bounds):
                continue
            got = rec(y, chain + [y], cofs + [z])
            if got is not None:
                return got
        return None

    if _is_unit_for_mode(S, start, mode, bounds):
        return None
    got = rec(start, [start], [])
    if got is None:
        return None
    return ChainReport(got[0], got[1], mode)
