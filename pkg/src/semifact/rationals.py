"""Exact nonnegative rational arithmetic and small prime utilities.

Elements of every rational semialgebra are carried by ``fractions.Fraction``
(arbitrary precision, always in lowest terms).  This module adds the
nonnegativity discipline, the numerator/denominator decomposition, prime
support, and text parsing/formatting used by the CLI.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

Rat = Fraction  # nonnegative by construction via make_rat / parse_rat


def make_rat(n: int, d: int = 1) -> Rat:
    """Canonical nonnegative rational n/d; rejects d < 1 and n < 0."""
    if d == 0:
        raise DomainError("zero denominator")
    if d < 0:
        raise DomainError("denominator must be positive")
    if n < 0:
        raise DomainError("negative rationals are not representable")
    return Fraction(n, d)


def num_den(q: Rat) -> tuple[int, int]:
    """The coprime pair (numerator, denominator) of a positive rational."""
    if q <= 0:
        raise DomainError("num/den are defined only for positive rationals")
    return q.numerator, q.denominator


def support(q: Rat) -> frozenset[int]:
    """Primes dividing the numerator or the denominator of q > 0."""
    if q <= 0:
        raise DomainError("support is defined only for positive rationals")
    return frozenset(prime_factors(q.numerator)) | frozenset(
        prime_factors(q.denominator)
    )


def parse_rat(text: str) -> Rat:
    """Parse "n/d" or "n" into a nonnegative rational."""
    text = text.strip()
    try:
        if "/" in text:
            n_str, d_str = text.split("/", 1)
            return make_rat(int(n_str), int(d_str))
        return make_rat(int(text))
    except ValueError as e:
        raise DomainError(f"bad rational literal {text!r}") from e


def format_rat(q: Rat) -> str:
    """Lowest-terms "n/d", or bare "n" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- prime helpers (trial division; fine at desk scale) ----------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit (simple sieve)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise DomainError("prime_factors expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in prime_factors(n).values()) if n > 1 else n == 1
