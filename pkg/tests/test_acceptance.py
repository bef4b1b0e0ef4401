"""Acceptance suite.

Each test covers one numbered acceptance criterion; conftest.py prints a
single ``ACCEPTANCE nn PASS``/``FAIL`` line per criterion at the end of the
run.  Running this file directly also prints the lines.
"""

import itertools
import random
import sys
from fractions import Fraction

import semifact as sf
from semifact import verifier
from semifact.semialgebras import Bounds, _cyclic_members_upto, _digits_value

S23 = sf.parse_semialgebra("cyclic:2/3")
S32 = sf.parse_semialgebra("cyclic:3/2")
NAT = sf.parse_semialgebra("nat")
Q2 = sf.parse_semialgebra("conducted:2")
EXP = sf.parse_semialgebra("exp")
R = Fraction(2, 3)


def criterion(num):
    """Tags a test with its criterion number for standalone runs."""

    def deco(fn):
        fn.criterion = num
        return fn

    return deco


@criterion(1)
def test_01_cyclic_add_atom_census():
    powers = {R**k for k in range(11)}

    def check(vec):
        x = _digits_value(S23, vec)
        assert sf.is_add_atom(S23, x) == (x in powers), vec

    # exhaustive at exponent <= 7, then seeded random vectors out to 10
    for tail in itertools.product(range(3), repeat=7):
        for c0 in range(4):
            check((c0,) + tail)
    rng = random.Random(1)
    for k in range(11):
        check((0,) * k + (1,))
    for _ in range(2000):
        check(tuple(rng.randrange(0, 4 if i == 0 else 3) for i in range(11)))


@criterion(2)
def test_02_canonical_digit_uniqueness():
    rng = random.Random(2)
    scale = 3**8
    weights = [2**i * 3 ** (8 - i) for i in range(1, 9)]
    tail_sums = [
        sum(c * w for c, w in zip(vec, weights))
        for vec in itertools.product(range(3), repeat=8)
    ]
    for _ in range(200):
        digits = [rng.randrange(0, 5)] + [rng.randrange(0, 3) for _ in range(8)]
        x = _digits_value(S23, digits)
        canon = sf.canonical_digits(S23, x)
        assert _digits_value(S23, canon) == x
        # brute force: exactly one digit-constrained vector hits x
        n = x * scale
        hits = sum(
            1 for s in tail_sums if n >= s and (n - s) % scale == 0
        )
        assert hits == 1, x


@criterion(3)
def test_03_reducedness_boundary():
    half = sf.parse_semialgebra("cyclic:1/2")
    assert sf.is_mult_unit(half, Fraction(1, 2))
    b = Bounds(max_exp=8)
    for S in (S23, S32, sf.parse_semialgebra("cyclic:5/4")):
        for x in _cyclic_members_upto(S, Fraction(4), b):
            if x not in (0, 1):
                assert not sf.is_mult_unit(S, x, b), (str(S), x)


@criterion(4)
def test_04_conducted_atom_predicates():
    grid = sorted(
        {Fraction(a, b) for b in range(1, 13) for a in range(0, 5 * b + 1)}
    )
    members = [x for x in grid if sf.contains(Q2, x)]
    for x in members:
        assert sf.is_add_atom(Q2, x) == (x == 1 or 2 < x < 3), x
    # divisor-scan oracle for multiplicative atoms
    pairs = sorted({Fraction(a, b) for b in range(1, 25) for a in range(2 * b, 3 * b)})
    for x in members:
        if x in (0, 1):
            continue
        splittable = any(
            a <= x / 2 and sf.contains(Q2, x / a) and x / a > 1 for a in pairs
        )
        assert sf.is_mult_atom(Q2, x) == (not splittable), x
    for a in (Fraction(2), Fraction(3), Fraction(7, 2)):
        assert sf.is_mult_atom(Q2, a)
    for a in (Fraction(4), Fraction(9, 2)):
        assert not sf.is_mult_atom(Q2, a)


@criterion(5)
def test_05_conducted_not_ffm():
    x = Fraction(9, 2)
    counts = []
    for D in (6, 10, 20):
        res = sf.add_factorizations(Q2, x, Bounds(max_len=4, max_den=D))
        assert not res.complete
        twos = [f for f in res.items if f.length == 2]
        for f in twos:
            parts = [a for a, c in f.atoms for _ in range(c)]
            assert len(parts) == 2 and sum(parts) == x
            assert all(2 < p <= Fraction(5, 2) for p in parts), f
        counts.append(len(twos))
    assert counts[0] < counts[1] < counts[2], counts


@criterion(6)
def test_06_accp_failure():
    got = sf.accp_probe(S23, "add", Fraction(2), 8)
    assert got is not None and len(got.chain) == 9
    assert got.chain == [2 * R**k for k in range(9)]
    for k in range(8):
        # 2 r^k = r^(k+1) + 2 r^(k+1), exactly
        assert 2 * R**k == R ** (k + 1) + 2 * R ** (k + 1)
        assert got.chain[k] == got.chain[k + 1] + got.cofactors[k]
    assert sf.accp_probe(NAT, "add", Fraction(5), 8) is None
    assert sf.accp_probe(S32, "add", Fraction(3), 8) is None
    assert sf.accp_probe(Q2, "add", Fraction(9, 2), 8) is None


@criterion(7)
def test_07_matrix_atom_characterization():
    rep = verifier.check_atom_characterization(2, 5)
    assert rep.status == "Pass" and rep.instances_tested == 150
    rep = verifier.check_atom_characterization(3, 2)
    assert rep.status == "Pass" and rep.instances_tested == 216


@criterion(8)
def test_08_not_half_factorial():
    for S in (NAT, Q2):
        for m in (2, 3, 4):
            A, long_f, short_f = sf.hfm_counterexample(S, m)
            lengths, complete = sf.rigid_length_set(A)
            assert complete
            assert short_f.length in lengths and long_f.length in lengths
            assert long_f.length - short_f.length == m - 1
            w = sf.weight(A)
            assert all(l <= w for l in lengths)


@criterion(9)
def test_09_not_almost_prime_like():
    got = sf.almost_prime_like_probe(sf.parse_matrix("1,2/3;0,1", S23))
    assert got is not None
    assert sf.format_matrix(got[0]) == "2/3,0;0,1"
    assert sf.format_matrix(got[1]) == "1,1;0,1"
    assert sf.almost_prime_like_probe(sf.parse_matrix("1,1;0,1", NAT)) is None
    assert sf.almost_prime_like_probe(sf.parse_matrix("2,0;0,1", NAT)) is None


@criterion(10)
def test_10_sigma_superadditive():
    rep = verifier.check_sigma_superadditivity(500, seed=1)
    assert rep.status == "Pass" and rep.instances_tested == 500


@criterion(11)
def test_11_formal_exponentials():
    rng = random.Random(4)
    qs = [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(5, 6), Fraction(3, 2)]
    for _ in range(20):
        terms = tuple(
            (q, rng.randrange(1, 4)) for q in rng.sample(qs, rng.randrange(1, 4))
        )
        x = sf.ExpSum(terms)
        res = sf.add_factorizations(EXP, x)
        assert res.complete and len(res.items) == 1
        assert res.items[0].length == sum(c for _, c in x.terms)
    res = sf.mult_factorizations(EXP, sf.ExpSum.single(Fraction(1), 1), Bounds(max_den=7))
    assert not res.complete
    assert {2, 3, 5, 7} <= {f.length for f in res.items}


@criterion(12)
def test_12_verifier_suite_no_failures():
    reports = verifier.run_all(seed=1)
    assert all(r.status != "Fail" for r in reports), [
        r.check_name for r in reports if r.status == "Fail"
    ]


if __name__ == "__main__":
    failures = 0
    for _name in sorted(n for n in dir() if n.startswith("test_")):
        _fn = globals()[_name]
        try:
            _fn()
            _status = "PASS"
        except BaseException:
            _status = "FAIL"
            failures += 1
        print(f"ACCEPTANCE {_fn.criterion:02d} {_status}")
    sys.exit(1 if failures else 0)
