import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import semifact as sf
from semifact.errors import DomainError, Inconclusive, NotMember, Unsupported
from semifact.semialgebras import Bounds, _digits_value

S23 = sf.parse_semialgebra("cyclic:2/3")
S32 = sf.parse_semialgebra("cyclic:3/2")
Q2 = sf.parse_semialgebra("conducted:2")
NAT = sf.parse_semialgebra("nat")
EXP = sf.parse_semialgebra("exp")
R = Fraction(2, 3)


def random_member_23(rng, max_exp=8):
    digits = [rng.randrange(0, 4)] + [rng.randrange(0, 3) for _ in range(max_exp)]
    return _digits_value(S23, digits)


# -- descriptors ---------------------------------------------------------------


def test_descriptor_validation():
    with pytest.raises(DomainError):
        sf.parse_semialgebra("cyclic:1")
    with pytest.raises(DomainError):
        sf.parse_semialgebra("cyclic:0")
    with pytest.raises(DomainError):
        sf.parse_semialgebra("bogus")
    assert sf.parse_semialgebra("cyclic:4/6").r == Fraction(2, 3)  # lowest terms
    assert str(Q2) == "conducted:2"


# -- membership -----------------------------------------------------------------


def test_membership_examples():
    assert sf.contains(S23, Fraction(14, 9))
    assert not sf.contains(S23, Fraction(1, 3))
    assert sf.contains(Q2, Fraction(9, 2)) and sf.contains(Q2, Fraction(3))
    assert not sf.contains(Q2, Fraction(3, 2))
    assert sf.contains(NAT, Fraction(7)) and not sf.contains(NAT, Fraction(1, 2))
    assert sf.contains(S32, Fraction(5, 2))  # 1 + 3/2
    assert not sf.contains(S32, Fraction(1, 2))
    # composite denominator below the conductor: only bounded search available
    S56 = sf.parse_semialgebra("cyclic:5/6")
    assert sf.contains(S56, Fraction(5, 6))
    with pytest.raises(Inconclusive):
        sf.contains(S56, Fraction(7, 6))


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_membership_closed_under_plus_times(rng):
    for S, sample in (
        (S23, lambda: random_member_23(rng, 4)),
        (S32, lambda: Fraction(rng.randrange(0, 3)) + Fraction(3, 2) * rng.randrange(0, 3)),
        (Q2, lambda: rng.choice([Fraction(0), Fraction(1), Fraction(2), Fraction(5, 2), Fraction(7, 3)])),
    ):
        x, y = sample(), sample()
        assert sf.contains(S, x + y)
        assert sf.contains(S, x * y)


# -- canonical digits -------------------------------------------------------------


def test_digit_examples():
    assert sf.canonical_digits(S23, Fraction(4, 3)) == (0, 2)
    assert sf.canonical_digits(S23, Fraction(2, 3)) == (0, 1)
    assert sf.canonical_digits(S23, Fraction(0)) == (0,)
    with pytest.raises(NotMember):
        sf.canonical_digits(S23, Fraction(1, 3))
    with pytest.raises(Unsupported):
        sf.canonical_digits(sf.parse_semialgebra("cyclic:5/6"), Fraction(5, 6))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=6), st.integers(0, 20))
def test_digit_reconstruction(tail, c0):
    x = _digits_value(S23, [c0] + tail)
    digits = sf.canonical_digits(S23, x)
    assert _digits_value(S23, digits) == x
    assert all(0 <= c < 3 for c in digits[1:])


def test_digit_uniqueness_small():
    # brute force: among all digit-constrained vectors at exponent <= 5 there
    # is exactly one per value
    seen = {}
    for tail in itertools.product(range(3), repeat=5):
        for c0 in range(4):
            x = _digits_value(S23, (c0,) + tail)
            canon = sf.canonical_digits(S23, x)
            key = tuple(canon)
            if x in seen:
                assert seen[x] == key
            seen[x] = key


# -- additive atoms and units ------------------------------------------------------


def test_add_atom_closed_forms():
    assert all(sf.is_add_atom(S23, R**k) for k in range(8))
    assert not sf.is_add_atom(S23, Fraction(4, 3))
    assert not sf.is_add_atom(S23, Fraction(0))
    assert sf.is_add_atom(NAT, Fraction(1)) and not sf.is_add_atom(NAT, Fraction(2))
    assert sf.is_add_atom(Q2, Fraction(1))
    assert sf.is_add_atom(Q2, Fraction(5, 2)) and sf.is_add_atom(Q2, Fraction(7, 3))
    assert not sf.is_add_atom(Q2, Fraction(2))  # the integer in the window
    assert not sf.is_add_atom(Q2, Fraction(7, 2))
    assert not sf.is_add_atom(sf.parse_semialgebra("qnn"), Fraction(1, 7))


def test_units():
    half = sf.parse_semialgebra("cyclic:1/2")
    assert sf.is_mult_unit(half, Fraction(1, 2))
    assert sf.is_mult_unit(half, Fraction(4))
    assert not sf.is_mult_unit(half, Fraction(3))
    assert sf.is_mult_unit(sf.parse_semialgebra("qnn"), Fraction(7, 5))
    for S in (S23, S32, NAT, Q2):
        assert sf.is_mult_unit(S, Fraction(1))
        assert not sf.is_mult_unit(S, Fraction(2))


# -- factorization engines ----------------------------------------------------------


def atoms_of(f):
    return {(a, c) for a, c in f.atoms}


def test_add_factorizations_examples():
    res = sf.add_factorizations(NAT, Fraction(3))
    assert res.complete and len(res.items) == 1
    assert atoms_of(res.items[0]) == {(Fraction(1), 3)}

    res = sf.add_factorizations(S32, Fraction(3))
    assert res.complete
    assert {frozenset(atoms_of(f)) for f in res.items} == {
        frozenset({(Fraction(1), 3)}),
        frozenset({(Fraction(3, 2), 2)}),
    }

    res = sf.add_factorizations(S23, Fraction(0))
    assert res.complete and res.items[0].atoms == ()


def test_add_factorizations_sum_to_x():
    rng = random.Random(7)
    for _ in range(25):
        x = random_member_23(rng, 4)
        res = sf.add_factorizations(S23, x, Bounds(max_len=10))
        assert res.items, x
        for f in res.items:
            assert sum((a * c for a, c in f.atoms), Fraction(0)) == x
            assert all(sf.is_add_atom(S23, a) for a, c in f.atoms)


def test_add_length_growth_43():
    lengths, complete = sf.add_length_set(S23, Fraction(4, 3), Bounds(max_len=8))
    assert not complete
    assert lengths == {2, 3, 4, 5, 6, 7, 8}


def test_antimatter_kinds():
    for name in ("qnn", "conducted:1/2", "cyclic:1/2"):
        S = sf.parse_semialgebra(name)
        res = sf.add_factorizations(S, Fraction(3, 2))
        assert res.complete and res.items == []


# -- divisors --------------------------------------------------------------------


def test_add_divisors():
    res = sf.add_divisors(NAT, Fraction(4))
    assert res.complete and res.items == [Fraction(k) for k in range(5)]

    res = sf.add_divisors(Q2, Fraction(7, 2))
    assert res.complete and res.items == [Fraction(0), Fraction(1), Fraction(5, 2), Fraction(7, 2)]

    res = sf.add_divisors(Q2, Fraction(9, 2))
    assert not res.complete  # dense window (2, 5/2]

    res = sf.add_divisors(S23, R)
    assert res.complete and res.items == [Fraction(0), R]


def test_mult_divisors():
    res = sf.mult_divisors(NAT, Fraction(12))
    assert res.complete and res.items == [Fraction(k) for k in (1, 2, 3, 4, 6, 12)]

    res = sf.mult_divisors(S23, Fraction(4, 9))
    assert res.complete and set(res.items) == {Fraction(1), R, Fraction(4, 9)}

    res = sf.mult_divisors(Q2, Fraction(7, 2))
    assert res.complete and set(res.items) == {Fraction(1), Fraction(7, 2)}


def test_mult_atoms_and_factorizations():
    assert sf.is_mult_atom(S23, R)
    assert not sf.is_mult_atom(S23, Fraction(4, 9))
    assert sf.is_mult_atom(S23, Fraction(5, 3))  # 1 + r, indivisible
    assert sf.is_mult_atom(NAT, Fraction(7)) and not sf.is_mult_atom(NAT, Fraction(6))

    res = sf.mult_factorizations(NAT, Fraction(12))
    assert res.complete and atoms_of(res.items[0]) == {(Fraction(2), 2), (Fraction(3), 1)}

    res = sf.mult_factorizations(S23, Fraction(4, 9))
    assert res.complete and atoms_of(res.items[0]) == {(R, 2)}

    with pytest.raises(DomainError):
        sf.mult_factorizations(NAT, Fraction(1))


# -- formal exponential sums ---------------------------------------------------------


def test_mem_M():
    assert sf.mem_M(Fraction(0)) and sf.mem_M(Fraction(5))
    assert sf.mem_M(Fraction(1, 2)) and sf.mem_M(Fraction(5, 6))
    assert sf.mem_M(Fraction(7, 6))
    assert not sf.mem_M(Fraction(1, 6))  # 1 not in <2, 3>
    assert not sf.mem_M(Fraction(1, 4))  # denominator not squarefree


def test_expsum_arithmetic():
    x = sf.parse_element("e:{1/2:1}")
    y = sf.parse_element("e:{1/3:2}")
    assert x.mul(y) == sf.ExpSum(((Fraction(5, 6), 2),))
    assert x.add(x) == sf.ExpSum(((Fraction(1, 2), 2),))
    assert sf.format_element(y) == "e:{1/3:2}"
    assert sf.parse_element(sf.format_element(x.mul(y))) == x.mul(y)
    with pytest.raises(DomainError):
        sf.ExpSum(((Fraction(1, 4), 1),))


def test_exp_add_factorization_unique():
    x = sf.parse_element("e:{1/2:2,5/6:1}")
    res = sf.add_factorizations(EXP, x)
    assert res.complete and len(res.items) == 1
    assert res.items[0].length == 3


def test_exp_mult_lengths():
    e1 = sf.ExpSum.single(Fraction(1), 1)
    res = sf.mult_factorizations(EXP, e1, Bounds(max_den=5))
    lengths = {f.length for f in res.items}
    assert {2, 3, 5} <= lengths and not res.complete
    with pytest.raises(Unsupported):
        sf.mult_factorizations(EXP, sf.parse_element("e:{0:1,1/2:1}"))


# -- accp probes ------------------------------------------------------------------


def test_accp_probe_known_chains():
    got = sf.accp_probe(S23, "add", Fraction(2), 5)
    assert got.chain[:5] == [2 * R**k for k in range(5)]
    # each step realizes n(r) r^k = d(r) r^(k+1)
    for xk, xk1, cof in zip(got.chain, got.chain[1:], got.cofactors):
        assert xk == xk1 + cof and sf.contains(S23, cof) and cof != 0

    assert sf.accp_probe(NAT, "add", Fraction(5), 5) is None
    assert sf.accp_probe(S23, "mult", Fraction(4, 9), 3) is None
    with pytest.raises(DomainError):
        sf.accp_probe(NAT, "add", Fraction(5), 0)
